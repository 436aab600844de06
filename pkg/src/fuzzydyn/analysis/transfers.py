"""Moving witnesses between base, hyperspace and fuzzy levels.

Projection: a fuzzy witness close in the endograph metric to characteristic
functions yields a compact witness by taking one alpha-level with
``alpha`` in ``(delta, 1 - delta]``, where that level is within ``delta`` of
the target compact set in Hausdorff distance.

Lifting: compact witnesses for finitely many alpha-levels assemble into a
step fuzzy witness ``w = max alpha_j * chi_{K_j}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..dynamics import System, hyper_iterate, zadeh_iterate
from ..errors import ContractError, UsageError
from ..fuzzy import StepFuzzySet, alpha_level, from_characteristic, from_max_combination
from ..metrics import d_endo, d_inf
from ..space import CompactSet, hausdorff, to_fraction

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class TransferWitness:
    """A constructed witness with the distances that prove it valid."""

    n: int
    object: object
    alpha_used: Fraction | None
    delta: Fraction | None
    validation: dict = field(default_factory=dict)


def choose_alpha(u: StepFuzzySet, delta) -> Fraction:
    """The level used for projection: 1/2, snapped up to the breakpoint of its piece.

    Any ``alpha`` in ``(delta, 1 - delta]`` works; the level function is
    constant on ``(a_{j-1}, a_j]``, so moving 1/2 up to ``a_j`` keeps the same
    level set whenever ``a_j`` is still inside the interval.
    """
    delta = to_fraction(delta)
    if not 0 <= delta < HALF:
        raise UsageError(f"delta={delta} must lie in [0, 1/2)")
    snapped = next(a for a in u.levels if a >= HALF)
    return snapped if snapped <= 1 - delta else HALF


def _check_eps(eps) -> Fraction:
    eps = to_fraction(eps)
    if not 0 < eps <= HALF:
        raise UsageError("eps must lie in (0, 1/2]")
    return eps


def project_transitivity_witness(space, sys: System, K: CompactSet, L: CompactSet, eps, n: int, u: StepFuzzySet) -> TransferWitness:
    """From ``u`` near ``chi_K`` with ``f^n(u)`` near ``chi_L`` to a compact witness."""
    eps = _check_eps(eps)
    image = zadeh_iterate(sys, u, n)
    measured = {
        "endo(K,u)": d_endo(space, from_characteristic(K), u),
        "endo(L,f^n u)": d_endo(space, from_characteristic(L), image),
    }
    delta = max(measured.values())
    if delta >= eps:
        raise ContractError(f"endograph distance {delta} not below eps={eps}", measured)
    alpha = choose_alpha(u, delta)
    C = alpha_level(u, alpha)
    validation = {
        "hausdorff(K,C)": hausdorff(space, K, C),
        "hausdorff(L,f^n C)": hausdorff(space, L, hyper_iterate(sys, C, n)),
    }
    if max(validation.values()) >= eps:
        raise ContractError("projected level failed validation", validation)
    return TransferWitness(n, C, alpha, delta, validation)


def project_recurrence_witness(space, sys: System, K: CompactSet, eps, n: int, ell: int, u: StepFuzzySet) -> TransferWitness:
    """From ``f^{jn}(u)`` near ``chi_K`` for ``j <= ell`` to a compact witness."""
    eps = _check_eps(eps)
    if ell < 1:
        raise UsageError("ell must be >= 1")
    chi = from_characteristic(K)
    measured = {f"endo(K,f^{j * n} u)": d_endo(space, chi, zadeh_iterate(sys, u, j * n)) for j in range(ell + 1)}
    delta = max(measured.values())
    if delta >= eps:
        raise ContractError(f"endograph distance {delta} not below eps={eps}", measured)
    alpha = choose_alpha(u, delta)
    C = alpha_level(u, alpha)
    validation = {
        f"hausdorff(K,f^{j * n} C)": hausdorff(space, K, hyper_iterate(sys, C, j * n)) for j in range(ell + 1)
    }
    if max(validation.values()) >= eps:
        raise ContractError("projected level failed validation", validation)
    return TransferWitness(n, C, alpha, delta, validation)


def project_periodic(space, sys: System, K: CompactSet, eps, u: StepFuzzySet, p: int) -> TransferWitness:
    """From a ``p``-periodic ``u`` near ``chi_K`` to a ``p``-periodic compact set near ``K``."""
    eps = _check_eps(eps)
    if p < 1:
        raise UsageError("period must be >= 1")
    if zadeh_iterate(sys, u, p) != u:
        raise ContractError(f"fuzzy set is not fixed by {p} steps", {"period": p})
    delta = d_endo(space, from_characteristic(K), u)
    if delta >= eps:
        raise ContractError(f"endograph distance {delta} not below eps={eps}", {"endo(K,u)": delta})
    alpha = choose_alpha(u, delta)
    C = alpha_level(u, alpha)
    periodic = hyper_iterate(sys, C, p) == C
    validation = {"hausdorff(K,C)": hausdorff(space, K, C), "periodic": periodic}
    if validation["hausdorff(K,C)"] >= eps or not periodic:
        raise ContractError("projected level failed validation", validation)
    return TransferWitness(p, C, alpha, delta, validation)


def joint_quantization(space, u: StepFuzzySet, v: StepFuzzySet, eps) -> tuple[Fraction, ...]:
    """Breakpoints ``a_j`` (top one 1) with both ``u`` and ``v`` moving by at most
    ``eps`` inside each piece ``(a_{j-1}, a_j]`` and at 0.

    Greedy from the top over the merged breakpoints of ``u`` and ``v``.
    """
    eps = to_fraction(eps)
    merged = sorted(set(u.levels) | set(v.levels))
    keep = [merged[-1]]
    for a in reversed(merged[:-1]):
        top = keep[-1]
        if max(
            hausdorff(space, alpha_level(u, a), alpha_level(u, top)),
            hausdorff(space, alpha_level(v, a), alpha_level(v, top)),
        ) > eps:
            keep.append(a)
    return tuple(reversed(keep))


def _piece_ok(space, u: StepFuzzySet, alphas: Sequence[Fraction], eps: Fraction) -> dict:
    """Worst Hausdorff move of ``u`` inside each piece, keyed by breakpoint."""
    out = {}
    probes = sorted({Fraction(0), *u.levels})
    for a in alphas:
        out[a] = Fraction(0)
    for b in probes:
        a = next(x for x in alphas if x >= b)
        out[a] = max(out[a], hausdorff(space, alpha_level(u, b), alpha_level(u, a)))
    return out


def lift_transitivity_witness(
    space, sys: System, u: StepFuzzySet, v: StepFuzzySet, eps, n: int,
    level_witnesses: Sequence[tuple[Fraction, CompactSet]],
) -> TransferWitness:
    """Assemble level witnesses into ``w`` with ``w`` near ``u`` and ``f^n(w)`` near ``v`` in d_inf.

    Preconditions: the breakpoints ``alpha_j`` end at 1 and neither ``u`` nor
    ``v`` moves by more than ``eps/2`` inside a piece; each ``K_j`` is within
    ``eps/2`` of ``u_{alpha_j}`` and ``f^n(K_j)`` within ``eps/2`` of
    ``v_{alpha_j}``.
    """
    eps = to_fraction(eps)
    if eps <= 0:
        raise UsageError("eps must be > 0")
    half = eps / 2
    pairs = sorted(((to_fraction(a), K) for a, K in level_witnesses), key=lambda p: p[0])
    alphas = [a for a, _ in pairs]
    if not alphas or alphas[-1] != 1 or len(set(alphas)) != len(alphas):
        raise ContractError("level breakpoints must be distinct and end at 1", {"alphas": alphas})
    measured = {}
    for name, f in (("u", u), ("v", v)):
        for a, d in _piece_ok(space, f, alphas, half).items():
            measured[f"{name} moves in piece {a}"] = d
    for a, K in pairs:
        measured[f"hausdorff(u_{a},K)"] = hausdorff(space, alpha_level(u, a), K)
        measured[f"hausdorff(v_{a},f^n K)"] = hausdorff(space, alpha_level(v, a), hyper_iterate(sys, K, n))
    piece_bad = any(d > half for k, d in measured.items() if "moves" in k)
    level_bad = any(d >= half for k, d in measured.items() if "moves" not in k)
    if piece_bad or level_bad:
        raise ContractError("level witnesses do not meet the lifting precondition", measured)
    w = from_max_combination(pairs)
    validation = {"d_inf(u,w)": d_inf(space, u, w), "d_inf(v,f^n w)": d_inf(space, v, zadeh_iterate(sys, w, n))}
    if max(validation.values()) >= eps:
        raise ContractError("lifted fuzzy set failed validation", validation)
    return TransferWitness(n, w, None, None, validation)
