"""Return sets at base, hyperspace and fuzzy level.

Everything reduces to one question: is there a point ``x`` whose orbit meets
a list of balls at prescribed times (``f^t x`` in ball ``B_t``)?
:func:`joint_witness` answers it exactly on finite maps and on the full shift
(where balls are cylinders and the question is word consistency) and by an
explicit, re-verified construction on the circle.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from ..dynamics import (
    BasisElement,
    CircleRotation,
    FiniteMap,
    FullShift,
    ProductSystem,
    System,
    hyper_iterate,
    in_ball,
    iterate,
    zadeh_iterate,
)
from ..errors import BudgetError, UsageError
from ..families import EXACT, SOUND_POSITIVES, ReturnSet
from ..fuzzy import alpha_level, from_max_combination
from ..metrics import fuzzy_distance
from ..space import CirclePoint, CompactSet, FinitePoint, ProductPoint, ShiftPoint, hausdorff, tolerance
from .balls import BASE, FUZZY, HYPER, BallSpec, contains

Constraint = tuple[int, BasisElement]


def exactness_of(sys: System) -> str:
    if isinstance(sys, ProductSystem):
        return exactness_of(sys.base)
    return SOUND_POSITIVES if isinstance(sys, CircleRotation) else EXACT


@lru_cache(maxsize=4096)
def _power_table(sys: FiniteMap, t: int) -> tuple[int, ...]:
    if t == 0:
        return tuple(range(len(sys.table)))
    half = _power_table(sys, t // 2)
    table = tuple(half[i] for i in half)
    if t % 2:
        table = tuple(sys.table[i] for i in table)
    return table


def shift_word(B: BasisElement) -> tuple[int, ...]:
    """The word ``w`` with ``B == [w]`` (empty word: the whole shift)."""
    if B.word is not None:
        return B.word
    m = 0
    while Fraction(1, 1 << m) >= B.radius:
        m += 1
    return B.center.word(m)


def _component(B: BasisElement, i: int) -> BasisElement:
    if B.parts is not None:
        return B.parts[i]
    return BasisElement(B.name, B.center.coords[i], B.radius)


def joint_witness(sys: System, constraints: Sequence[Constraint]):
    """A point ``x`` with ``f^t(x)`` in ``B`` for every ``(t, B)``, or None.

    Exact (None means no such point) on finite maps and the full shift;
    on the circle a returned point is verified with the arithmetic margin.
    """
    if not constraints:
        raise UsageError("need at least one constraint")
    if isinstance(sys, FiniteMap):
        tables = [(_power_table(sys, t), B) for t, B in constraints]
        for i in range(len(sys.table)):
            if all(in_ball(sys, B, FinitePoint(tab[i])) for tab, B in tables):
                return FinitePoint(i)
        return None
    if isinstance(sys, FullShift):
        fixed: dict[int, int] = {}
        for t, B in constraints:
            for k, s in enumerate(shift_word(B)):
                if fixed.setdefault(t + k, s) != s:
                    return None
        length = max(fixed, default=-1) + 1
        return ShiftPoint(tuple(fixed.get(i, 0) for i in range(length)), (0,))
    if isinstance(sys, CircleRotation):
        return _circle_witness(sys, constraints)
    if isinstance(sys, ProductSystem):
        coords = []
        for i in range(sys.n):
            c = joint_witness(sys.base, [(t, _component(B, i)) for t, B in constraints])
            if c is None:
                return None
            coords.append(c)
        return ProductPoint(tuple(coords))
    raise UsageError(f"unknown system {sys!r}")


def _circle_witness(sys: CircleRotation, constraints):
    M = 1 << sys.bits
    arcs = [((B.center.value - t * sys.angle) % M, B.radius * M) for t, B in constraints]
    ref = arcs[0][0]
    lo, hi = None, None
    for a, R in arcs:
        o = (a - ref + M // 2) % M - M // 2
        lo = o - R if lo is None else max(lo, o - R)
        hi = o + R if hi is None else min(hi, o + R)
    if lo >= hi:
        return None
    x = CirclePoint(ref + (lo + hi) // 2, sys.bits)
    margin = tolerance(sys.space)
    if all(in_ball(sys, B, iterate(sys, x, t), margin) for t, B in constraints):
        return x
    return None


# ---------------------------------------------------------------------------
# Hyperspace and fuzzy witnesses
# ---------------------------------------------------------------------------


def _point_ball(p, radius) -> BasisElement:
    return BasisElement("", p, radius)


def hyper_joint_witness(sys: System, targets: Sequence[tuple[int, CompactSet, Fraction]], max_chains: int = 100_000):
    """A compact ``C`` with ``d_H(f^t C, K_t) < r_t`` for every target, or None.

    Each point of ``C`` follows one chain ``(k_t)`` with ``k_t`` in ``K_t``;
    a chain is usable iff some point realises it.  ``C`` is the set of
    realisations of all usable chains, and the targets are met iff every
    point of every ``K_t`` lies on some usable chain.  This is exact whenever
    :func:`joint_witness` is.
    """
    sizes = 1
    for _, K, _ in targets:
        sizes *= len(K)
    if sizes > max_chains:
        raise BudgetError(f"{sizes} chains exceed budget {max_chains}")
    found = []
    covered = [set() for _ in targets]
    for chain in itertools.product(*(K.points for _, K, _ in targets)):
        x = joint_witness(sys, [(t, _point_ball(k, r)) for (t, _, r), k in zip(targets, chain)])
        if x is not None:
            found.append(x)
            for idx, k in enumerate(chain):
                covered[idx].add(k)
    if not found or any(len(cov) != len(K) for cov, (_, K, _) in zip(covered, targets)):
        return None
    C = CompactSet(found)
    margin = tolerance(sys.space)
    if all(hausdorff(sys.space, hyper_iterate(sys, C, t), K) < r - margin for t, K, r in targets):
        return C
    return None


def fuzzy_joint_witness(sys: System, targets, metric: str, max_chains: int = 100_000):
    """A step fuzzy ``w`` with ``rho(f^t w, u_t) < r_t`` for every target, or None.

    Built level by level: at every breakpoint ``a`` of the centres a compact
    witness ``K_a`` for the alpha-levels is found, ``w = max a * chi_{K_a}``
    and the distances are recomputed directly.
    """
    alphas = sorted({a for _, u, _ in targets for a in u.levels})
    pairs = []
    for a in alphas:
        C = hyper_joint_witness(sys, [(t, alpha_level(u, a), r) for t, u, r in targets], max_chains)
        if C is None:
            return None
        pairs.append((a, C))
    w = from_max_combination(pairs)
    margin = tolerance(sys.space)
    for t, u, r in targets:
        if fuzzy_distance(sys.space, metric, zadeh_iterate(sys, w, t), u) >= r - margin:
            return None
    return w


def witness_for(sys: System, balls_at: Sequence[tuple[int, BallSpec]], max_chains: int = 100_000):
    level = balls_at[0][1].level
    if any(b.level != level for _, b in balls_at):
        raise UsageError("balls must be at the same level")
    if level == BASE:
        return joint_witness(sys, [(t, b.element) for t, b in balls_at])
    if level == HYPER:
        return hyper_joint_witness(sys, [(t, b.center, b.radius) for t, b in balls_at], max_chains)
    metrics = {b.metric for _, b in balls_at}
    if len(metrics) != 1:
        raise UsageError("fuzzy balls must share a metric")
    return fuzzy_joint_witness(sys, [(t, b.center, b.radius) for t, b in balls_at], metrics.pop(), max_chains)


def check_witness(sys: System, balls_at, x) -> bool:
    """Recheck a witness against its balls from scratch."""
    for t, b in balls_at:
        if b.level == BASE:
            img = iterate(sys, x, t)
        elif b.level == HYPER:
            img = hyper_iterate(sys, x, t)
        else:
            img = zadeh_iterate(sys, x, t)
        if not contains(sys, b, img):
            return False
    return True


def _level_exactness(sys: System, level: str) -> str:
    return exactness_of(sys) if level in (BASE, HYPER) else SOUND_POSITIVES


def return_set_with_witnesses(sys: System, U: BallSpec, V: BallSpec, H: int, max_chains: int = 100_000):
    if H < 1:
        raise UsageError("horizon must be >= 1")
    if U.level != V.level:
        raise UsageError("U and V must be at the same level")
    witnesses = {}
    for n in range(H + 1):
        x = witness_for(sys, [(0, U), (n, V)], max_chains)
        if x is not None:
            witnesses[n] = x
    return ReturnSet(H, tuple(witnesses), _level_exactness(sys, U.level)), witnesses


def return_set(sys: System, U: BallSpec, V: BallSpec, H: int, max_chains: int = 100_000) -> ReturnSet:
    """Times ``n <= H`` at which ``f^n(U)`` meets ``V``."""
    return return_set_with_witnesses(sys, U, V, H, max_chains)[0]


def ell_return_set_with_witnesses(sys: System, U: BallSpec, ell: int, H: int, max_chains: int = 100_000):
    if ell < 1:
        raise UsageError("ell must be >= 1")
    if H < 1:
        raise UsageError("horizon must be >= 1")
    witnesses = {}
    for n in range(H + 1):
        x = witness_for(sys, [(j * n, U) for j in range(ell + 1)], max_chains)
        if x is not None:
            witnesses[n] = x
    return ReturnSet(H, tuple(witnesses), _level_exactness(sys, U.level)), witnesses


def ell_return_set(sys: System, U: BallSpec, ell: int, H: int, max_chains: int = 100_000) -> ReturnSet:
    """Times ``n`` with a single point of ``U`` whose ``n, 2n, ..., ell*n`` iterates stay in ``U``."""
    return ell_return_set_with_witnesses(sys, U, ell, H, max_chains)[0]


def point_return_set(sys: System, x, U: BallSpec, H: int) -> ReturnSet:
    """``{n <= H : f^n(x) in U}`` for a base-level ball."""
    if U.level != BASE:
        raise UsageError("point return sets need a base-level ball")
    if H < 1:
        raise UsageError("horizon must be >= 1")
    hits = []
    p = x
    for n in range(H + 1):
        if contains(sys, U, p):
            hits.append(n)
        p = iterate(sys, p, 1)
    return ReturnSet(H, tuple(hits), exactness_of(sys))
