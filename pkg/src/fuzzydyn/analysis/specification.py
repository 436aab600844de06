"""Periodic approximation and specification witnesses on the full shift."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..dynamics import FullShift, System, hyper_iterate, iterate, zadeh_iterate
from ..errors import ContractError, UnsupportedError, UsageError
from ..fuzzy import StepFuzzySet, alpha_level, from_characteristic, from_max_combination
from ..metrics import d_endo
from ..space import CompactSet, ShiftPoint, distance, hausdorff, to_fraction
from .transfers import TransferWitness, choose_alpha


def _log2_exact(eps: Fraction) -> int:
    """``m`` with ``eps == 2**-m``."""
    eps = to_fraction(eps)
    if eps <= 0 or eps.numerator != 1 or eps.denominator & (eps.denominator - 1):
        raise UsageError(f"eps={eps} is not a power 2**-m")
    return eps.denominator.bit_length() - 1


def periodic_near(sys: System, K: CompactSet, eps) -> CompactSet:
    """Periodic points close to ``K`` on the full shift.

    Purely periodic points are kept; any other point is replaced by the
    periodic point repeating its first ``L + 1`` symbols (``eps = 2**-L``),
    which agrees with it on those symbols.
    """
    if not isinstance(sys, FullShift):
        raise UnsupportedError("periodic_near is defined for the full shift only")
    L = _log2_exact(eps)
    return CompactSet(p if p.is_periodic else ShiftPoint.periodic(p.word(L + 1)) for p in K)


def shift_period(K: CompactSet) -> int:
    """Least common period of a set of purely periodic shift points."""
    if any(not p.is_periodic for p in K):
        raise UsageError("set contains a point that is not purely periodic")
    return math.lcm(*(len(p.cycle) for p in K))


@dataclass(frozen=True)
class SpecInstance:
    """Orbit segments ``[i_r, j_r]`` of targets ``y_r`` separated by gaps ``>= N``."""

    targets: tuple
    intervals: tuple[tuple[int, int], ...]
    eps: Fraction
    N: int

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(self.targets))
        object.__setattr__(self, "intervals", tuple((int(i), int(j)) for i, j in self.intervals))
        object.__setattr__(self, "eps", to_fraction(self.eps))
        s = len(self.targets)
        if s < 2:
            raise UsageError("a specification instance needs s >= 2 targets")
        if len(self.intervals) != s:
            raise UsageError("need one interval per target")
        if self.intervals[0][0] != 0:
            raise UsageError("first interval must start at 0")
        if self.eps <= 0:
            raise UsageError("eps must be > 0")
        if self.N < 1:
            raise UsageError("gap N must be >= 1")
        for i, j in self.intervals:
            if i > j:
                raise UsageError(f"interval [{i}, {j}] is empty")
        for (_, j), (i2, _) in zip(self.intervals, self.intervals[1:]):
            if i2 - j < self.N:
                raise UsageError(f"gap {i2 - j} between segments is below N={self.N}")

    @property
    def period(self) -> int:
        return self.N + self.intervals[-1][1]


def build_spec_witness(sys: System, inst: SpecInstance) -> ShiftPoint:
    """Periodic point of period ``N + j_s`` shadowing every segment within ``eps``.

    With ``eps = 2**-m`` the block copies ``y_r`` on positions
    ``[i_r, j_r + m]``; the gap condition ``N >= m + 1`` keeps these ranges
    disjoint and inside the block.  Positions in between continue the symbols
    of the preceding target.
    """
    if not isinstance(sys, FullShift):
        raise UnsupportedError("build_spec_witness is defined for the full shift only")
    m = _log2_exact(inst.eps)
    if inst.N <= m:
        raise ContractError(f"gap N={inst.N} must exceed m={m}", {"N": inst.N, "m": m})
    T = inst.period
    block = []
    r = 0
    for pos in range(T):
        while r + 1 < len(inst.targets) and inst.intervals[r + 1][0] <= pos:
            r += 1
        block.append(inst.targets[r].symbol(pos))
    return ShiftPoint.periodic(block)


def verify_specification(sys: System, x, inst: SpecInstance) -> bool:
    space = sys.space
    for y, (i, j) in zip(inst.targets, inst.intervals):
        xi, yi = iterate(sys, x, i), iterate(sys, y, i)
        for _ in range(i, j + 1):
            if distance(space, xi, yi) >= inst.eps:
                return False
            xi, yi = iterate(sys, xi, 1), iterate(sys, yi, 1)
    return iterate(sys, x, inst.period) == x


def project_spec_witness(space, sys: System, v: StepFuzzySet, inst: SpecInstance) -> TransferWitness:
    """An alpha-level of a periodic fuzzy shadow is a periodic compact shadow.

    ``inst.targets`` are compact sets ``K_r``.
    """
    eps = inst.eps
    if eps > Fraction(1, 2):
        raise UsageError("eps must be <= 1/2")
    T = inst.period
    measured = {}
    if zadeh_iterate(sys, v, T) != v:
        raise ContractError(f"fuzzy set is not fixed by {T} steps", {"period": T})
    for r, (K, (i, j)) in enumerate(zip(inst.targets, inst.intervals)):
        for t in range(i, j + 1):
            measured[f"r{r}_j{t}"] = d_endo(
                space, zadeh_iterate(sys, v, t), from_characteristic(hyper_iterate(sys, K, t))
            )
    delta = max(measured.values())
    if delta >= eps:
        raise ContractError(f"endograph distance {delta} not below eps={eps}", measured)
    alpha = choose_alpha(v, delta)
    C = alpha_level(v, alpha)
    validation = {}
    for r, (K, (i, j)) in enumerate(zip(inst.targets, inst.intervals)):
        for t in range(i, j + 1):
            validation[f"r{r}_j{t}"] = hausdorff(space, hyper_iterate(sys, C, t), hyper_iterate(sys, K, t))
    periodic = hyper_iterate(sys, C, T) == C
    if max(validation.values()) >= eps or not periodic:
        raise ContractError("projected level failed validation", validation)
    validation["periodic"] = periodic
    return TransferWitness(T, C, alpha, delta, validation)


def fuzzy_spec_instance(sys: FullShift, inst: SpecInstance, junk: Sequence = (), junk_level=None):
    """A periodic fuzzy shadow for compact targets, built from point witnesses.

    Its top level holds one shadow per choice of a point from every target;
    ``junk`` points (periodic with period dividing the block) get membership
    ``junk_level``.
    """
    points = []
    for choice in itertools.product(*(K.points for K in inst.targets)):
        pinst = SpecInstance(choice, inst.intervals, inst.eps, inst.N)
        points.append(build_spec_witness(sys, pinst))
    top = CompactSet(points)
    if not junk:
        return from_characteristic(top)
    return from_max_combination([(1, top), (junk_level, CompactSet(junk))])
