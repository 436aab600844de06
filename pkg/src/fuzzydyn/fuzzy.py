"""Step normal fuzzy sets ``u = max_j alpha_j * chi_{L_j}``.

A :class:`StepFuzzySet` stores its breakpoints ``0 < a_1 < ... < a_N = 1`` as
exact rationals together with strictly nested level sets
``L_1 > L_2 > ... > L_N``.  The alpha-level is ``L_j`` for ``alpha`` in the
half-open interval ``(a_{j-1}, a_j]`` and the support ``L_1`` at ``alpha = 0``.
"""

from __future__ import annotations

import bisect
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NormalityError, UsageError
from .space import CompactSet, Number, Point, Space, hausdorff, random_point, to_fraction

ONE = Fraction(1)


@dataclass(frozen=True)
class StepFuzzySet:
    levels: tuple[Fraction, ...]
    sets: tuple[CompactSet, ...]

    def __post_init__(self):
        levels = tuple(to_fraction(a) for a in self.levels)
        sets = tuple(self.sets)
        if not levels or len(levels) != len(sets):
            raise UsageError("need one level set per level")
        if levels[-1] != 1:
            raise NormalityError("top level must be exactly 1")
        if levels[0] <= 0:
            raise UsageError("levels must lie in (0, 1]")
        if any(a >= b for a, b in zip(levels, levels[1:])):
            raise UsageError("levels must be strictly ascending")
        if any(not (hi <= lo) for lo, hi in zip(sets, sets[1:])):
            raise UsageError("level sets must be nested (higher level inside lower)")
        # Drop a level whose set equals the next one up: it adds no breakpoint.
        keep = [j for j in range(len(levels) - 1) if sets[j] != sets[j + 1]]
        keep.append(len(levels) - 1)
        object.__setattr__(self, "levels", tuple(levels[j] for j in keep))
        object.__setattr__(self, "sets", tuple(sets[j] for j in keep))

    @property
    def support(self) -> CompactSet:
        return self.sets[0]

    @property
    def top(self) -> CompactSet:
        return self.sets[-1]

    def pairs(self) -> list[tuple[Fraction, CompactSet]]:
        return list(zip(self.levels, self.sets))

    def __repr__(self) -> str:
        body = ", ".join(f"{a}: {s!r}" for a, s in self.pairs())
        return f"StepFuzzySet({body})"


@dataclass(frozen=True)
class QuantizationResult:
    quantized: StepFuzzySet
    breakpoints: tuple[Fraction, ...]
    achieved_bound: Fraction


def from_characteristic(K: CompactSet) -> StepFuzzySet:
    return StepFuzzySet((ONE,), (K,))


def from_max_combination(pairs: Iterable[tuple[Number, CompactSet]]) -> StepFuzzySet:
    """The fuzzy set ``max_j alpha_j * chi_{K_j}``.

    Its level at ``alpha`` is the union of the ``K_j`` with ``alpha_j >= alpha``;
    the ``K_j`` need not be nested.
    """
    pairs = [(to_fraction(a), K) for a, K in pairs]
    if not pairs:
        raise NormalityError("empty combination")
    for a, _ in pairs:
        if not 0 < a <= 1:
            raise UsageError(f"level {a} outside (0, 1]")
    if not any(a == 1 for a, _ in pairs):
        raise NormalityError("no set carries membership 1")
    levels = sorted({a for a, _ in pairs})
    sets = []
    for a in levels:
        members = [p for b, K in pairs if b >= a for p in K]
        sets.append(CompactSet(members))
    return StepFuzzySet(tuple(levels), tuple(sets))


def alpha_level(u: StepFuzzySet, alpha: Number) -> CompactSet:
    alpha = to_fraction(alpha)
    if not 0 <= alpha <= 1:
        raise UsageError(f"alpha={alpha} outside [0, 1]")
    if alpha == 0:
        return u.support
    return u.sets[bisect.bisect_left(u.levels, alpha)]


def membership(u: StepFuzzySet, x: Point) -> Fraction:
    for a, L in zip(reversed(u.levels), reversed(u.sets)):
        if x in L:
            return a
    return Fraction(0)


def level_pieces(u: StepFuzzySet, lo: Number, hi: Number) -> list[tuple[Fraction, CompactSet]]:
    """Distinct alpha-levels of ``u`` for ``alpha`` in ``(lo, hi]``.

    Each entry is ``(alpha, u_alpha)`` where ``alpha`` is the largest
    representative of its piece inside the interval.
    """
    lo, hi = to_fraction(lo), to_fraction(hi)
    out = []
    prev = Fraction(0)
    for a, L in u.pairs():
        start, end = max(prev, lo), min(a, hi)
        if start < end:
            out.append((end, L))
        prev = a
    return out


def quantize(space: Space, u: StepFuzzySet, eps: Number) -> QuantizationResult:
    """Coarsen ``u`` to a subset of its own breakpoints within ``eps`` in d_inf.

    Scans from the top level down and keeps a breakpoint only when merging it
    into the group above would move some alpha-level by more than ``eps``.
    """
    eps = to_fraction(eps)
    if eps <= 0:
        raise UsageError("eps must be > 0")
    n = len(u.levels)
    keep = [n - 1]
    bound = Fraction(0)
    current = n - 1
    for j in range(n - 2, -1, -1):
        d = hausdorff(space, u.sets[j], u.sets[current])
        if d <= eps:
            bound = max(bound, d)
        else:
            keep.append(j)
            current = j
    keep.reverse()
    q = StepFuzzySet(tuple(u.levels[j] for j in keep), tuple(u.sets[j] for j in keep))
    return QuantizationResult(q, q.levels, bound)


def validate(u: StepFuzzySet) -> list[str]:
    """List every violated invariant (empty when ``u`` is well formed)."""
    problems = []
    if not u.levels or u.levels[-1] != 1:
        problems.append("top level is not 1")
    if any(not 0 < a <= 1 for a in u.levels):
        problems.append("level outside (0, 1]")
    if any(a >= b for a, b in zip(u.levels, u.levels[1:])):
        problems.append("levels not strictly ascending")
    for j, (lo, hi) in enumerate(zip(u.sets, u.sets[1:])):
        if not hi <= lo:
            problems.append(f"level set {j + 1} not inside level set {j}")
        if hi == lo:
            problems.append(f"level sets {j} and {j + 1} equal (not canonical)")
    if any(len(L) == 0 for L in u.sets):
        problems.append("empty level set")
    return problems


def gen_random(
    space: Space,
    max_levels: int,
    max_support: int,
    seed,
    level_grid: int = 16,
    pool: Sequence[Point] | None = None,
) -> StepFuzzySet:
    """Deterministic random step fuzzy set.

    Levels are drawn from ``{1/level_grid, ..., 1}``; support points come from
    ``pool`` when given, otherwise from :func:`fuzzydyn.space.random_point`.
    """
    if max_levels < 1 or max_support < 1:
        raise UsageError("max_levels and max_support must be >= 1")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    size = rng.randint(1, max_support)
    if pool is not None:
        pool = list(pool)
        points = rng.sample(pool, min(size, len(pool)))
    else:
        seen: set = set()
        for _ in range(20 * size):
            seen.add(random_point(space, rng))
            if len(seen) >= size:
                break
        points = sorted(seen, key=lambda p: p.key())
    n = rng.randint(1, min(max_levels, level_grid))
    lower = sorted(rng.sample(range(1, level_grid), n - 1))
    levels = [Fraction(k, level_grid) for k in lower] + [ONE]
    ranks = [rng.randrange(n) for _ in points]
    ranks[rng.randrange(len(points))] = n - 1
    sets = [CompactSet(p for p, r in zip(points, ranks) if r >= j) for j in range(n)]
    return StepFuzzySet(tuple(levels), tuple(sets))
