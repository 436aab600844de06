"""Deterministic random instances for property sweeps.

"Twin" spaces place points in pairs at distance 1/64, with pair sites at
least about 1 apart; maps that send twins to twins (or merge them) move every
point by the same small amount as its twin, which makes it easy to build
witnesses that are close but not equal to their targets.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Sequence

from .analysis.specification import SpecInstance, fuzzy_spec_instance
from .analysis.transfers import joint_quantization
from .dynamics import FiniteMap, FullShift, System, hyper_iterate, zadeh_iterate
from .fuzzy import StepFuzzySet, alpha_level, from_max_combination, gen_random
from .space import CompactSet, FiniteMetric, FinitePoint, ShiftPoint, random_point

TWIN_GAP = Fraction(1, 64)


def rng_for(seed, *salt) -> random.Random:
    return random.Random(repr((seed,) + salt))


def random_finite_space(rng: random.Random, n: int = 12, grid: int = 9) -> FiniteMetric:
    """``n`` distinct points of a ``grid x grid`` lattice, Chebyshev metric scaled to ``[0, 1]``."""
    coords: set = set()
    while len(coords) < n:
        coords.add((rng.randrange(grid), rng.randrange(grid)))
    return FiniteMetric.from_coordinates(sorted(coords), scale=grid - 1)


def random_finite_map(rng: random.Random, space: FiniteMetric) -> FiniteMap:
    n = len(space.labels)
    return FiniteMap(space, tuple(rng.randrange(n) for _ in range(n)))


def twin_space(sites: int) -> FiniteMetric:
    """Points ``s.0`` and ``s.1`` for each site ``s``; twins at distance 1/64."""
    coords, labels = [], []
    for s in range(sites):
        for t in range(2):
            coords.append((64 * s, t))
            labels.append(f"{s}.{t}")
    return FiniteMetric.from_coordinates(coords, labels, scale=64)


def twin(p: FinitePoint) -> FinitePoint:
    return FinitePoint(p.index ^ 1)


def twin_map(rng: random.Random, sites: int, permutation: bool = False) -> FiniteMap:
    """A map of the twin space sending every twin pair into a twin pair.

    With ``permutation`` the result is a bijection.
    """
    space = twin_space(sites)
    if permutation:
        order = list(range(sites))
        rng.shuffle(order)
        site_map = order
    else:
        site_map = [rng.randrange(sites) for _ in range(sites)]
    table = []
    for s in range(sites):
        mode = rng.choice(("keep", "swap") if permutation else ("keep", "swap", "merge"))
        for t in range(2):
            u = {"keep": t, "swap": 1 - t, "merge": 0}[mode]
            table.append(2 * site_map[s] + u)
    return FiniteMap(space, tuple(table))


def map_order(sys: FiniteMap) -> int:
    """Order of a permutation map."""
    seen, order = set(), 1
    for i in range(len(sys.table)):
        if i in seen:
            continue
        length, j = 0, i
        while True:
            seen.add(j)
            j = sys.table[j]
            length += 1
            if j == i:
                break
        order = math.lcm(order, length)
    return order


def nudge(sys: System, p, rng: random.Random, depth: int = 6):
    """A point within a small distance of ``p``: its twin, or a deep symbol change."""
    if isinstance(sys, FiniteMap):
        return twin(p) if rng.random() < 0.5 else p
    if isinstance(sys, FullShift):
        if rng.random() < 0.3:
            return p
        word = list(p.word(depth + 1))
        word[depth] = (word[depth] + 1 + rng.randrange(sys.k - 1)) % sys.k
        tail = p.shifted(depth + 1)
        return ShiftPoint(tuple(word) + tail.prefix, tail.cycle)
    raise ValueError(f"no nudge for {sys!r}")


def nudge_set(sys: System, K: CompactSet, rng: random.Random, depth: int = 6) -> CompactSet:
    return CompactSet(nudge(sys, p, rng, depth) for p in K)


def random_compact(sys: System, rng: random.Random, max_size: int = 3) -> CompactSet:
    size = rng.randint(1, max_size)
    return CompactSet(random_point(sys.space, rng) for _ in range(size))


def random_system(rng: random.Random, kind: str | None = None) -> System:
    kind = kind or rng.choice(("finite", "shift"))
    if kind == "finite":
        return twin_map(rng, rng.randint(3, 6), permutation=rng.random() < 0.3)
    return FullShift(rng.choice((2, 2, 3)))


def small_levels(rng: random.Random, below: Fraction, grid: int = 64, count: int = 1) -> list[Fraction]:
    """Distinct grid levels strictly below ``below``."""
    top = math.ceil(below * grid) - 1
    choices = list(range(1, max(top, 1) + 1))
    picks = rng.sample(choices, min(count, len(choices)))
    return sorted(Fraction(k, grid) for k in picks)


def fuzzy_near(sys: System, C: CompactSet, eps: Fraction, rng: random.Random, depth: int = 6) -> StepFuzzySet:
    """A step fuzzy set whose top level is ``C``.

    Extra levels hold small perturbations of ``C`` (any membership) and
    arbitrary junk points with membership below ``eps``.
    """
    pairs = [(Fraction(1), C)]
    for a in sorted({Fraction(rng.randint(1, 15), 16) for _ in range(rng.randint(0, 2))}):
        pairs.append((a, nudge_set(sys, C, rng, depth)))
    if rng.random() < 0.8:
        for a in small_levels(rng, eps, count=rng.randint(1, 2)):
            pairs.append((a, random_compact(sys, rng)))
    return from_max_combination(pairs)


def random_fuzzy(sys: System, rng: random.Random, max_levels: int = 4, max_support: int = 6) -> StepFuzzySet:
    pool = sys.space.points() if isinstance(sys, FiniteMap) else None
    return gen_random(sys.space, max_levels, max_support, rng, pool=pool)


def transitivity_instance(rng: random.Random, sys: System | None = None):
    """``(sys, K, L, eps, n, u)`` with ``u`` near ``chi_K`` and ``f^n(u)`` near ``chi_L``."""
    sys = sys or random_system(rng)
    eps = rng.choice((Fraction(1, 4), Fraction(3, 8), Fraction(1, 2)))
    n = rng.randint(0, 5)
    depth = n + 6
    C = random_compact(sys, rng)
    u = fuzzy_near(sys, C, eps, rng, depth)
    K = nudge_set(sys, C, rng, depth)
    L = nudge_set(sys, hyper_iterate(sys, C, n), rng, 6)
    return sys, K, L, eps, n, u


def recurrence_instance(rng: random.Random):
    """``(sys, K, eps, n, ell, u)`` with ``f^{jn}(u)`` near ``chi_K`` for ``j <= ell``."""
    ell = rng.randint(1, 3)
    eps = rng.choice((Fraction(1, 4), Fraction(1, 2)))
    if rng.random() < 0.5:
        sys = twin_map(rng, rng.randint(3, 6), permutation=True)
        n = map_order(sys) * rng.randint(1, 2)
        C = random_compact(sys, rng)
        depth = 6
    else:
        sys = FullShift(2)
        period = rng.randint(1, 3)
        C = CompactSet(ShiftPoint.periodic([rng.randrange(2) for _ in range(period)]) for _ in range(rng.randint(1, 3)))
        n = math.lcm(*(len(p.cycle) for p in C)) * rng.randint(1, 2)
        depth = ell * n + 6
    u = fuzzy_near(sys, C, eps, rng, depth)
    K = nudge_set(sys, C, rng, depth)
    return sys, K, eps, n, ell, u


def periodic_instance(rng: random.Random):
    """``(sys, K, eps, u, p)`` with ``f^p(u) = u`` and ``u`` near ``chi_K``."""
    eps = rng.choice((Fraction(1, 4), Fraction(1, 2)))
    if rng.random() < 0.7:
        sys = twin_map(rng, rng.randint(3, 6), permutation=True)
        p = map_order(sys)
        C = random_compact(sys, rng)
        pairs = [(Fraction(1), C)]
        for a in small_levels(rng, eps, count=rng.randint(0, 2)):
            pairs.append((a, random_compact(sys, rng)))
        u = from_max_combination(pairs)
        K = nudge_set(sys, C, rng)
    else:
        sys = FullShift(2)
        cycles = [[rng.randrange(2) for _ in range(rng.randint(1, 3))] for _ in range(rng.randint(1, 3))]
        C = CompactSet(ShiftPoint.periodic(c) for c in cycles)
        junk = CompactSet([ShiftPoint.periodic((rng.randrange(2),))])
        u = from_max_combination([(1, C), (small_levels(rng, eps)[0], junk)])
        p = math.lcm(*(len(q.cycle) for q in u.support))
        K = nudge_set(sys, C, rng, 6)
    return sys, K, eps, u, p


def lift_instance(rng: random.Random):
    """``(sys, u, v, eps, n, level_witnesses)`` satisfying the lifting precondition."""
    eps = rng.choice((Fraction(1, 4), Fraction(1, 8)))
    n = rng.randint(0, 4)
    if rng.random() < 0.7:
        sys = twin_map(rng, rng.randint(3, 6))
        space = sys.space
        u = random_fuzzy(sys, rng)
        swap = {p: nudge(sys, p, rng) for p in space.points()}
        swap2 = {p: nudge(sys, p, rng) for p in space.points()}
        depth = 6
    else:
        sys = FullShift(2)
        space = sys.space
        u = random_fuzzy(sys, rng, max_support=4)
        depth = n + 6
        swap = {p: nudge(sys, p, rng, depth) for p in u.support}
        swap2 = {p: nudge(sys, p, rng, depth) for p in u.support}
    moved = StepFuzzySet(u.levels, tuple(CompactSet(swap[p] for p in L) for L in u.sets))
    v = zadeh_iterate(sys, moved, n)
    alphas = joint_quantization(space, u, v, eps / 2)
    witnesses = [(a, CompactSet(swap2[p] for p in alpha_level(u, a))) for a in alphas]
    return sys, u, v, eps, n, witnesses


def spec_instance(rng: random.Random, eps: Fraction | None = None, s: int | None = None, k: int = 2, targets: Sequence | None = None):
    """A random specification instance on the full shift with point targets."""
    eps = eps or rng.choice((Fraction(1, 4), Fraction(1, 16)))
    s = s or rng.choice((2, 3, 4))
    m = eps.denominator.bit_length() - 1
    N = m + 1 + rng.randint(0, 3)
    intervals = []
    i = 0
    for _ in range(s):
        j = i + rng.randint(0, 4)
        intervals.append((i, j))
        i = j + N + rng.randint(0, 3)
    if targets is None:
        space = FullShift(k).space
        targets = [random_point(space, rng) for _ in range(s)]
    return SpecInstance(tuple(targets), tuple(intervals), eps, N)


def fuzzy_spec_case(rng: random.Random):
    """``(sys, v, inst)`` for projecting a fuzzy specification witness."""
    sys = FullShift(2)
    base = spec_instance(rng)
    targets = tuple(
        CompactSet(random_point(sys.space, rng) for _ in range(rng.randint(1, 2))) for _ in base.targets
    )
    inst = SpecInstance(targets, base.intervals, base.eps, base.N)
    junk = []
    if rng.random() < 0.7:
        T = inst.period
        junk = [ShiftPoint.periodic((rng.randrange(2),))]
        if T % 2 == 0:
            junk.append(ShiftPoint.periodic((0, 1)))
    level = small_levels(rng, inst.eps)[0] if junk else None
    return sys, fuzzy_spec_instance(sys, inst, junk, level), inst


def level_proximity_case(rng: random.Random):
    """``(space, K, u)``; about half are built near ``chi_K``, the rest arbitrary."""
    if rng.random() < 0.5:
        sys, K, _, eps, _, u = transitivity_instance(rng)
        return sys.space, K, u
    space = random_finite_space(rng)
    u = gen_random(space, 4, 6, rng)
    K = gen_random(space, 1, 4, rng).support
    return space, K, u
