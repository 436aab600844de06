import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fuzzydyn import generators as gen
from fuzzydyn.errors import NormalityError, UsageError
from fuzzydyn.fuzzy import (
    StepFuzzySet,
    alpha_level,
    from_characteristic,
    from_max_combination,
    gen_random,
    level_pieces,
    membership,
    quantize,
    validate,
)
from fuzzydyn.metrics import d_inf
from fuzzydyn.space import CompactSet, FiniteMetric, ShiftSpace

SPACE = gen.random_finite_space(random.Random(11))
F = Fraction


def test_characteristic(ab):
    K = CompactSet([ab.point("a")])
    u = from_characteristic(K)
    assert u.levels == (1,) and u.sets == (K,)
    assert alpha_level(u, F(3, 10)) == K
    assert u.support == K


def test_max_combination_union_rule(ab):
    a, b = ab.point("a"), ab.point("b")
    u = from_max_combination([(F(1, 2), CompactSet([b])), (1, CompactSet([a]))])
    assert u.levels == (F(1, 2), 1)
    assert u.sets == (CompactSet([a, b]), CompactSet([a]))
    assert from_max_combination([(1, CompactSet([a]))]) == from_characteristic(CompactSet([a]))


def test_max_combination_merges_equal_levels(ab):
    a = ab.point("a")
    u = from_max_combination([(F(1, 2), CompactSet([a])), (1, CompactSet([a]))])
    assert u.levels == (1,) and u.sets == (CompactSet([a]),)


def test_normality_required(ab):
    with pytest.raises(NormalityError):
        from_max_combination([(F(1, 2), CompactSet([ab.point("a")]))])
    with pytest.raises(NormalityError):
        StepFuzzySet((F(1, 2),), (CompactSet([ab.point("a")]),))


def test_nesting_required(ab):
    a, b = ab.point("a"), ab.point("b")
    with pytest.raises(UsageError):
        StepFuzzySet((F(1, 2), 1), (CompactSet([a]), CompactSet([b])))


def test_alpha_level_half_open(step_ab, ab):
    a, b = ab.point("a"), ab.point("b")
    assert alpha_level(step_ab, 1) == CompactSet([a])
    assert alpha_level(step_ab, F(1, 2)) == CompactSet([a, b])
    assert alpha_level(step_ab, "0.500001") == CompactSet([a])
    assert alpha_level(step_ab, 0) == CompactSet([a, b])
    with pytest.raises(UsageError):
        alpha_level(step_ab, F(3, 2))


def test_membership_lookup(step_ab, ab):
    assert membership(step_ab, ab.point("a")) == 1
    assert membership(step_ab, ab.point("b")) == F(1, 2)
    u = from_characteristic(CompactSet([ab.point("a")]))
    assert membership(u, ab.point("b")) == 0


def test_quantize_examples():
    # three sites on a line: L1 = {0, 0.1, 1}, L2 = {0.1, 1}... built so that
    # d_H(L1, L2) = 1/10 and d_H(L2, L3) = 9/10
    S = FiniteMetric.from_coordinates([(0,), (1,), (10,)], ["p", "q", "r"], scale=10)
    p, q, r = S.point("p"), S.point("q"), S.point("r")
    u = StepFuzzySet((F(3, 10), F(6, 10), 1), (CompactSet([p, q, r]), CompactSet([q, r]), CompactSet([q])))
    res = quantize(S, u, F(2, 10))
    assert res.breakpoints == (F(6, 10), 1)
    assert res.achieved_bound == F(1, 10) <= F(2, 10)
    coarse = quantize(S, u, 5)
    assert coarse.breakpoints == (1,) and coarse.quantized.sets == (CompactSet([q]),)
    chi = from_characteristic(CompactSet([p, r]))
    same = quantize(S, chi, F(1, 100))
    assert same.quantized == chi and same.achieved_bound == 0
    with pytest.raises(UsageError):
        quantize(S, u, 0)


def test_gen_random_deterministic_and_valid():
    assert gen_random(SPACE, 4, 6, 3) == gen_random(SPACE, 4, 6, 3)
    assert gen_random(SPACE, 1, 6, 5).levels == (1,)
    for seed in range(200):
        assert validate(gen_random(SPACE, 5, 6, seed)) == []
        assert validate(gen_random(ShiftSpace(3), 5, 6, seed)) == []


def test_level_pieces_cover_interval(step_ab, ab):
    pieces = level_pieces(step_ab, F(1, 4), F(3, 4))
    assert [a for a, _ in pieces] == [F(1, 2), F(3, 4)]


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9))
def test_round_trip_through_max_combination(seed):
    u = gen_random(SPACE, 5, 6, seed)
    assert from_max_combination(u.pairs()) == u


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9), st.integers(0, 64), st.integers(0, 64))
def test_alpha_level_antitone(seed, i, j):
    u = gen_random(SPACE, 5, 6, seed)
    lo, hi = sorted((F(i, 64), F(j, 64)))
    assert alpha_level(u, hi) <= alpha_level(u, lo)


def test_membership_matches_levels_500_cases():
    rng = random.Random(5)
    for _ in range(500):
        u = gen_random(SPACE, 5, 6, rng)
        x = rng.choice(SPACE.points())
        alpha = rng.choice([F(rng.randint(0, 32), 32), *u.levels])
        assert (membership(u, x) >= alpha) == (x in alpha_level(u, alpha)) or alpha == 0


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9), st.integers(1, 16))
def test_quantize_within_eps(seed, k):
    u = gen_random(SPACE, 6, 6, seed)
    res = quantize(SPACE, u, F(k, 16))
    assert d_inf(SPACE, u, res.quantized) == res.achieved_bound <= F(k, 16)
    assert res.breakpoints[-1] == 1 and set(res.breakpoints) <= set(u.levels)
