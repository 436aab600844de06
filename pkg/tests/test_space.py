import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fuzzydyn.errors import UsageError
from fuzzydyn.space import (
    Circle,
    CirclePoint,
    CompactSet,
    FiniteMetric,
    FinitePoint,
    ProductPoint,
    ProductSpace,
    ShiftPoint,
    ShiftSpace,
    distance,
    first_difference,
    hausdorff,
    random_point,
    to_fraction,
    within_thickening,
)
from fuzzydyn import generators as gen


def test_to_fraction_reads_decimals_exactly():
    assert to_fraction(0.1) == Fraction(1, 10)
    assert to_fraction("3/8") == Fraction(3, 8)
    with pytest.raises(UsageError):
        to_fraction("x")
    with pytest.raises(UsageError):
        to_fraction(float("nan"))


def test_finite_identity(ab):
    a = ab.point("a")
    assert distance(ab, a, a) == 0


def test_shift_first_disagreement_at_index_three():
    S = ShiftSpace(2)
    assert distance(S, ShiftPoint.parse("(0)"), ShiftPoint.parse("0001(0)")) == Fraction(1, 8)


def test_circle_half_turn():
    C = Circle(32)
    p, q = CirclePoint.from_number("0.25", 32), CirclePoint.from_number("0.75", 32)
    assert distance(C, p, q) == Fraction(1, 2)


def test_circle_distance_wraps():
    C = Circle(32)
    p, q = CirclePoint.from_number("0.05", 32), CirclePoint.from_number("0.95", 32)
    assert abs(distance(C, p, q) - Fraction(1, 10)) <= C.tolerance


def test_mismatched_kinds_rejected(ab):
    with pytest.raises(UsageError):
        distance(ab, ab.point("a"), ShiftPoint.parse("(0)"))


def test_finite_metric_validation():
    with pytest.raises(UsageError):
        FiniteMetric(("a", "b"), ((0, 1), (2, 0)))
    with pytest.raises(UsageError):
        FiniteMetric(("a", "b", "c"), ((0, 1, 5), (1, 0, 1), (5, 1, 0)))
    with pytest.raises(UsageError):
        FiniteMetric(("a", "b"), ((0, 0), (0, 0)))
    with pytest.raises(UsageError):
        ShiftSpace(1)
    with pytest.raises(UsageError):
        Circle(16)


def test_shift_point_canonical_form():
    assert ShiftPoint((0, 1, 0, 1), (0, 1)) == ShiftPoint((), (0, 1))
    assert ShiftPoint((1,), (0, 0)) == ShiftPoint.parse("1(0)")
    assert ShiftPoint((1, 0), (1, 0)) == ShiftPoint((), (1, 0))
    p = ShiftPoint.parse("110(01)")
    assert str(p) == "11(00)" or p.word(12) == (1, 1, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0)
    with pytest.raises(UsageError):
        ShiftPoint.parse("0101")


def test_shift_shifted():
    p = ShiftPoint.parse("1(0)")
    assert p.shifted(1) == ShiftPoint.parse("(0)")
    q = ShiftPoint.parse("(011)")
    assert q.shifted(2).word(6) == (1, 0, 1, 1, 0, 1)


def test_hausdorff_examples(ab):
    a, b = ab.point("a"), ab.point("b")
    A, B = CompactSet([a, b]), CompactSet([a])
    assert hausdorff(ab, A, A) == 0
    assert hausdorff(ab, A, B) == 1
    assert hausdorff(ab, CompactSet([a]), CompactSet([b])) == 1


def test_thickening_examples(ab):
    a, b = ab.point("a"), ab.point("b")
    A, B = CompactSet([a, b]), CompactSet([a])
    assert within_thickening(ab, A, A, 0)
    assert not within_thickening(ab, A, B, Fraction(1, 2))
    assert within_thickening(ab, A, B, 1)


def test_compact_set_rules():
    with pytest.raises(UsageError):
        CompactSet([])
    with pytest.raises(UsageError):
        CompactSet([FinitePoint(0), ShiftPoint.parse("(0)")])
    assert CompactSet([FinitePoint(1), FinitePoint(0), FinitePoint(1)]).points == (FinitePoint(0), FinitePoint(1))


def test_product_max_metric():
    P = ProductSpace(ShiftSpace(2), 2)
    p = ProductPoint((ShiftPoint.parse("(0)"), ShiftPoint.parse("(1)")))
    q = ProductPoint((ShiftPoint.parse("0(1)"), ShiftPoint.parse("(1)")))
    assert distance(P, p, q) == Fraction(1, 2)


# -- properties ---------------------------------------------------------------

SPACES = {
    "finite": gen.random_finite_space(random.Random(7)),
    "shift": ShiftSpace(2),
    "circle": Circle(40),
    "product": ProductSpace(ShiftSpace(3), 2),
}


def _random_set(space, rng, size=4):
    return CompactSet(random_point(space, rng) for _ in range(rng.randint(1, size)))


@pytest.mark.parametrize("kind", sorted(SPACES))
def test_hausdorff_triangle_1000_triples(kind):
    space = SPACES[kind]
    rng = random.Random(kind)
    slack = 3 * space.tolerance if isinstance(space, Circle) else 0
    for _ in range(1000):
        A, B, C = (_random_set(space, rng) for _ in range(3))
        assert hausdorff(space, A, C) <= hausdorff(space, A, B) + hausdorff(space, B, C) + slack
        assert hausdorff(space, A, B) == hausdorff(space, B, A)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9), st.integers(0, 16))
def test_thickening_characterises_hausdorff(seed, k):
    space = SPACES["finite"]
    rng = random.Random(seed)
    A, B = _random_set(space, rng), _random_set(space, rng)
    eps = Fraction(k, 8)
    both = within_thickening(space, A, B, eps) and within_thickening(space, B, A, eps)
    assert (hausdorff(space, A, B) <= eps) == both


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9))
def test_union_bound(seed):
    space = SPACES["finite"]
    rng = random.Random(seed)
    A, B, C, D = (_random_set(space, rng) for _ in range(4))
    assert hausdorff(space, A | B, C | D) <= max(hausdorff(space, A, C), hausdorff(space, B, D))


@settings(max_examples=300, deadline=None)
@given(
    st.lists(st.integers(0, 1), max_size=5), st.lists(st.integers(0, 1), min_size=1, max_size=4),
    st.lists(st.integers(0, 1), max_size=5), st.lists(st.integers(0, 1), min_size=1, max_size=4),
)
def test_shift_distance_matches_long_truncation(p1, c1, p2, c2):
    x, y = ShiftPoint(tuple(p1), tuple(c1)), ShiftPoint(tuple(p2), tuple(c2))
    L = 64
    wx, wy = x.word(L), y.word(L)
    m = next((i for i in range(L) if wx[i] != wy[i]), None)
    expected = Fraction(0) if m is None else Fraction(1, 2**m)
    assert distance(ShiftSpace(2), x, y) == expected
    assert (first_difference(x, y) is None) == (x == y)
