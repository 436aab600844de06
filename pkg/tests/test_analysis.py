import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fuzzydyn import generators as gen
from fuzzydyn.analysis import (
    BallSpec,
    SpecInstance,
    build_spec_witness,
    check_A_recurrent,
    check_A_transitive,
    check_devaney,
    check_periodic_density,
    check_point_recurrent,
    check_point_transitive,
    check_witness,
    choose_alpha,
    ell_return_set,
    lift_transitivity_witness,
    periodic_near,
    point_return_set,
    project_periodic,
    project_recurrence_witness,
    project_spec_witness,
    project_transitivity_witness,
    return_set,
    return_set_with_witnesses,
    verify_specification,
)
from fuzzydyn.cli import all_words_point
from fuzzydyn.dynamics import (
    CircleRotation,
    FiniteMap,
    FullShift,
    Product,
    basis,
    cylinder,
    hyper_iterate,
    in_ball,
    iterate,
    zadeh_iterate,
)
from fuzzydyn.errors import ContractError, UnsupportedError, UsageError
from fuzzydyn.families import EXACT, SOUND_POSITIVES, Cofinite, Infinite, Syndetic, Thick
from fuzzydyn.fuzzy import StepFuzzySet, alpha_level, from_characteristic, gen_random
from fuzzydyn.metrics import d_endo
from fuzzydyn.space import CompactSet, ShiftPoint, hausdorff, random_point

F = Fraction
SHIFT = FullShift(2)


def cyl(word):
    return BallSpec.base(cylinder(word))


@pytest.fixture
def identity(ab):
    return FiniteMap(ab, (0, 1))


# -- return sets ---------------------------------------------------------------


def test_shift_return_set_examples():
    R = return_set(SHIFT, cyl("0"), cyl("0"), 16)
    assert R.elements == tuple(range(17)) and R.exactness == EXACT
    assert return_set(SHIFT, cyl("01"), cyl("00"), 16).elements == tuple(range(2, 17))


def test_identity_return_sets(identity):
    a, b = basis(identity, 1)
    A, B = BallSpec.base(a), BallSpec.base(b)
    assert return_set(identity, A, A, 10).elements == tuple(range(11))
    assert return_set(identity, A, B, 10).elements == ()
    assert ell_return_set(identity, A, 3, 10).elements == tuple(range(11))


def test_point_return_set_examples(identity, ab):
    A, B = (BallSpec.base(e) for e in basis(identity, 1))
    assert point_return_set(identity, ab.point("a"), A, 8).elements == tuple(range(9))
    assert point_return_set(identity, ab.point("a"), B, 8).elements == ()
    alt = ShiftPoint.parse("(01)")
    assert point_return_set(SHIFT, alt, cyl("0"), 12).elements == tuple(range(0, 13, 2))


def test_shift_ell_return_set():
    assert ell_return_set(SHIFT, cyl("0"), 3, 20).elements == tuple(range(21))


def _brute_shift(words_at, length):
    """Some binary word of ``length`` carries each ``w`` at position ``t``."""
    for x in itertools.product((0, 1), repeat=length):
        if all(x[t:t + len(w)] == w for t, w in words_at):
            return True
    return False


def test_shift_return_sets_match_word_enumeration():
    words = [w for k in (1, 2, 3) for w in itertools.product((0, 1), repeat=k)]
    rng = random.Random(3)
    for _ in range(40):
        w, v = rng.choice(words), rng.choice(words)
        R = return_set(SHIFT, cyl(w), cyl(v), 10)
        for n in range(11):
            assert (n in R) == _brute_shift([(0, w), (n, v)], n + 3)
        for ell in (1, 2):
            E = ell_return_set(SHIFT, cyl(w), ell, 5)
            for n in range(6):
                assert (n in E) == _brute_shift([(j * n, w) for j in range(ell + 1)], ell * n + 3)


def _subsets(points):
    for r in range(1, len(points) + 1):
        yield from (CompactSet(c) for c in itertools.combinations(points, r))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9))
def test_hyper_return_sets_match_subset_enumeration(seed):
    rng = random.Random(seed)
    space = gen.random_finite_space(rng, n=4, grid=4)
    sys = gen.random_finite_map(rng, space)
    K, L = gen_random(space, 1, 2, rng).support, gen_random(space, 1, 3, rng).support
    r = F(rng.randint(1, 6), 4)
    U, V = BallSpec.hyper(K, r, "U"), BallSpec.hyper(L, r, "V")
    R, wit = return_set_with_witnesses(sys, U, V, 6)
    assert R.exactness == EXACT
    subsets = list(_subsets(space.points()))
    for n in range(7):
        brute = any(
            hausdorff(space, C, K) < r and hausdorff(space, hyper_iterate(sys, C, n), L) < r for C in subsets
        )
        assert (n in R) == brute
        if n in R:
            assert check_witness(sys, [(0, U), (n, V)], wit[n])


def test_fuzzy_return_witnesses_are_checked():
    rng = random.Random(8)
    for _ in range(20):
        space = gen.random_finite_space(rng, n=5, grid=4)
        sys = gen.random_finite_map(rng, space)
        u, v = gen_random(space, 2, 3, rng), gen_random(space, 2, 3, rng)
        for metric in ("inf", "skorokhod", "sendo", "endo"):
            U, V = BallSpec.fuzzy(u, F(1, 2), metric), BallSpec.fuzzy(v, F(1, 2), metric)
            R, wit = return_set_with_witnesses(sys, U, V, 5)
            assert R.exactness == SOUND_POSITIVES
            for n in R.elements:
                assert check_witness(sys, [(0, U), (n, V)], wit[n])


def test_stronger_metric_witness_serves_weaker_ball():
    rng = random.Random(21)
    for _ in range(20):
        space = gen.random_finite_space(rng, n=5, grid=4)
        sys = gen.random_finite_map(rng, space)
        u, v = gen_random(space, 2, 3, rng), gen_random(space, 2, 3, rng)
        _, wit = return_set_with_witnesses(sys, BallSpec.fuzzy(u, F(1, 2), "inf"), BallSpec.fuzzy(v, F(1, 2), "inf"), 5)
        for name in ("skorokhod", "sendo", "endo"):
            balls = lambda n: [(0, BallSpec.fuzzy(u, F(1, 2), name)), (n, BallSpec.fuzzy(v, F(1, 2), name))]
            assert all(check_witness(sys, balls(n), w) for n, w in wit.items())


def test_circle_return_witnesses_verified_and_complete():
    rot = CircleRotation(32)
    arcs = [BallSpec.base(b) for b in basis(rot, 8)]
    rng = random.Random(1)
    U, V = arcs[0], arcs[3]
    R, wit = return_set_with_witnesses(rot, U, V, 40)
    for n in R.elements:
        assert check_witness(rot, [(0, U), (n, V)], wit[n])
    # points well inside both arcs must be found
    margin = F(1, 1000)
    for _ in range(2000):
        x = random_point(rot.space, rng)
        if not in_ball(rot, U.element, x, margin):
            continue
        for n in range(41):
            if in_ball(rot, V.element, iterate(rot, x, n), margin):
                assert n in R


# -- checks --------------------------------------------------------------------


def test_shift_mixing_and_recurrence():
    cyls = basis(SHIFT, 3)
    rep = check_A_transitive(SHIFT, "base", cyls, Cofinite(3), 16)
    assert rep.holds and all(p.exactness == EXACT for p in rep.pairs)
    assert check_A_transitive(SHIFT, "base", cyls, Thick(8), 16).holds
    assert check_A_recurrent(SHIFT, "base", basis(SHIFT, 2), Syndetic(1), 3, 16).holds


def test_shift_devaney():
    rep = check_devaney(SHIFT, "base", basis(SHIFT, 3), 16)
    assert rep.holds and rep.extra == {"transitive": True, "periodic_density": True}


def test_rotation_devaney_fails():
    rot = CircleRotation()
    rep = check_devaney(rot, "base", basis(rot, 8), 64)
    assert not rep.holds and rep.extra["transitive"] and not rep.extra["periodic_density"]


def test_identity_on_two_points(identity, ab):
    singles = basis(identity, 1)
    assert check_periodic_density(identity, "base", singles, 8).holds
    assert not check_A_transitive(identity, "base", singles, Infinite(1), 8).holds
    assert check_A_recurrent(identity, "base", singles, Cofinite(1), 2, 8).holds
    assert check_point_recurrent(identity, [ab.point("a")], singles, 8).holds
    assert not check_point_transitive(identity, ab.point("a"), singles, 8).holds


def test_all_words_point_is_transitive_at_scale():
    x = all_words_point(2, 3)
    assert check_point_transitive(SHIFT, x, basis(SHIFT, 3), 64).holds


def test_rotation_point_transitive_and_recurrent():
    rot = CircleRotation()
    arcs = basis(rot, 8)
    x = arcs[2].center
    assert check_point_transitive(rot, x, arcs, 64).holds
    assert check_point_recurrent(rot, [x], arcs, 128).holds


def test_hyper_level_shift_product():
    pair = Product(SHIFT, 2)
    cyls = basis(pair, 1)
    assert check_A_transitive(pair, "base", cyls, Cofinite(1), 8).holds
    K = CompactSet([ShiftPoint.parse("(0)"), ShiftPoint.parse("(1)")])
    U = BallSpec.hyper(K, F(1, 2), "U")
    V = BallSpec.hyper(CompactSet([ShiftPoint.parse("(01)")]), F(1, 2), "V")
    R = return_set(SHIFT, U, V, 8)
    # a point starting 11 still starts with 1 after one step
    assert R.elements == tuple(range(2, 9))


def test_mismatched_basis_level_rejected():
    with pytest.raises(UsageError):
        check_A_transitive(SHIFT, "hyper", basis(SHIFT, 1), Infinite(1), 4)


# -- transfers -----------------------------------------------------------------


def test_level_projection_worked_example(ab, identity):
    a, b = ab.point("a"), ab.point("b")
    u = StepFuzzySet((F(2, 5), 1), (CompactSet([a, b]), CompactSet([a])))
    K = CompactSet([a])
    delta = d_endo(ab, from_characteristic(K), u)
    assert delta == F(2, 5)
    alpha = choose_alpha(u, delta)
    assert alpha == F(1, 2) and alpha_level(u, alpha) == K
    w = project_transitivity_witness(ab, identity, K, K, F(1, 2), 0, u)
    assert w.object == K and w.validation["hausdorff(K,C)"] == 0


def test_choose_alpha_snaps_to_breakpoint(ab):
    a, b = ab.point("a"), ab.point("b")
    u = StepFuzzySet((F(3, 5), 1), (CompactSet([a, b]), CompactSet([a])))
    assert choose_alpha(u, F(1, 10)) == F(3, 5)
    assert choose_alpha(u, F(9, 20)) == F(1, 2)
    with pytest.raises(UsageError):
        choose_alpha(u, F(1, 2))


def test_projection_trivial_and_contract(ab, identity):
    K = CompactSet([ab.point("a")])
    chi = from_characteristic(K)
    w = project_transitivity_witness(ab, identity, K, K, F(1, 4), 3, chi)
    assert w.object == K and max(w.validation.values()) == 0
    with pytest.raises(ContractError) as exc:
        project_transitivity_witness(ab, identity, K, CompactSet([ab.point("b")]), F(1, 4), 1, chi)
    assert exc.value.measured
    assert project_recurrence_witness(ab, identity, K, F(1, 4), 2, 3, chi).object == K
    assert project_periodic(ab, identity, K, F(1, 4), chi, 1).object == K


def test_shift_periodic_projection_is_exact():
    C = CompactSet([ShiftPoint.parse("(01)"), ShiftPoint.parse("(011)")])
    w = project_periodic(SHIFT.space, SHIFT, C, F(1, 4), from_characteristic(C), 6)
    assert w.validation["periodic"] and w.object == C


def test_lift_single_level(ab):
    collapse = FiniteMap.from_labels(ab, {"a": "b", "b": "b"})
    K = CompactSet([ab.point("a")])
    v = from_characteristic(CompactSet([ab.point("b")]))
    w = lift_transitivity_witness(ab, collapse, from_characteristic(K), v, F(1, 4), 1, [(1, K)])
    assert w.object == from_characteristic(K)


def test_lift_with_exact_levels_gives_zero_distances():
    rng = random.Random(6)
    for _ in range(30):
        space = gen.random_finite_space(rng)
        sys = gen.random_finite_map(rng, space)
        u = gen_random(space, 4, 5, rng)
        n = rng.randint(0, 4)
        v = zadeh_iterate(sys, u, n)
        pairs = [(a, alpha_level(u, a)) for a in sorted(set(u.levels) | set(v.levels))]
        w = lift_transitivity_witness(space, sys, u, v, F(1, 4), n, pairs)
        assert w.object == u and set(w.validation.values()) == {0}


@pytest.mark.parametrize("seed", range(5))
def test_lift_then_project_round_trip(seed):
    rng = random.Random(seed)
    sys, u, v, eps, n, witnesses = gen.lift_instance(rng)
    w = lift_transitivity_witness(sys.space, sys, u, v, eps, n, witnesses)
    assert max(w.validation.values()) < eps


def test_generated_transfers_validate():
    rng = random.Random(77)
    for _ in range(25):
        sys, K, L, eps, n, u = gen.transitivity_instance(rng)
        w = project_transitivity_witness(sys.space, sys, K, L, eps, n, u)
        assert max(w.validation.values()) < eps
        sys, K, eps, n, ell, u = gen.recurrence_instance(rng)
        assert max(project_recurrence_witness(sys.space, sys, K, eps, n, ell, u).validation.values()) < eps
        sys, K, eps, u, p = gen.periodic_instance(rng)
        assert project_periodic(sys.space, sys, K, eps, u, p).validation["periodic"]


# -- specification -------------------------------------------------------------


def test_periodic_near_examples():
    K = CompactSet([ShiftPoint.parse("(0)"), ShiftPoint.parse("01(1)")])
    P = periodic_near(SHIFT, K, F(1, 8))
    assert P == CompactSet([ShiftPoint.parse("(0)"), ShiftPoint.parse("(0111)")])
    assert hausdorff(SHIFT.space, K, P) <= F(1, 8)
    pure = CompactSet([ShiftPoint.parse("(01)"), ShiftPoint.parse("(1)")])
    assert periodic_near(SHIFT, pure, F(1, 8)) == pure
    with pytest.raises(UnsupportedError):
        periodic_near(CircleRotation(), CompactSet([basis(CircleRotation(), 2)[0].center]), F(1, 8))


def _two_block_instance(N=8):
    return SpecInstance((ShiftPoint.parse("(0)"), ShiftPoint.parse("(1)")), ((0, 0), (8, 8)), F(1, 4), N)


def test_spec_witness_example():
    inst = _two_block_instance()
    x = build_spec_witness(SHIFT, inst)
    assert x.word(16) == (0,) * 8 + (1,) * 8 and inst.period == 16
    assert x.word(3) == (0, 0, 0) and x.shifted(8).word(3) == (1, 1, 1)
    assert verify_specification(SHIFT, x, inst)


def test_spec_witness_for_equal_periodic_targets():
    y = ShiftPoint.parse("(01)")
    inst = SpecInstance((y, y), ((0, 1), (6, 7)), F(1, 4), 5)
    assert build_spec_witness(SHIFT, inst) == y


def test_spec_verifier_rejections():
    inst = _two_block_instance()
    x = build_spec_witness(SHIFT, inst)
    bent = ShiftPoint(x.word(16), (0,))
    assert not verify_specification(SHIFT, bent, inst)
    assert not verify_specification(SHIFT, ShiftPoint.parse("(0)"), inst)


def test_spec_instance_validation():
    y = ShiftPoint.parse("(0)")
    with pytest.raises(UsageError):
        SpecInstance((y,), ((0, 0),), F(1, 4), 4)
    with pytest.raises(UsageError):
        SpecInstance((y, y), ((1, 1), (8, 8)), F(1, 4), 4)
    with pytest.raises(UsageError):
        SpecInstance((y, y), ((0, 3), (5, 6)), F(1, 4), 4)
    with pytest.raises(ContractError):
        build_spec_witness(SHIFT, SpecInstance((y, y), ((0, 0), (4, 4)), F(1, 16), 4))


def test_generated_spec_instances():
    rng = random.Random(31)
    for _ in range(30):
        inst = gen.spec_instance(rng)
        assert verify_specification(SHIFT, build_spec_witness(SHIFT, inst), inst)
        sys, v, finst = gen.fuzzy_spec_case(rng)
        w = project_spec_witness(sys.space, sys, v, finst)
        assert w.validation["periodic"]


def test_spec_projection_of_characteristic_witness():
    inst = _two_block_instance()
    K = CompactSet([build_spec_witness(SHIFT, inst)])
    targets = SpecInstance((CompactSet([inst.targets[0]]), CompactSet([inst.targets[1]])), inst.intervals, inst.eps, inst.N)
    w = project_spec_witness(SHIFT.space, SHIFT, from_characteristic(K), targets)
    assert w.object == K and w.delta < inst.eps
