"""Seeded property sweeps shared by ``fuzzydyn verify`` and the acceptance tests.

Each suite returns a list of :class:`CheckResult` lines; a line passes when
every case in it passes (or, for the two "fails" verdicts of the rotation
suite, when the expected failure is observed).
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import generators as gen
from .analysis import (
    BASE,
    BallSpec,
    build_spec_witness,
    check_A_transitive,
    check_devaney,
    lift_transitivity_witness,
    project_periodic,
    project_recurrence_witness,
    project_spec_witness,
    project_transitivity_witness,
    return_set,
    transitivity_return_sets,
    verify_specification,
)
from .dynamics import (
    CircleRotation,
    FullShift,
    basis,
    hyper_iterate,
    power_map,
    zadeh_image,
    zadeh_iterate,
    zadeh_pointwise,
)
from .errors import ContractError, UsageError
from .families import (
    AP,
    Cofinite,
    Infinite,
    ReturnSet,
    Syndetic,
    Thick,
    UpperBanach,
    find_ap,
    member,
    upper_banach_density,
)
from .fuzzy import alpha_level, from_characteristic, level_pieces, quantize
from .metrics import (
    d_endo,
    d_inf,
    d_sendo,
    d_skorokhod,
    endo_oracle,
    sendo_oracle,
    skorokhod_oracle,
)
from .space import hausdorff

SLACK = 1e-9


@dataclass
class CheckResult:
    label: str
    passed: int
    total: int
    seconds: float = 0.0
    detail: str = ""
    failures: list = field(default_factory=list)
    expect_all: bool = True

    @property
    def ok(self) -> bool:
        return self.passed == self.total if self.expect_all else self.passed > 0

    def line(self) -> str:
        mark = "PASS" if self.ok else "FAIL"
        text = f"[{mark}] {self.label}: {self.passed}/{self.total} ({self.seconds:.1f}s)"
        return text + (f" -- {self.detail}" if self.detail else "")


class _Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


def _result(label, outcomes, seconds, detail="") -> CheckResult:
    fails = [case for case, good in outcomes if not good]
    return CheckResult(label, len(outcomes) - len(fails), len(outcomes), seconds, detail, fails[:5])


# ---------------------------------------------------------------------------
# metrics
# ---------------------------------------------------------------------------


def metric_chain(seed: int, cases: int = 1000) -> CheckResult:
    rng = gen.rng_for(seed, "chain")
    space = gen.random_finite_space(rng)
    out = []
    with _Timer() as t:
        for k in range(cases):
            u = gen.gen_random(space, 4, 6, rng)
            v = gen.gen_random(space, 4, 6, rng)
            e, s = float(d_endo(space, u, v)), float(d_sendo(space, u, v))
            o, i = float(d_skorokhod(space, u, v)[0]), float(d_inf(space, u, v))
            out.append((k, e - s <= SLACK and s - o <= SLACK and o - i <= SLACK))
    return _result("metric chain endo <= sendo <= skorokhod <= inf", out, t.seconds)


def characteristic_collapse(seed: int, cases: int = 500) -> CheckResult:
    rng = gen.rng_for(seed, "collapse")
    space = gen.random_finite_space(rng)
    out = []
    with _Timer() as t:
        for k in range(cases):
            u = gen.gen_random(space, 4, 6, rng)
            K = gen.gen_random(space, 1, 6, rng)
            out.append((k, abs(float(d_skorokhod(space, u, K)[0] - d_inf(space, u, K))) <= SLACK))
    return _result("skorokhod equals sup metric against characteristic functions", out, t.seconds)


def skorokhod_vs_oracle(seed: int, cases: int = 200, grid: int = 64) -> CheckResult:
    rng = gen.rng_for(seed, "skorokhod")
    space = gen.random_finite_space(rng)
    out, worst = [], 0.0
    with _Timer() as t:
        for k in range(cases):
            u = gen.gen_random(space, 4, 6, rng)
            v = gen.gen_random(space, 4, 6, rng)
            gap = abs(float(d_skorokhod(space, u, v)[0]) - skorokhod_oracle(space, u, v, grid))
            worst = max(worst, gap)
            out.append((k, gap <= 2 / grid + SLACK))
    return _result(f"skorokhod exact vs grid-{grid} oracle within 2/{grid}", out, t.seconds, f"worst gap {worst:.4g}")


def graph_vs_oracle(seed: int, cases: int = 200, resolution: int = 256) -> CheckResult:
    rng = gen.rng_for(seed, "graph")
    space = gen.random_finite_space(rng)
    out, worst = [], 0.0
    with _Timer() as t:
        for k in range(cases):
            u = gen.gen_random(space, 4, 6, rng)
            v = gen.gen_random(space, 4, 6, rng)
            ge = abs(float(d_endo(space, u, v)) - endo_oracle(space, u, v, resolution))
            gs = abs(float(d_sendo(space, u, v)) - sendo_oracle(space, u, v, resolution))
            worst = max(worst, ge, gs)
            out.append((k, max(ge, gs) <= 1 / resolution + SLACK))
    return _result(f"endo/sendo closed forms vs resolution-{resolution} oracles", out, t.seconds, f"worst gap {worst:.4g}")


def quantization(seed: int, cases: int = 500) -> CheckResult:
    rng = gen.rng_for(seed, "quantize")
    space = gen.random_finite_space(rng)
    out = []
    with _Timer() as t:
        for k in range(cases):
            u = gen.gen_random(space, 6, 6, rng)
            eps = Fraction(rng.randint(1, 16), 16)
            q = quantize(space, u, eps)
            d = d_inf(space, u, q.quantized)
            good = d <= eps and d == q.achieved_bound and set(q.breakpoints) <= set(u.levels)
            out.append((k, good))
    return _result("quantization keeps sup distance within eps", out, t.seconds)


def suite_metrics(seed: int) -> list[CheckResult]:
    return [
        metric_chain(seed),
        characteristic_collapse(seed),
        skorokhod_vs_oracle(seed),
        graph_vs_oracle(seed),
        quantization(seed),
    ]


# ---------------------------------------------------------------------------
# levels of a fuzzy set near chi_K
# ---------------------------------------------------------------------------


def level_proximity(seed: int, cases: int = 1000) -> CheckResult:
    rng = gen.rng_for(seed, "levels")
    out, levels_checked, generated = [], 0, 0
    with _Timer() as t:
        while len(out) < cases:
            generated += 1
            space, K, u = gen.level_proximity_case(rng)
            delta = d_endo(space, from_characteristic(K), u)
            if delta >= Fraction(1, 2):
                continue
            good = True
            for _, L in level_pieces(u, delta, 1 - delta):
                levels_checked += 1
                good &= float(hausdorff(space, K, L)) <= float(delta) + 1e-12
            out.append((len(out), good))
    return _result("level sets within delta of K for alpha in (delta, 1-delta]", out, t.seconds,
                   f"{levels_checked} level sets checked, {generated} cases generated")


def suite_level_proximity(seed: int) -> list[CheckResult]:
    return [level_proximity(seed)]


# ---------------------------------------------------------------------------
# Zadeh extension
# ---------------------------------------------------------------------------


def zadeh_levels(seed: int, cases: int = 500) -> CheckResult:
    rng = gen.rng_for(seed, "zadeh")
    out = []
    with _Timer() as t:
        for k in range(cases):
            if k % 2:
                space = gen.random_finite_space(rng, n=rng.randint(3, 12))
                sys = gen.random_finite_map(rng, space)
            else:
                sys = FullShift(rng.choice((2, 3)))
            u = gen.random_fuzzy(sys, rng)
            alpha = rng.choice([Fraction(0), *u.levels, Fraction(rng.randint(0, 64), 64)])
            n = rng.randint(0, 8)
            out.append((k, alpha_level(zadeh_iterate(sys, u, n), alpha) == hyper_iterate(sys, alpha_level(u, alpha), n)))
    return _result("alpha-level of Zadeh iterate equals hyperspace iterate of alpha-level", out, t.seconds)


def zadeh_composition(seed: int, cases: int = 100) -> CheckResult:
    rng = gen.rng_for(seed, "compose")
    out = []
    with _Timer() as t:
        for k in range(cases):
            space = gen.random_finite_space(rng, n=rng.randint(3, 12))
            sys = gen.random_finite_map(rng, space)
            u = gen.random_fuzzy(sys, rng)
            n = rng.randint(0, 8)
            out.append((k, zadeh_iterate(sys, u, n) == zadeh_image(power_map(sys, n), u)))
    return _result("n-fold Zadeh extension equals extension of the n-th iterate", out, t.seconds)


def zadeh_pointwise_agreement(seed: int, cases: int = 200) -> CheckResult:
    rng = gen.rng_for(seed, "pointwise")
    out = []
    with _Timer() as t:
        for k in range(cases):
            space = gen.random_finite_space(rng, n=rng.randint(3, 12))
            sys = gen.random_finite_map(rng, space)
            u = gen.random_fuzzy(sys, rng)
            out.append((k, zadeh_image(sys, u) == zadeh_pointwise(sys, u)))
    return _result("level-wise Zadeh image equals sup-over-preimage image", out, t.seconds)


def suite_zadeh(seed: int) -> list[CheckResult]:
    return [zadeh_levels(seed), zadeh_composition(seed), zadeh_pointwise_agreement(seed)]


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------


def _random_return_set(rng, H=None) -> ReturnSet:
    H = H or rng.randint(8, 128)
    density = rng.random()
    return ReturnSet(H, tuple(n for n in range(H + 1) if rng.random() < density))


def _brute_ap(R: ReturnSet, terms: int) -> bool:
    S = set(R.elements)
    return any(
        all(a + t * d in S for t in range(terms))
        for a in R.elements for d in range(1, R.horizon + 1)
        if a + (terms - 1) * d <= R.horizon
    )


def _brute_ubd(R: ReturnSet, min_window: int) -> Fraction:
    S = set(R.elements)
    return max(
        Fraction(sum(1 for n in range(m, m + N + 1) if n in S), N + 1)
        for N in range(min_window, R.horizon + 1)
        for m in range(0, R.horizon - N + 1)
    )


def families_brute(seed: int, cases: int = 200) -> CheckResult:
    rng = gen.rng_for(seed, "families")
    out = []
    with _Timer() as t:
        for k in range(cases):
            R = _random_return_set(rng)
            ell = rng.randint(1, 8)
            w = rng.randint(1, R.horizon)
            ap_ok = (find_ap(R.elements, ell + 1) is not None) == _brute_ap(R, ell + 1)
            ubd_ok = (not R.elements and upper_banach_density(R, w) == 0) or upper_banach_density(R, w) == _brute_ubd(R, w)
            out.append((k, ap_ok and ubd_ok))
    return _result("AP detector and upper Banach density vs brute force", out, t.seconds)


def _random_family(rng, H):
    kind = rng.randrange(6)
    if kind == 0:
        return Infinite(rng.randint(1, H + 1))
    if kind == 1:
        return Cofinite(rng.randint(1, H))
    if kind == 2:
        return Thick(rng.randint(1, min(H, 12)))
    if kind == 3:
        return Syndetic(rng.randint(1, min(H, 12)))
    if kind == 4:
        return AP(rng.randint(1, min(H, 10)))
    return UpperBanach(Fraction(rng.randint(1, 8), 8))


def families_monotone(seed: int, cases: int = 500) -> CheckResult:
    rng = gen.rng_for(seed, "monotone")
    out = []
    with _Timer() as t:
        for k in range(cases):
            R = _random_return_set(rng)
            extra = rng.random()
            bigger = ReturnSet(R.horizon, R.elements + tuple(n for n in range(R.horizon + 1) if rng.random() < extra))
            fam = _random_family(rng, R.horizon)
            out.append((k, not member(fam, R).holds or member(fam, bigger).holds))
    return _result("family verdicts are hereditary upward", out, t.seconds)


def families_overlap(seed: int, cases: int = 200) -> CheckResult:
    rng = gen.rng_for(seed, "overlap")
    out = []
    with _Timer() as t:
        for k in range(cases):
            H = rng.randint(16, 128)
            g = rng.randint(1, 12)
            start = rng.randint(0, H - g)
            A = ReturnSet(H, tuple(range(start, start + g + 1)) + tuple(n for n in range(H + 1) if rng.random() < 0.2))
            B, n = [], rng.randint(0, g)
            while n <= H:
                B.append(n)
                n += rng.randint(1, g + 1)
            B = ReturnSet(H, tuple(B))
            thick, synd = member(Thick(g), A).holds, member(Syndetic(g), B).holds
            good = thick and synd and bool(set(A.elements) & set(B.elements))
            tail = rng.randint(1, H)
            C = ReturnSet(H, tuple(range(tail, H + 1)))
            if len(B) > tail:
                good &= bool(set(C.elements) & set(B.elements))
            out.append((k, good))
    return _result("thick and syndetic windows always meet", out, t.seconds)


def suite_families(seed: int) -> list[CheckResult]:
    return [families_brute(seed), families_monotone(seed), families_overlap(seed)]


# ---------------------------------------------------------------------------
# transfers
# ---------------------------------------------------------------------------


def _count(label, seed, salt, cases, make, run) -> CheckResult:
    rng = gen.rng_for(seed, salt)
    out = []
    with _Timer() as t:
        for k in range(cases):
            args = make(rng)
            try:
                run(*args)
                out.append((k, True))
            except ContractError as exc:
                out.append(((k, str(exc), exc.measured), False))
    return _result(label, out, t.seconds)


def transfer_projection(seed, cases=200):
    return _count("fuzzy transitivity witnesses project to compact witnesses", seed, "proj", cases,
                  gen.transitivity_instance,
                  lambda s, K, L, e, n, u: project_transitivity_witness(s.space, s, K, L, e, n, u))


def transfer_lift(seed, cases=200):
    return _count("level witnesses lift to fuzzy witnesses", seed, "lift", cases, gen.lift_instance,
                  lambda s, u, v, e, n, w: lift_transitivity_witness(s.space, s, u, v, e, n, w))


def transfer_recurrence(seed, cases=200):
    return _count("fuzzy recurrence witnesses project", seed, "rec", cases, gen.recurrence_instance,
                  lambda s, K, e, n, ell, u: project_recurrence_witness(s.space, s, K, e, n, ell, u))


def transfer_periodic(seed, cases=100):
    return _count("periodic fuzzy sets project to periodic compact sets", seed, "per", cases,
                  gen.periodic_instance,
                  lambda s, K, e, u, p: project_periodic(s.space, s, K, e, u, p))


def suite_transfers(seed: int) -> list[CheckResult]:
    return [transfer_projection(seed), transfer_lift(seed), transfer_recurrence(seed), transfer_periodic(seed)]


# ---------------------------------------------------------------------------
# specification
# ---------------------------------------------------------------------------


def spec_build(seed: int, cases: int = 100) -> CheckResult:
    rng = gen.rng_for(seed, "spec")
    sys = FullShift(2)
    out = []
    with _Timer() as t:
        for k in range(cases):
            eps = (Fraction(1, 4), Fraction(1, 16))[k % 2]
            s = (2, 3, 4)[k % 3]
            inst = gen.spec_instance(rng, eps, s)
            x = build_spec_witness(sys, inst)
            out.append((k, verify_specification(sys, x, inst)))
    return _result("periodic shadows of specification instances verify", out, t.seconds)


def spec_projection(seed: int, cases: int = 100) -> CheckResult:
    return _count("fuzzy specification witnesses project", seed, "pspec", cases, gen.fuzzy_spec_case,
                  lambda s, v, inst: project_spec_witness(s.space, s, v, inst))


def suite_specification(seed: int) -> list[CheckResult]:
    return [spec_build(seed), spec_projection(seed)]


# ---------------------------------------------------------------------------
# flagship systems
# ---------------------------------------------------------------------------

SHIFT_FAMILIES = (Cofinite(4), Thick(8), Syndetic(1), AP(8), UpperBanach(Fraction(1, 2)))


def brute_shift_return(w: tuple, v: tuple, n: int) -> bool:
    """Enumerate every binary word long enough to decide ``[w] -> [v]`` at time ``n``."""
    L = max(len(w), n + len(v))
    words = np.arange(1 << L, dtype=np.int64)
    wi = int("".join(map(str, w)), 2)
    vi = int("".join(map(str, v)), 2)
    head = words >> (L - len(w))
    mid = (words >> (L - n - len(v))) & ((1 << len(v)) - 1)
    return bool(np.any((head == wi) & (mid == vi)))


def shift_checks(seed: int = 0, H: int = 64, max_len: int = 4) -> list[CheckResult]:
    sys = FullShift(2)
    cyl = basis(sys, max_len)
    results = []
    with _Timer() as t:
        sets = transitivity_return_sets(sys, BASE, cyl, H)
    for fam in SHIFT_FAMILIES:
        with _Timer() as tf:
            rep = check_A_transitive(sys, BASE, cyl, fam, H, return_sets=sets)
        bad = rep.failing()
        detail = f"first failing pair {bad[0].u}->{bad[0].v}: {bad[0].certificate}" if bad else ""
        results.append(CheckResult(f"full shift {type(fam).__name__}({list(vars(fam).values())[0]})-transitive",
                                   len(rep.pairs) - len(bad), len(rep.pairs), tf.seconds + t.seconds / len(SHIFT_FAMILIES), detail))
    with _Timer() as t:
        dev = check_devaney(sys, BASE, cyl, H)
    results.append(CheckResult("full shift Devaney chaotic at scale", int(dev.holds), 1, t.seconds, str(dev.extra)))
    out = []
    with _Timer() as t:
        for U, V in itertools.product(cyl, repeat=2):
            R = sets[(U.name, V.name)]
            agree = all((n in R) == brute_shift_return(U.word, V.word, n) for n in range(13))
            out.append(((U.name, V.name), agree))
    results.append(_result("full shift return sets match word enumeration for n <= 12", out, t.seconds))
    return results


def rotation_checks(seed: int = 0, H: int = 512, bits: int = 64, resolution: int = 8) -> list[CheckResult]:
    sys = CircleRotation(bits)
    arcs = basis(sys, resolution)
    with _Timer() as t:
        sets = transitivity_return_sets(sys, BASE, arcs, H)
        synd = check_A_transitive(sys, BASE, arcs, Syndetic(13), H, return_sets=sets)
        thick = check_A_transitive(sys, BASE, arcs, Thick(8), H, return_sets=sets)
    holes = max(p.certificate.get("max_hole", 0) for p in synd.pairs) if synd.holds else None
    r1 = CheckResult("golden rotation Syndetic(13)-transitive", len(synd.pairs) - len(synd.failing()),
                     len(synd.pairs), t.seconds, f"largest hole {holes}")
    fails = thick.failing()
    r2 = CheckResult("golden rotation not Thick(8)-transitive", len(fails), len(thick.pairs), 0.0,
                     f"e.g. {fails[0].u}->{fails[0].v} longest run {fails[0].certificate}" if fails else "",
                     expect_all=False)
    return [r1, r2]


SUITES = {
    "metrics": suite_metrics,
    "level_proximity": suite_level_proximity,
    "zadeh": suite_zadeh,
    "families": suite_families,
    "transfers": suite_transfers,
    "specification": suite_specification,
    "full_shift": shift_checks,
    "rotation": rotation_checks,
}


def run_suite(name: str, seed: int = 1) -> list[CheckResult]:
    try:
        fn = SUITES[name]
    except KeyError as exc:
        raise UsageError(f"unknown suite {name!r}; choose from {sorted(SUITES)}") from exc
    return fn(seed)
