"""Command line entry point: ``fuzzydyn {metric,analyze,verify,selfcheck}``.

Exit codes: 0 when everything requested holds, 1 when a verdict fails,
2 on usage errors (bad arguments, unreadable or malformed input).
"""

from __future__ import annotations

import argparse
import itertools
import sys as _sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from . import generators as gen
from .analysis import (
    BASE,
    FUZZY,
    HYPER,
    BallSpec,
    CheckReport,
    PairVerdict,
    build_spec_witness,
    check_A_recurrent,
    check_A_transitive,
    check_devaney,
    check_point_recurrent,
    check_point_transitive,
    check_witness,
    project_spec_witness,
    transitivity_return_sets,
    verify_specification,
    witness_for,
)
from .dynamics import CircleRotation, FiniteMap, FullShift, System, basis
from .errors import ContractError, UsageError
from .families import ReturnSet, member, parse_family, validate_certificate
from .fuzzy import from_characteristic
from .metrics import METRICS, d_skorokhod
from .serialize import (
    dumps,
    fuzzy_file,
    fuzzy_from_json,
    load_json,
    point_from_json,
    set_from_json,
    system_from_json,
)
from .space import CirclePoint, CompactSet, ShiftPoint, to_fraction
from .suites import SUITES, run_suite

CHECKS = ("transitive", "recurrent", "point_transitive", "point_recurrent", "devaney", "specification")


@dataclass
class RunConfig:
    system: System
    level: str
    metric: str
    resolution: int
    horizon: int
    families: list
    checks: list
    balls: list
    point: object = None
    sample: list = field(default_factory=list)
    ell: int = 1
    ap_length: int | None = None
    spec: dict = field(default_factory=dict)
    max_chains: int = 100_000
    seed: int = 1
    raw: dict = field(default_factory=dict)


def _default_resolution(sys: System) -> int:
    if isinstance(sys, FullShift):
        return 3
    if isinstance(sys, CircleRotation):
        return 8
    return 1


def _ball_from_json(sys: System, level: str, metric: str, obj: dict, k: int) -> BallSpec:
    space = sys.space
    name = obj.get("name", f"ball{k}")
    radius = to_fraction(obj["radius"])
    center = obj["center"]
    if level == HYPER:
        return BallSpec.hyper(set_from_json(space, center), radius, name)
    if isinstance(center, list):
        u = from_characteristic(set_from_json(space, center))
    else:
        u = fuzzy_from_json(space, center)
    return BallSpec.fuzzy(u, radius, metric, name)


def build_balls(sys: System, level: str, metric: str, resolution: int, explicit=None) -> list[BallSpec]:
    """Explicit balls from the config, or the base basis lifted to the requested level."""
    if explicit:
        if level == BASE:
            raise UsageError("explicit balls are only used at hyper or fuzzy level")
        return [_ball_from_json(sys, level, metric, b, k) for k, b in enumerate(explicit)]
    elements = basis(sys, resolution)
    if level == BASE:
        return [BallSpec.base(e) for e in elements]
    if level == HYPER:
        return [BallSpec.hyper(CompactSet([e.center]), e.radius, e.name) for e in elements]
    return [BallSpec.fuzzy(from_characteristic(CompactSet([e.center])), e.radius, metric, e.name) for e in elements]


def all_words_point(k: int, length: int) -> ShiftPoint:
    """Periodic point whose cycle concatenates every word of the given length."""
    cycle = [s for w in itertools.product(range(k), repeat=length) for s in w]
    return ShiftPoint.periodic(cycle)


def parse_config(obj: dict, seed: int | None = None) -> RunConfig:
    if not isinstance(obj, dict):
        raise UsageError("config must be a JSON object")
    try:
        sys = system_from_json(obj["system"])
        level = obj.get("level", BASE)
        if level not in (BASE, HYPER, FUZZY):
            raise UsageError(f"level must be one of base, hyper, fuzzy (got {level!r})")
        metric = obj.get("metric", "endo")
        if metric not in METRICS:
            raise UsageError(f"metric must be one of {sorted(METRICS)}")
        resolution = int(obj.get("resolution", _default_resolution(sys)))
        horizon = int(obj.get("horizon", 64))
        if horizon < 1:
            raise UsageError("horizon must be >= 1")
        families = [parse_family(f) for f in obj.get("families", ["infinite:1"])]
        checks = list(obj.get("checks", []))
        if not checks:
            raise UsageError("request at least one check")
        for c in checks:
            if c not in CHECKS:
                raise UsageError(f"unknown check {c!r}; choose from {list(CHECKS)}")
        balls = build_balls(sys, level, metric, resolution, obj.get("balls"))
        space = sys.space
        if "point" in obj:
            point = point_from_json(space, obj["point"])
        elif isinstance(sys, FullShift):
            point = all_words_point(sys.k, resolution)
        elif isinstance(sys, CircleRotation):
            point = CirclePoint(0, sys.bits)
        else:
            point = space.points()[0] if isinstance(sys, FiniteMap) else None
        sample = [point_from_json(space, p) for p in obj.get("sample", [])]
        if not sample and isinstance(sys, FullShift):
            sample = [ShiftPoint.periodic(e.word) for e in basis(sys, resolution)]
        elif not sample:
            sample = [e.center for e in basis(sys, resolution)]
        budgets = obj.get("budgets", {})
        return RunConfig(
            sys, level, metric, resolution, horizon, families, checks, balls, point, sample,
            int(obj.get("ell", 1)), obj.get("ap_length"), obj.get("specification", {}),
            int(budgets.get("max_chains", 100_000)),
            int(seed if seed is not None else obj.get("seed", 1)), obj,
        )
    except KeyError as exc:
        raise UsageError(f"config is missing field {exc.args[0]!r}") from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, UsageError):
            raise
        raise UsageError(f"config value has the wrong type: {exc}") from exc


def _spec_report(cfg: RunConfig) -> CheckReport:
    """Randomised specification instances: base witnesses, plus fuzzy projections at fuzzy level."""
    if not isinstance(cfg.system, FullShift):
        raise UsageError("the specification check is implemented for the full shift only")
    rng = gen.rng_for(cfg.seed, "cli-spec")
    count = int(cfg.spec.get("instances", 20))
    eps = to_fraction(cfg.spec.get("eps", "1/4"))
    sizes = cfg.spec.get("s", [2, 3, 4])
    pairs = []
    for k in range(count):
        inst = gen.spec_instance(rng, eps, sizes[k % len(sizes)], cfg.system.k)
        x = build_spec_witness(cfg.system, inst)
        ok = verify_specification(cfg.system, x, inst)
        pairs.append(PairVerdict(f"instance{k}", str(x), ok,
                                 {"intervals": [list(iv) for iv in inst.intervals], "N": inst.N,
                                  "targets": [str(y) for y in inst.targets], "witness": str(x)},
                                 "exact symbolic check", "exact"))
    if cfg.level == FUZZY and cfg.system.k == 2:
        for k in range(count):
            s, v, inst = gen.fuzzy_spec_case(rng)
            try:
                w = project_spec_witness(s.space, s, v, inst)
                pairs.append(PairVerdict(f"fuzzy{k}", repr(w.object), True, {"alpha": str(w.alpha_used)}, "", "exact"))
            except ContractError as exc:
                pairs.append(PairVerdict(f"fuzzy{k}", "", False, {"error": str(exc)}, "", "exact"))
    return CheckReport("specification", cfg.level, all(p.holds for p in pairs), None, None, pairs,
                       extra={"eps": str(eps), "instances": count})


def run_checks(cfg: RunConfig) -> tuple[list[CheckReport], dict]:
    reports, timings = [], {}
    sys, level, H = cfg.system, cfg.level, cfg.horizon
    cached = None
    for check in cfg.checks:
        start = time.perf_counter()
        if check == "transitive":
            if cached is None:
                cached = transitivity_return_sets(sys, level, cfg.balls, H, cfg.max_chains)
            for fam in cfg.families:
                reports.append(check_A_transitive(sys, level, cfg.balls, fam, H, cached, cfg.max_chains))
        elif check == "recurrent":
            for fam in cfg.families:
                reports.append(check_A_recurrent(sys, level, cfg.balls, fam, cfg.ell, H, cfg.max_chains))
        elif check == "point_transitive":
            reports.append(check_point_transitive(sys, cfg.point, build_balls(sys, BASE, cfg.metric, cfg.resolution), H))
        elif check == "point_recurrent":
            reports.append(check_point_recurrent(sys, cfg.sample, build_balls(sys, BASE, cfg.metric, cfg.resolution), H, cfg.ap_length))
        elif check == "devaney":
            reports.append(check_devaney(sys, level, cfg.balls, H, cfg.max_chains))
        elif check == "specification":
            reports.append(_spec_report(cfg))
        timings[check] = round(time.perf_counter() - start, 3)
    return reports, timings


def build_report(cfg: RunConfig, reports: list[CheckReport], timings: dict) -> dict:
    config = dict(cfg.raw)
    config["seed"] = cfg.seed
    return {
        "tool": "fuzzydyn",
        "version": __version__,
        "config": config,
        "holds": all(r.holds for r in reports),
        "checks": reports,
        "timings": timings,
    }


def write_table(path, reports: list[CheckReport]) -> None:
    """Tab-separated ``check family u v n member`` rows for plotting."""
    lines = ["check\tfamily\tu\tv\tn\tmember"]
    for r in reports:
        if r.horizon is None:
            continue
        for p in r.pairs:
            hits = set(p.elements)
            for n in range(r.horizon + 1):
                lines.append(f"{r.check}\t{r.family or ''}\t{p.u}\t{p.v}\t{n}\t{int(n in hits)}")
    Path(path).write_text("\n".join(lines) + "\n")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_metric(args) -> int:
    space_u, u = fuzzy_file(args.u)
    space_v, v = fuzzy_file(args.v)
    if space_u != space_v:
        raise UsageError("the two fuzzy sets are declared over different spaces")
    names = sorted(METRICS) if args.metric == "all" else [args.metric]
    records = []
    for name in names:
        if name not in METRICS:
            raise UsageError(f"unknown metric {name!r}; choose from {sorted(METRICS)} or 'all'")
        rec = {"metric": name}
        if name == "skorokhod":
            value, align = d_skorokhod(space_u, u, v)
            rec["alignment"] = {"images": {str(b): str(c) for b, c in zip(align.levels, align.images)},
                                "attained": align.attained}
        else:
            value = METRICS[name](space_u, u, v)
        rec["value"] = str(value)
        rec["approx"] = float(value)
        records.append(rec)
    _emit(dumps(records[0] if len(records) == 1 else records), args.out)
    return 0


def cmd_analyze(args) -> int:
    cfg = parse_config(load_json(args.config), args.seed)
    reports, timings = run_checks(cfg)
    report = build_report(cfg, reports, timings)
    out = args.out or cfg.raw.get("output")
    _emit(dumps(report), out)
    if args.table:
        write_table(args.table, reports)
    for r in reports:
        label = r.check + (f"[{r.family}]" if r.family else "")
        status = "holds" if r.holds else "FAILS"
        bad = r.failing()
        hint = f" (first failure: {bad[0].u} -> {bad[0].v})" if bad else ""
        print(f"{label}: {status}{hint}", file=_sys.stderr)
    return 0 if report["holds"] else 1


def _run_named(args):
    name, seed = args
    return name, run_suite(name, seed)


def cmd_verify(args) -> int:
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        if name not in SUITES:
            raise UsageError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    jobs = max(1, args.jobs)
    if jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = dict(pool.map(_run_named, [(n, args.seed) for n in names]))
    else:
        results = {n: run_suite(n, args.seed) for n in names}
    ok = True
    for name in names:
        for r in results[name]:
            print(f"{name}: {r.line()}")
            ok &= r.ok
    passed = sum(r.ok for rs in results.values() for r in rs)
    total = sum(len(rs) for rs in results.values())
    print(f"{passed}/{total} checks passed")
    return 0 if ok else 1


def _certificate_times(cert: dict) -> list[int]:
    times = []
    if "first" in cert:
        times += cert["first"]
    if "run" in cert:
        times += list(range(cert["run"][0], cert["run"][1] + 1))
    if "tail" in cert:
        times += [cert["tail"][0], cert["tail"][1]]
    if "start" in cert and "difference" in cert:
        times += [cert["start"] + t * cert["difference"] for t in range(cert["terms"])]
    return sorted(set(times))[:32]


def cmd_selfcheck(args) -> int:
    report = load_json(args.report)
    cfg = parse_config(report["config"])
    balls = {b.name: b for b in cfg.balls}
    problems, checked = [], 0
    for rep in report["checks"]:
        check = rep["check"]
        if check in ("transitive", "recurrent"):
            fam = parse_family(rep["family"])
            for p in rep["pairs"]:
                R = ReturnSet(rep["horizon"], tuple(p["elements"]), p["exactness"])
                verdict = member(fam, R)
                checked += 1
                if verdict.holds != p["holds"]:
                    problems.append(f"{check}[{rep['family']}] {p['u']}->{p['v']}: verdict does not reproduce")
                    continue
                if not verdict.holds:
                    continue
                if not validate_certificate(fam, R, verdict):
                    problems.append(f"{p['u']}->{p['v']}: certificate does not re-validate")
                U, V = balls[p["u"]], balls[p["v"]]
                for n in _certificate_times(p["certificate"]):
                    if check == "transitive":
                        plan = [(0, U), (n, V)]
                    else:
                        plan = [(j * n, U) for j in range(rep["extra"]["ell"] + 1)]
                    x = witness_for(cfg.system, plan, cfg.max_chains)
                    if x is None or not check_witness(cfg.system, plan, x):
                        problems.append(f"{p['u']}->{p['v']}: no witness for n={n}")
        else:
            cfg.checks = [check]
            again, _ = run_checks(cfg)
            checked += 1
            if again[0].holds != rep["holds"]:
                problems.append(f"{check}: verdict does not reproduce")
    for line in problems:
        print(line)
    print(f"selfcheck: {checked} verdicts re-validated, {len(problems)} problems")
    return 0 if not problems else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fuzzydyn", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"fuzzydyn {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("metric", help="distance between two fuzzy sets")
    p.add_argument("u", help="JSON file with the first fuzzy set")
    p.add_argument("v", help="JSON file with the second fuzzy set")
    p.add_argument("--metric", default="all", help="inf, skorokhod, sendo, endo or all (default)")
    p.add_argument("--out", help="write the record here instead of stdout")
    p.set_defaults(func=cmd_metric)

    p = sub.add_parser("analyze", help="run the checks requested by a config file")
    p.add_argument("--config", required=True, help="JSON run configuration")
    p.add_argument("--seed", type=int, help="override the config seed")
    p.add_argument("--out", help="report path (default: config 'output' or stdout)")
    p.add_argument("--table", help="also write tab-separated return-set rows here")
    p.add_argument("--jobs", type=int, default=1, help="parallelism hint")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="run a seeded property suite")
    p.add_argument("suite", help=f"one of {sorted(SUITES)} or 'all'")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--jobs", type=int, default=1, help="run suites in this many processes")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("selfcheck", help="re-validate the certificates in a report")
    p.add_argument("report", help="report JSON written by 'analyze'")
    p.set_defaults(func=cmd_selfcheck)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
