import json
import random
from fractions import Fraction
from pathlib import Path

import pytest

from fuzzydyn import generators as gen
from fuzzydyn.cli import main
from fuzzydyn.dynamics import CircleRotation, FiniteMap, FullShift, Product
from fuzzydyn.errors import UsageError
from fuzzydyn.fuzzy import gen_random
from fuzzydyn.serialize import (
    dumps,
    fuzzy_from_json,
    fuzzy_to_json,
    load_json,
    point_from_json,
    point_to_json,
    space_from_json,
    space_to_json,
    system_from_json,
    system_to_json,
)
from fuzzydyn.space import Circle, ProductSpace, ShiftSpace, random_point

DATA = Path(__file__).resolve().parent.parent / "demos" / "data"


def _strip_timings(report):
    report = dict(report)
    report.pop("timings", None)
    return report


@pytest.mark.parametrize("space", [
    gen.random_finite_space(random.Random(0)), ShiftSpace(3), Circle(48), ProductSpace(ShiftSpace(2), 2),
], ids=["finite", "shift", "circle", "product"])
def test_space_point_and_fuzzy_round_trip(space):
    assert space_from_json(json.loads(dumps(space_to_json(space)))) == space
    rng = random.Random(1)
    for _ in range(20):
        p = random_point(space, rng)
        assert point_from_json(space, json.loads(dumps(point_to_json(space, p)))) == p
        u = gen_random(space, 4, 4, rng)
        assert fuzzy_from_json(space, json.loads(dumps(fuzzy_to_json(space, u)))) == u


@pytest.mark.parametrize("sys", [
    FullShift(3), CircleRotation(), CircleRotation.from_number("1/3", 32), Product(FullShift(2), 2),
    FiniteMap(gen.random_finite_space(random.Random(2), n=4), (1, 2, 3, 0)),
], ids=["shift", "golden", "rational", "product", "finite"])
def test_system_round_trip(sys):
    assert system_from_json(json.loads(dumps(system_to_json(sys)))) == sys


def test_bad_json_reports_location(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"system": {"kind": "full_shift",\n "k": }}')
    with pytest.raises(UsageError, match="bad.json:2"):
        load_json(bad)
    with pytest.raises(UsageError):
        system_from_json({"kind": "tent"})


def test_metric_command_example(capsys):
    assert main(["metric", str(DATA / "u_two_levels.json"), str(DATA / "v_two_levels.json")]) == 0
    records = {r["metric"]: r for r in json.loads(capsys.readouterr().out)}
    assert records["skorokhod"]["value"] == "1/10" and records["inf"]["value"] == "1"
    assert records["skorokhod"]["alignment"]["images"]["3/5"] == "1/2"


def test_metric_identical_files_give_zero(capsys):
    path = str(DATA / "u_two_levels.json")
    assert main(["metric", path, path]) == 0
    assert {r["value"] for r in json.loads(capsys.readouterr().out)} == {"0"}


def test_metric_characteristic_files_match_hausdorff(tmp_path, capsys):
    space = {"kind": "finite", "labels": ["a", "b", "c"], "distances": [[0, 1, 3], [1, 0, 2], [3, 2, 0]]}
    for name, pts in (("k", ["a"]), ("l", ["b", "c"])):
        (tmp_path / f"{name}.json").write_text(json.dumps({"space": space, "levels": [{"alpha": 1, "points": pts}]}))
    assert main(["metric", str(tmp_path / "k.json"), str(tmp_path / "l.json"), "--metric", "inf"]) == 0
    assert json.loads(capsys.readouterr().out)["value"] == "3"
    assert main(["metric", str(tmp_path / "k.json"), str(tmp_path / "l.json"), "--metric", "endo"]) == 0
    assert json.loads(capsys.readouterr().out)["value"] == "1"


def test_usage_errors_exit_2(tmp_path):
    assert main(["metric", str(DATA / "u_two_levels.json"), str(tmp_path / "missing.json")]) == 2
    assert main(["metric", str(DATA / "u_two_levels.json"), str(DATA / "u_two_levels.json"), "--metric", "l2"]) == 2
    assert main(["verify", "nonsense"]) == 2
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"system": {"kind": "full_shift", "k": 2}, "families": ["thick:x"]}))
    assert main(["analyze", "--config", str(cfg)]) == 2
    assert main(["bogus"]) == 2


def test_analyze_exit_codes_and_selfcheck(tmp_path, capsys):
    out = tmp_path / "mixing.json"
    table = tmp_path / "mixing.tsv"
    assert main(["analyze", "--config", str(DATA / "shift_mixing.json"), "--out", str(out), "--table", str(table)]) == 0
    report = json.loads(out.read_text())
    assert report["holds"] and report["config"]["seed"] == 1
    assert table.read_text().splitlines()[0].split("\t")[0] == "check"
    assert main(["selfcheck", str(out)]) == 0
    rot = tmp_path / "rotation.json"
    assert main(["analyze", "--config", str(DATA / "rotation_thick.json"), "--out", str(rot)]) == 1
    failing = [c for c in json.loads(rot.read_text())["checks"] if not c["holds"]]
    assert failing and failing[0]["family"] == "thick:8"
    assert "first failure" in capsys.readouterr().err


def test_analyze_deterministic_modulo_timings(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    cfg = str(DATA / "shift_fuzzy.json")
    assert main(["analyze", "--config", cfg, "--out", str(a)]) == main(["analyze", "--config", cfg, "--out", str(b)])
    assert _strip_timings(json.loads(a.read_text())) == _strip_timings(json.loads(b.read_text()))


def test_verify_single_suite(capsys):
    assert main(["verify", "families", "--seed", "3"]) == 0
    assert "checks passed" in capsys.readouterr().out
