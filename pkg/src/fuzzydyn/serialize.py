"""JSON encodings of spaces, points, sets, fuzzy sets, systems and reports.

Numbers are written as rational strings (``"3/8"``) and read from strings,
integers or decimals.  Points are encoded per space:

* finite metric: the point label, e.g. ``"a"``
* shift: prefix and bracketed cycle, e.g. ``"0001(0)"``
* circle: a number in ``[0, 1)``, e.g. ``"1/4"`` (rounded to the precision)
* product: a list of component encodings
"""

from __future__ import annotations

import json
from dataclasses import asdict, is_dataclass
from fractions import Fraction
from pathlib import Path

from .dynamics import CircleRotation, FiniteMap, FullShift, Product, ProductSystem, System
from .errors import UsageError
from .fuzzy import StepFuzzySet, from_max_combination
from .space import (
    Circle,
    CirclePoint,
    CompactSet,
    FiniteMetric,
    ProductPoint,
    ProductSpace,
    ShiftPoint,
    ShiftSpace,
    Space,
    to_fraction,
)


def _req(obj: dict, key: str, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise UsageError(f"{where}: missing field {key!r}")
    return obj[key]


def space_from_json(obj, where: str = "space") -> Space:
    kind = _req(obj, "kind", where)
    if kind == "finite":
        labels = _req(obj, "labels", where)
        if "distances" in obj:
            return FiniteMetric(tuple(labels), tuple(tuple(r) for r in obj["distances"]))
        if "coordinates" in obj:
            return FiniteMetric.from_coordinates(obj["coordinates"], labels, obj.get("scale", 1))
        raise UsageError(f"{where}: finite space needs 'distances' or 'coordinates'")
    if kind == "shift":
        return ShiftSpace(int(obj.get("k", 2)))
    if kind == "circle":
        return Circle(int(obj.get("bits", 64)))
    if kind == "product":
        return ProductSpace(space_from_json(_req(obj, "base", where), where + ".base"), int(_req(obj, "n", where)))
    raise UsageError(f"{where}: unknown space kind {kind!r}")


def space_to_json(space: Space) -> dict:
    if isinstance(space, FiniteMetric):
        return {"kind": "finite", "labels": list(space.labels),
                "distances": [[str(d) for d in row] for row in space.table]}
    if isinstance(space, ShiftSpace):
        return {"kind": "shift", "k": space.k}
    if isinstance(space, Circle):
        return {"kind": "circle", "bits": space.bits}
    if isinstance(space, ProductSpace):
        return {"kind": "product", "base": space_to_json(space.base), "n": space.n}
    raise UsageError(f"unknown space {space!r}")


def point_from_json(space: Space, obj):
    if isinstance(space, FiniteMetric):
        return space.point(obj)
    if isinstance(space, ShiftSpace):
        p = ShiftPoint.parse(str(obj))
        if not space.contains(p):
            raise UsageError(f"point {obj!r} uses symbols outside 0..{space.k - 1}")
        return p
    if isinstance(space, Circle):
        return CirclePoint.from_number(obj, space.bits)
    if isinstance(space, ProductSpace):
        if not isinstance(obj, list) or len(obj) != space.n:
            raise UsageError(f"product point needs a list of {space.n} coordinates")
        return ProductPoint(tuple(point_from_json(space.base, c) for c in obj))
    raise UsageError(f"unknown space {space!r}")


def point_to_json(space: Space, p):
    if isinstance(space, FiniteMetric):
        return space.label(p)
    if isinstance(space, ShiftSpace):
        return str(p)
    if isinstance(space, Circle):
        return str(p.as_fraction())
    if isinstance(space, ProductSpace):
        return [point_to_json(space.base, c) for c in p.coords]
    raise UsageError(f"unknown space {space!r}")


def set_from_json(space: Space, obj) -> CompactSet:
    if not isinstance(obj, list) or not obj:
        raise UsageError("a compact set is a non-empty list of points")
    return CompactSet(point_from_json(space, p) for p in obj)


def set_to_json(space: Space, K: CompactSet) -> list:
    return [point_to_json(space, p) for p in K]


def fuzzy_from_json(space: Space, obj) -> StepFuzzySet:
    """``{"levels": [{"alpha": "1/2", "points": [...]}, ...]}``; the level at
    ``alpha`` is the union of all records with ``alpha`` or more."""
    records = _req(obj, "levels", "fuzzy set")
    return from_max_combination((to_fraction(_req(r, "alpha", "level")), set_from_json(space, _req(r, "points", "level"))) for r in records)


def fuzzy_to_json(space: Space, u: StepFuzzySet) -> dict:
    return {"levels": [{"alpha": str(a), "points": set_to_json(space, L)} for a, L in u.pairs()]}


def fuzzy_file(path) -> tuple[Space, StepFuzzySet]:
    """Read ``{"space": ..., "levels": ...}``."""
    obj = load_json(path)
    space = space_from_json(_req(obj, "space", str(path)))
    return space, fuzzy_from_json(space, obj)


def system_from_json(obj, where: str = "system") -> System:
    kind = _req(obj, "kind", where)
    if kind == "finite_map":
        space = space_from_json(_req(obj, "space", where), where + ".space")
        if not isinstance(space, FiniteMetric):
            raise UsageError(f"{where}: finite_map needs a finite space")
        return FiniteMap.from_labels(space, _req(obj, "map", where))
    if kind == "full_shift":
        return FullShift(int(obj.get("k", 2)))
    if kind == "rotation":
        bits = int(obj.get("bits", 64))
        angle = obj.get("angle", "golden")
        if angle == "golden":
            return CircleRotation(bits)
        return CircleRotation.from_number(angle, bits)
    if kind == "product":
        return Product(system_from_json(_req(obj, "base", where), where + ".base"), int(_req(obj, "n", where)))
    raise UsageError(f"{where}: unknown system kind {kind!r}")


def system_to_json(sys: System) -> dict:
    if isinstance(sys, FiniteMap):
        labels = sys.space.labels
        return {"kind": "finite_map", "space": space_to_json(sys.space),
                "map": {labels[i]: labels[j] for i, j in enumerate(sys.table)}}
    if isinstance(sys, FullShift):
        return {"kind": "full_shift", "k": sys.k}
    if isinstance(sys, CircleRotation):
        return {"kind": "rotation", "bits": sys.bits, "angle": str(Fraction(sys.angle, 1 << sys.bits))}
    if isinstance(sys, ProductSystem):
        return {"kind": "product", "base": system_to_json(sys.base), "n": sys.n}
    raise UsageError(f"unknown system {sys!r}")


def to_jsonable(obj):
    """Recursively turn dataclasses, Fractions, tuples and sets into JSON values."""
    if is_dataclass(obj) and not isinstance(obj, type):
        return to_jsonable(asdict(obj))
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(to_jsonable(v) for v in obj)
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    return str(obj)


def dumps(obj) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2)


def load_json(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
