"""Base systems, their hyperspace and Zadeh extensions, products and bases."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .errors import UsageError
from .fuzzy import StepFuzzySet, from_max_combination
from .metrics import membership_map
from .space import (
    Circle,
    CirclePoint,
    CompactSet,
    FiniteMetric,
    FinitePoint,
    ProductPoint,
    ProductSpace,
    ShiftPoint,
    ShiftSpace,
    _dist,
    to_fraction,
)


def golden_angle(bits: int) -> int:
    """``(sqrt(5) - 1) / 2`` truncated to ``bits`` binary digits, as an integer."""
    return (math.isqrt(5 << (2 * bits)) - (1 << bits)) // 2


@dataclass(frozen=True)
class FiniteMap:
    space: FiniteMetric
    table: tuple[int, ...]

    def __post_init__(self):
        table = tuple(int(t) for t in self.table)
        n = len(self.space.labels)
        if len(table) != n or any(not 0 <= t < n for t in table):
            raise UsageError(f"transition table must map each of the {n} points into the space")
        object.__setattr__(self, "table", table)

    @classmethod
    def from_labels(cls, space: FiniteMetric, mapping: dict) -> "FiniteMap":
        missing = set(space.labels) - set(mapping)
        if missing:
            raise UsageError(f"transition table misses {sorted(missing)}")
        return cls(space, tuple(space.labels.index(mapping[lab]) for lab in space.labels))


@dataclass(frozen=True)
class FullShift:
    k: int = 2

    @property
    def space(self) -> ShiftSpace:
        return ShiftSpace(self.k)


@dataclass(frozen=True)
class CircleRotation:
    bits: int = 64
    angle: int | None = None

    def __post_init__(self):
        Circle(self.bits)
        angle = golden_angle(self.bits) if self.angle is None else int(self.angle)
        object.__setattr__(self, "angle", angle % (1 << self.bits))

    @classmethod
    def from_number(cls, angle, bits: int = 64) -> "CircleRotation":
        return cls(bits, CirclePoint.from_number(angle, bits).value)

    @property
    def space(self) -> Circle:
        return Circle(self.bits)


@dataclass(frozen=True)
class ProductSystem:
    base: "System"
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise UsageError("use Product() so that a 1-fold product is the base itself")

    @property
    def space(self) -> ProductSpace:
        return ProductSpace(self.base.space, self.n)


System = Union[FiniteMap, FullShift, CircleRotation, ProductSystem]


def Product(base: System, n: int) -> System:
    """The ``n``-fold direct product; ``Product(base, 1)`` is ``base``."""
    if n < 1:
        raise UsageError("product needs n >= 1")
    return base if n == 1 else ProductSystem(base, n)


def step(sys: System, p):
    return iterate(sys, p, 1)


def iterate(sys: System, p, n: int):
    if n < 0:
        raise UsageError("iteration count must be >= 0")
    if not sys.space.contains(p):
        raise UsageError(f"point {p!r} is not in the phase space of {sys!r}")
    return _iterate(sys, p, n)


def _iterate(sys: System, p, n: int):
    if isinstance(sys, FiniteMap):
        i = p.index
        for _ in range(n):
            i = sys.table[i]
        return FinitePoint(i)
    if isinstance(sys, FullShift):
        return p.shifted(n)
    if isinstance(sys, CircleRotation):
        return CirclePoint(p.value + n * sys.angle, sys.bits)
    if isinstance(sys, ProductSystem):
        return ProductPoint(tuple(_iterate(sys.base, c, n) for c in p.coords))
    raise UsageError(f"unknown system {sys!r}")


def orbit(sys: System, p, n: int) -> list:
    """``[p, f(p), ..., f^n(p)]``."""
    out = [p]
    for _ in range(n):
        out.append(_iterate(sys, out[-1], 1))
    return out


def power_map(sys: FiniteMap, n: int) -> FiniteMap:
    """The table of ``f^n`` composed directly."""
    table = list(range(len(sys.table)))
    for _ in range(n):
        table = [sys.table[t] for t in table]
    return FiniteMap(sys.space, tuple(table))


def hyper_image(sys: System, K: CompactSet) -> CompactSet:
    return CompactSet(step(sys, p) for p in K)


def hyper_iterate(sys: System, K: CompactSet, n: int) -> CompactSet:
    return CompactSet(iterate(sys, p, n) for p in K)


def zadeh_image(sys: System, u: StepFuzzySet) -> StepFuzzySet:
    """Level-wise image: the alpha-level of the image is the image of the alpha-level."""
    return StepFuzzySet(u.levels, tuple(hyper_image(sys, L) for L in u.sets))


def zadeh_iterate(sys: System, u: StepFuzzySet, n: int) -> StepFuzzySet:
    if n < 0:
        raise UsageError("iteration count must be >= 0")
    for _ in range(n):
        u = zadeh_image(sys, u)
    return u


def zadeh_pointwise(sys: FiniteMap, u: StepFuzzySet) -> StepFuzzySet:
    """Image by ``f(u)(y) = sup { u(x) : f(x) = y }``, computed point by point."""
    image: dict = {}
    for x, ux in membership_map(u).items():
        y = FinitePoint(sys.table[x.index])
        image[y] = max(image.get(y, Fraction(0)), ux)
    return from_max_combination((a, CompactSet([y])) for y, a in image.items())


# ---------------------------------------------------------------------------
# Open bases
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BasisElement:
    """The open ball of ``radius`` about ``center``.

    Shift cylinders ``[w]`` carry their ``word``: the open ball of radius
    ``2**-(len(w) - 1)`` around any extension of ``w`` is exactly ``[w]``.
    Product balls carry their factor balls in ``parts``.
    """

    name: str
    center: object
    radius: Fraction
    word: tuple[int, ...] | None = None
    parts: tuple["BasisElement", ...] | None = field(default=None, repr=False)


def cylinder(word) -> BasisElement:
    word = tuple(int(s) for s in word)
    if not word:
        raise UsageError("cylinder word must be non-empty")
    return BasisElement(
        "[" + "".join(map(str, word)) + "]",
        ShiftPoint(word, (0,)),
        Fraction(1, 1 << (len(word) - 1)),
        word,
    )


def arc(k: int, resolution: int, bits: int) -> BasisElement:
    """Open arc of width ``1/resolution`` centred at ``k/resolution``."""
    center = CirclePoint.from_number(Fraction(k, resolution), bits)
    return BasisElement(f"arc{k}/{resolution}", center, Fraction(1, 2 * resolution))


def basis(sys: System, resolution: int) -> list[BasisElement]:
    """A finite open cover at the given resolution.

    FullShift: cylinders of every word length ``1..resolution``;
    CircleRotation: ``resolution`` arcs; FiniteMap: singleton balls;
    products: products of factor balls.
    """
    if resolution < 1:
        raise UsageError("resolution must be >= 1")
    if isinstance(sys, FullShift):
        return [
            cylinder(w)
            for length in range(1, resolution + 1)
            for w in itertools.product(range(sys.k), repeat=length)
        ]
    if isinstance(sys, CircleRotation):
        return [arc(k, resolution, sys.bits) for k in range(resolution)]
    if isinstance(sys, FiniteMap):
        space = sys.space
        out = []
        for p in space.points():
            others = [space.table[p.index][q.index] for q in space.points() if q != p]
            out.append(BasisElement(f"{{{space.label(p)}}}", p, min(others, default=Fraction(1))))
        return out
    if isinstance(sys, ProductSystem):
        factors = basis(sys.base, resolution)
        return [
            BasisElement(
                "x".join(e.name for e in combo),
                ProductPoint(tuple(e.center for e in combo)),
                min(e.radius for e in combo),
                None,
                combo,
            )
            for combo in itertools.product(factors, repeat=sys.n)
        ]
    raise UsageError(f"unknown system {sys!r}")


def in_ball(sys_or_space, B: BasisElement, p, margin=0) -> bool:
    """Open-ball membership ``d(center, p) < radius - margin``."""
    space = getattr(sys_or_space, "space", sys_or_space)
    margin = to_fraction(margin)
    if B.parts is not None:
        return all(in_ball(space.base, part, c, margin) for part, c in zip(B.parts, p.coords))
    if B.word is not None:
        return p.word(len(B.word)) == B.word
    return _dist(space, B.center, p) < B.radius - margin
