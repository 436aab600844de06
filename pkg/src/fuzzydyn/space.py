"""Representable metric spaces, finite compact sets and the Hausdorff distance.

Three kinds of base space are supported, plus finite products of them:

* ``FiniteMetric`` -- finitely many labelled points with an explicit distance table.
* ``ShiftSpace`` -- the one-sided full shift on ``k`` symbols.  Points are
  eventually periodic sequences ``prefix + cycle + cycle + ...`` which are dense
  in the shift and on which equality, distance and the shift map are exact.
* ``Circle`` -- the circle ``[0, 1)`` with the arc metric, points stored as
  ``P``-bit fixed-point fractions.

All distances are returned as :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

from .errors import UsageError

Number = Union[int, float, Fraction, str]


def to_fraction(x: Number) -> Fraction:
    """Convert user input to an exact rational.

    Floats go through their shortest ``repr`` so ``0.1`` becomes ``1/10``.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise UsageError(f"not a number: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise UsageError(f"not a finite number: {x!r}")
        return Fraction(repr(x))
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError as exc:
            raise UsageError(f"cannot parse number {x!r}") from exc
    raise UsageError(f"not a number: {x!r}")


# ---------------------------------------------------------------------------
# Points
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class FinitePoint:
    index: int

    def key(self):
        return (self.index,)


def _primitive_root(word: tuple[int, ...]) -> tuple[int, ...]:
    n = len(word)
    for p in range(1, n + 1):
        if n % p == 0 and word[:p] * (n // p) == word:
            return word[:p]
    return word


@dataclass(frozen=True)
class ShiftPoint:
    """The eventually periodic sequence ``prefix . cycle^inf`` in canonical form.

    Canonical means the cycle is primitive and the prefix is as short as
    possible, so two points are equal as sequences iff they are equal as
    dataclasses.
    """

    prefix: tuple[int, ...]
    cycle: tuple[int, ...]

    def __post_init__(self):
        prefix = tuple(int(s) for s in self.prefix)
        cycle = tuple(int(s) for s in self.cycle)
        if not cycle:
            raise UsageError("shift point needs a non-empty cycle")
        cycle = _primitive_root(cycle)
        while prefix and prefix[-1] == cycle[-1]:
            prefix = prefix[:-1]
            cycle = (cycle[-1],) + cycle[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "cycle", cycle)

    @classmethod
    def parse(cls, text: str) -> "ShiftPoint":
        """Parse ``"0001(0)"`` style notation (prefix, then cycle in brackets)."""
        text = text.strip()
        if not text.endswith(")") or "(" not in text:
            raise UsageError(f"shift point must look like 'prefix(cycle)': {text!r}")
        head, _, tail = text[:-1].partition("(")
        try:
            return cls(tuple(int(c) for c in head), tuple(int(c) for c in tail))
        except ValueError as exc:
            raise UsageError(f"bad symbol in {text!r}") from exc

    @classmethod
    def periodic(cls, word: Sequence[int]) -> "ShiftPoint":
        return cls((), tuple(word))

    def symbol(self, i: int) -> int:
        n = len(self.prefix)
        if i < n:
            return self.prefix[i]
        return self.cycle[(i - n) % len(self.cycle)]

    def word(self, length: int) -> tuple[int, ...]:
        return tuple(self.symbol(i) for i in range(length))

    def shifted(self, n: int) -> "ShiftPoint":
        """The sequence with its first ``n`` symbols dropped."""
        if n <= len(self.prefix):
            return ShiftPoint(self.prefix[n:], self.cycle)
        r = (n - len(self.prefix)) % len(self.cycle)
        return ShiftPoint((), self.cycle[r:] + self.cycle[:r])

    @property
    def is_periodic(self) -> bool:
        return not self.prefix

    def key(self):
        return (self.prefix, self.cycle)

    def __str__(self) -> str:
        return "".join(map(str, self.prefix)) + "(" + "".join(map(str, self.cycle)) + ")"


@dataclass(frozen=True, order=True)
class CirclePoint:
    """The point ``value / 2**bits`` of the circle ``[0, 1)``."""

    value: int
    bits: int

    def __post_init__(self):
        object.__setattr__(self, "value", int(self.value) % (1 << self.bits))

    @classmethod
    def from_number(cls, x: Number, bits: int) -> "CirclePoint":
        frac = to_fraction(x) % 1
        return cls(round(frac * (1 << bits)), bits)

    def as_fraction(self) -> Fraction:
        return Fraction(self.value, 1 << self.bits)

    def key(self):
        return (self.value,)

    def __str__(self) -> str:
        return f"{float(self.as_fraction()):.6f}"


@dataclass(frozen=True)
class ProductPoint:
    coords: tuple

    def key(self):
        return tuple(c.key() for c in self.coords)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


Point = Union[FinitePoint, ShiftPoint, CirclePoint, ProductPoint]


# ---------------------------------------------------------------------------
# Spaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteMetric:
    labels: tuple[str, ...]
    table: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        labels = tuple(str(lab) for lab in self.labels)
        n = len(labels)
        if n == 0:
            raise UsageError("finite metric space needs at least one point")
        if len(set(labels)) != n:
            raise UsageError("point labels must be distinct")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise UsageError(f"distance table must be {n}x{n}")
        table = tuple(tuple(to_fraction(d) for d in row) for row in self.table)
        for i in range(n):
            if table[i][i] != 0:
                raise UsageError(f"d({labels[i]},{labels[i]}) must be 0")
            for j in range(n):
                if table[i][j] != table[j][i]:
                    raise UsageError(f"distance table not symmetric at ({labels[i]},{labels[j]})")
                if i != j and table[i][j] <= 0:
                    raise UsageError(f"distinct points {labels[i]},{labels[j]} at distance <= 0")
        for i in range(n):
            for j in range(n):
                for m in range(n):
                    if table[i][m] > table[i][j] + table[j][m]:
                        raise UsageError(
                            f"triangle inequality fails for ({labels[i]},{labels[j]},{labels[m]})"
                        )
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "table", table)

    @classmethod
    def from_coordinates(cls, coords, labels=None, scale: Number = 1) -> "FiniteMetric":
        """Chebyshev (max-norm) metric on integer coordinates, divided by ``scale``."""
        coords = [tuple(int(c) for c in pt) for pt in coords]
        scale = to_fraction(scale)
        if labels is None:
            labels = [f"p{i}" for i in range(len(coords))]
        table = [
            [Fraction(max((abs(a - b) for a, b in zip(p, q)), default=0)) / scale for q in coords]
            for p in coords
        ]
        return cls(tuple(labels), tuple(tuple(row) for row in table))

    def point(self, label: str) -> FinitePoint:
        try:
            return FinitePoint(self.labels.index(str(label)))
        except ValueError as exc:
            raise UsageError(f"unknown point label {label!r}") from exc

    def points(self) -> list[FinitePoint]:
        return [FinitePoint(i) for i in range(len(self.labels))]

    def contains(self, p) -> bool:
        return isinstance(p, FinitePoint) and 0 <= p.index < len(self.labels)

    def label(self, p: FinitePoint) -> str:
        return self.labels[p.index]


@dataclass(frozen=True)
class ShiftSpace:
    k: int = 2

    def __post_init__(self):
        if int(self.k) < 2:
            raise UsageError("shift alphabet size must be >= 2")

    def contains(self, p) -> bool:
        return isinstance(p, ShiftPoint) and all(
            0 <= s < self.k for s in p.prefix + p.cycle
        )


@dataclass(frozen=True)
class Circle:
    bits: int = 64

    def __post_init__(self):
        if int(self.bits) < 32:
            raise UsageError("circle precision must be at least 32 bits")

    @property
    def modulus(self) -> int:
        return 1 << self.bits

    @property
    def tolerance(self) -> Fraction:
        """Arithmetic tolerance attached to every circle-based verdict."""
        return Fraction(4, self.modulus)

    def contains(self, p) -> bool:
        return isinstance(p, CirclePoint) and p.bits == self.bits


@dataclass(frozen=True)
class ProductSpace:
    """``base`` to the power ``n`` with the max metric."""

    base: "Space"
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise UsageError("product needs n >= 1")

    def contains(self, p) -> bool:
        return (
            isinstance(p, ProductPoint)
            and len(p.coords) == self.n
            and all(self.base.contains(c) for c in p.coords)
        )


Space = Union[FiniteMetric, ShiftSpace, Circle, ProductSpace]


def tolerance(space: Space) -> Fraction:
    """Zero for exact spaces, ``2**(2-P)`` for anything built on a circle."""
    if isinstance(space, Circle):
        return space.tolerance
    if isinstance(space, ProductSpace):
        return tolerance(space.base)
    return Fraction(0)


# ---------------------------------------------------------------------------
# Distance
# ---------------------------------------------------------------------------


def first_difference(x: ShiftPoint, y: ShiftPoint) -> int | None:
    """Index of the first symbol where ``x`` and ``y`` differ, ``None`` if equal.

    Past ``max(prefix lengths) + lcm(cycle lengths)`` both sequences repeat
    with a common period, so agreement up to there means equality.
    """
    if x == y:
        return None
    bound = max(len(x.prefix), len(y.prefix)) + math.lcm(len(x.cycle), len(y.cycle))
    for i in range(bound):
        if x.symbol(i) != y.symbol(i):
            return i
    return None


def _check(space: Space, p) -> None:
    if not space.contains(p):
        raise UsageError(f"point {p!r} does not belong to {space!r}")


def distance(space: Space, p: Point, q: Point) -> Fraction:
    _check(space, p)
    _check(space, q)
    return _dist(space, p, q)


def _dist(space: Space, p, q) -> Fraction:
    if isinstance(space, FiniteMetric):
        return space.table[p.index][q.index]
    if isinstance(space, ShiftSpace):
        m = first_difference(p, q)
        return Fraction(0) if m is None else Fraction(1, 1 << m)
    if isinstance(space, Circle):
        diff = (p.value - q.value) % space.modulus
        return Fraction(min(diff, space.modulus - diff), space.modulus)
    if isinstance(space, ProductSpace):
        return max(_dist(space.base, a, b) for a, b in zip(p.coords, q.coords))
    raise UsageError(f"unknown space {space!r}")


# ---------------------------------------------------------------------------
# Compact sets
# ---------------------------------------------------------------------------


class CompactSet:
    """A non-empty finite set of points, deduplicated and canonically ordered."""

    __slots__ = ("points", "_members")

    def __init__(self, points: Iterable[Point]):
        members = frozenset(points)
        if not members:
            raise UsageError("compact set must be non-empty")
        kinds = {type(p) for p in members}
        if len(kinds) != 1:
            raise UsageError("compact set mixes points of different kinds")
        self.points = tuple(sorted(members, key=lambda p: p.key()))
        self._members = members

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, p) -> bool:
        return p in self._members

    def __eq__(self, other) -> bool:
        return isinstance(other, CompactSet) and self.points == other.points

    def __hash__(self) -> int:
        return hash(self.points)

    def __or__(self, other: "CompactSet") -> "CompactSet":
        return CompactSet(self._members | other._members)

    def __le__(self, other: "CompactSet") -> bool:
        return self._members <= other._members

    def __repr__(self) -> str:
        return "{" + ", ".join(str(p) for p in self.points) + "}"


def _directed(space: Space, A: CompactSet, B: CompactSet) -> Fraction:
    return max(min(_dist(space, a, b) for b in B) for a in A)


def _check_set(space: Space, A: CompactSet) -> None:
    for p in A:
        _check(space, p)


def hausdorff(space: Space, A: CompactSet, B: CompactSet) -> Fraction:
    """Exact Hausdorff distance between two finite point sets."""
    _check_set(space, A)
    _check_set(space, B)
    if A == B:
        return Fraction(0)
    return max(_directed(space, A, B), _directed(space, B, A))


def within_thickening(space: Space, A: CompactSet, B: CompactSet, eps: Number) -> bool:
    """``A`` is contained in the closed ``eps``-thickening of ``B``."""
    eps = to_fraction(eps)
    if eps < 0:
        raise UsageError("thickening radius must be >= 0")
    _check_set(space, A)
    _check_set(space, B)
    return all(any(_dist(space, a, b) <= eps for b in B) for a in A)


def random_point(space: Space, rng) -> Point:
    """A random representable point; ``rng`` is a :class:`random.Random`."""
    if isinstance(space, FiniteMetric):
        return FinitePoint(rng.randrange(len(space.labels)))
    if isinstance(space, ShiftSpace):
        prefix = tuple(rng.randrange(space.k) for _ in range(rng.randrange(4)))
        cycle = tuple(rng.randrange(space.k) for _ in range(1 + rng.randrange(3)))
        return ShiftPoint(prefix, cycle)
    if isinstance(space, Circle):
        return CirclePoint(rng.getrandbits(space.bits), space.bits)
    if isinstance(space, ProductSpace):
        return ProductPoint(tuple(random_point(space.base, rng) for _ in range(space.n)))
    raise UsageError(f"unknown space {space!r}")
