"""Balls at the three levels (base space, hyperspace, fuzzy space)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..dynamics import BasisElement, System, in_ball
from ..errors import UsageError
from ..fuzzy import StepFuzzySet
from ..metrics import METRICS, fuzzy_distance
from ..space import CompactSet, hausdorff, to_fraction, tolerance

BASE, HYPER, FUZZY = "base", "hyper", "fuzzy"
LEVELS = (BASE, HYPER, FUZZY)


@dataclass(frozen=True)
class BallSpec:
    """An open ball: a basis element, a Hausdorff ball or a fuzzy-metric ball."""

    level: str
    center: object
    radius: Fraction
    metric: str | None = None
    name: str = ""
    element: BasisElement | None = None

    def __post_init__(self):
        if self.level not in LEVELS:
            raise UsageError(f"unknown level {self.level!r}")
        object.__setattr__(self, "radius", to_fraction(self.radius))
        if self.radius <= 0:
            raise UsageError("ball radius must be > 0")
        if self.level == BASE and self.element is None:
            raise UsageError("base balls are built from basis elements")
        if self.level == HYPER and not isinstance(self.center, CompactSet):
            raise UsageError("hyperspace ball needs a CompactSet center")
        if self.level == FUZZY:
            if not isinstance(self.center, StepFuzzySet):
                raise UsageError("fuzzy ball needs a StepFuzzySet center")
            if self.metric not in METRICS:
                raise UsageError(f"fuzzy ball needs a metric in {sorted(METRICS)}")

    @classmethod
    def base(cls, element: BasisElement) -> "BallSpec":
        return cls(BASE, element.center, element.radius, None, element.name, element)

    @classmethod
    def hyper(cls, K: CompactSet, radius, name: str = "") -> "BallSpec":
        return cls(HYPER, K, radius, None, name or f"B_H({K!r},{radius})")

    @classmethod
    def fuzzy(cls, u: StepFuzzySet, radius, metric: str = "endo", name: str = "") -> "BallSpec":
        return cls(FUZZY, u, radius, metric, name or f"B_{metric}({radius})")


def as_ball(obj) -> BallSpec:
    if isinstance(obj, BallSpec):
        return obj
    if isinstance(obj, BasisElement):
        return BallSpec.base(obj)
    raise UsageError(f"not a ball: {obj!r}")


def contains(sys: System, ball: BallSpec, obj, margin=None) -> bool:
    """Ball membership; on circle spaces the arithmetic tolerance is kept as margin."""
    space = sys.space
    margin = tolerance(space) if margin is None else to_fraction(margin)
    if ball.level == BASE:
        return in_ball(sys, ball.element, obj, margin)
    if ball.level == HYPER:
        return hausdorff(space, ball.center, obj) < ball.radius - margin
    return fuzzy_distance(space, ball.metric, ball.center, obj) < ball.radius - margin
