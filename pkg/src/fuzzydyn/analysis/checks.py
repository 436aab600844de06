"""Transitivity, recurrence, point-orbit and Devaney checks at a finite scale."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..dynamics import (
    BasisElement,
    CircleRotation,
    FiniteMap,
    FullShift,
    ProductSystem,
    System,
    hyper_iterate,
    in_ball,
    iterate,
    zadeh_iterate,
)
from ..errors import UsageError
from ..families import AP, FamilySpec, Infinite, ReturnSet, family_name, member
from ..fuzzy import from_max_combination
from ..metrics import membership_map
from ..space import CompactSet, FinitePoint, ProductPoint, ShiftPoint, hausdorff
from .balls import BASE, FUZZY, HYPER, BallSpec, as_ball, contains
from .returns import _component, ell_return_set, point_return_set, return_set, shift_word


@dataclass
class PairVerdict:
    u: str
    v: str
    holds: bool
    certificate: dict
    note: str
    exactness: str
    elements: tuple[int, ...] = ()


@dataclass
class CheckReport:
    check: str
    level: str
    holds: bool
    family: str | None = None
    horizon: int | None = None
    pairs: list[PairVerdict] = field(default_factory=list)
    budgets: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def failing(self) -> list[PairVerdict]:
        return [p for p in self.pairs if not p.holds]


def _balls(level: str, basis) -> list[BallSpec]:
    balls = [as_ball(b) for b in basis]
    if not balls:
        raise UsageError("basis is empty")
    for b in balls:
        if b.level != level:
            raise UsageError(f"basis element {b.name!r} is at level {b.level}, expected {level}")
    return balls


def transitivity_return_sets(sys: System, level: str, basis, H: int, max_chains: int = 100_000) -> dict:
    """Return sets for every ordered pair of basis balls, keyed by names."""
    balls = _balls(level, basis)
    return {
        (U.name, V.name): return_set(sys, U, V, H, max_chains) for U in balls for V in balls
    }


def _from_return_sets(check: str, level: str, fam: FamilySpec, H: int, sets: dict, budgets: dict) -> CheckReport:
    pairs = []
    for (a, b), R in sorted(sets.items()):
        verdict = member(fam, R)
        pairs.append(PairVerdict(a, b, verdict.holds, verdict.certificate, verdict.truncation_note, R.exactness, R.elements))
    return CheckReport(check, level, all(p.holds for p in pairs), family_name(fam), H, pairs, budgets)


def check_A_transitive(
    sys: System, level: str, basis, fam: FamilySpec, H: int,
    return_sets: dict | None = None, max_chains: int = 100_000,
) -> CheckReport:
    """Every ordered pair of basis balls has its return set in ``fam`` (on ``[0, H]``)."""
    sets = return_sets if return_sets is not None else transitivity_return_sets(sys, level, basis, H, max_chains)
    return _from_return_sets("transitive", level, fam, H, sets, {"max_chains": max_chains})


def check_A_recurrent(
    sys: System, level: str, basis, fam: FamilySpec, ell: int, H: int, max_chains: int = 100_000
) -> CheckReport:
    """Every basis ball has its ``ell``-return set in ``fam``."""
    balls = _balls(level, basis)
    sets = {(U.name, U.name): ell_return_set(sys, U, ell, H, max_chains) for U in balls}
    report = _from_return_sets("recurrent", level, fam, H, sets, {"max_chains": max_chains})
    report.extra["ell"] = ell
    return report


def check_point_transitive(sys: System, x, basis, H: int) -> CheckReport:
    """The orbit of ``x`` up to time ``H`` visits every basis ball."""
    balls = _balls(BASE, basis)
    pairs = []
    for U in balls:
        R = point_return_set(sys, x, U, H)
        first = R.elements[0] if R.elements else None
        pairs.append(PairVerdict(str(x), U.name, first is not None, {"first_visit": first},
                                 f"visits searched up to time {H}", R.exactness, R.elements))
    return CheckReport("point_transitive", BASE, all(p.holds for p in pairs), None, H, pairs)


def check_point_recurrent(sys: System, sample: Sequence, basis, H: int, ap_length: int | None = None) -> CheckReport:
    """Each sampled point returns (at some ``1 <= n <= H``) to every basis ball containing it.

    With ``ap_length`` the return times must also contain an AP of that length.
    """
    balls = _balls(BASE, basis)
    pairs = []
    for x in sample:
        for U in balls:
            if not contains(sys, U, x):
                continue
            R = point_return_set(sys, x, U, H)
            later = ReturnSet(H, tuple(n for n in R.elements if n >= 1), R.exactness)
            holds = len(later) > 0
            cert = {"first_return": later.elements[0] if holds else None}
            note = f"returns searched in [1, {H}]"
            if ap_length is not None and holds:
                v = member(AP(ap_length), later)
                holds = v.holds
                cert["ap"] = v.certificate
                note = v.truncation_note
            pairs.append(PairVerdict(str(x), U.name, holds, cert, note, R.exactness, later.elements))
    report = CheckReport("point_recurrent", BASE, all(p.holds for p in pairs), None, H, pairs)
    if ap_length is not None:
        report.extra["ap_length"] = ap_length
    return report


# ---------------------------------------------------------------------------
# Periodic points and Devaney chaos
# ---------------------------------------------------------------------------


def periodic_point_in(sys: System, B: BasisElement, H: int):
    """``(p, period)`` with ``p`` periodic inside the open ball ``B``, or None.

    Full shift: repeat the first symbols that decide membership.  Finite map:
    exhaustive cycle detection.  Rotation: a periodic point exists only if
    some ``n <= H`` rotates by a whole turn, which is checked exactly.
    """
    if isinstance(sys, FullShift):
        word = shift_word(B) or (0,)
        p = ShiftPoint.periodic(word)
        return (p, len(p.cycle)) if in_ball(sys, B, p) else None
    if isinstance(sys, FiniteMap):
        for i in range(len(sys.table)):
            x = FinitePoint(i)
            if not in_ball(sys, B, x):
                continue
            period = _finite_period(sys, i)
            if period:
                return x, period
        return None
    if isinstance(sys, CircleRotation):
        for n in range(1, H + 1):
            if (n * sys.angle) % (1 << sys.bits) == 0:
                return B.center, n
        return None
    if isinstance(sys, ProductSystem):
        found = [periodic_point_in(sys.base, _component(B, i), H) for i in range(sys.n)]
        if any(f is None for f in found):
            return None
        return ProductPoint(tuple(p for p, _ in found)), math.lcm(*(q for _, q in found))
    raise UsageError(f"unknown system {sys!r}")


def _finite_period(sys: FiniteMap, i: int) -> int | None:
    j = sys.table[i]
    for n in range(1, len(sys.table) + 1):
        if j == i:
            return n
        j = sys.table[j]
    return None


def _periodic_compact(sys: System, K: CompactSet, radius: Fraction, H: int):
    """Replace every point by a periodic point of its ball; ``(C, period, images)``."""
    images, periods = {}, []
    for x in K:
        found = periodic_point_in(sys, BasisElement("", x, radius), H)
        if found is None:
            return None
        images[x], q = found
        periods.append(q)
    return CompactSet(images.values()), math.lcm(*periods), images


def check_periodic_density(sys: System, level: str, basis, H: int) -> CheckReport:
    """Every basis ball contains a periodic point of the extended system."""
    balls = _balls(level, basis)
    pairs = []
    for U in balls:
        cert: dict = {}
        holds = False
        if level == BASE:
            found = periodic_point_in(sys, U.element, H)
            if found:
                p, q = found
                holds = iterate(sys, p, q) == p and contains(sys, U, p)
                cert = {"point": str(p), "period": q}
        elif level == HYPER:
            found = _periodic_compact(sys, U.center, U.radius, H)
            if found:
                C, q, _ = found
                holds = hyper_iterate(sys, C, q) == C and contains(sys, U, C)
                cert = {"set": repr(C), "period": q}
        else:
            found = _periodic_compact(sys, U.center.support, U.radius, H)
            if found:
                _, q, images = found
                w = from_max_combination((a, CompactSet([images[x]])) for x, a in membership_map(U.center).items())
                holds = zadeh_iterate(sys, w, q) == w and contains(sys, U, w)
                cert = {"fuzzy": repr(w), "period": q}
        pairs.append(PairVerdict(U.name, U.name, holds, cert, f"period searched up to {H}" if not holds else "", "exact"))
    return CheckReport("periodic_density", level, all(p.holds for p in pairs), None, H, pairs)


def check_devaney(sys: System, level: str, basis, H: int, max_chains: int = 100_000) -> CheckReport:
    """Transitivity (return sets non-empty) together with dense periodic points."""
    trans = check_A_transitive(sys, level, basis, Infinite(1), H, max_chains=max_chains)
    periodic = check_periodic_density(sys, level, basis, H)
    report = CheckReport("devaney", level, trans.holds and periodic.holds, None, H,
                         trans.pairs + periodic.pairs, {"max_chains": max_chains})
    report.extra = {"transitive": trans.holds, "periodic_density": periodic.holds}
    return report
