"""Furstenberg-family predicates evaluated on return sets truncated to ``[0, H]``."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

import numpy as np

from .errors import UsageError
from .space import to_fraction

EXACT = "exact"
SOUND_POSITIVES = "sound_positives"


@dataclass(frozen=True)
class ReturnSet:
    """Times in ``[0, horizon]``.

    ``exactness`` is ``"exact"`` when membership was decided for every ``n``,
    ``"sound_positives"`` when each listed ``n`` has a verified witness but
    unlisted ones were merely not found.
    """

    horizon: int
    elements: tuple[int, ...]
    exactness: str = EXACT

    def __post_init__(self):
        if self.horizon < 0:
            raise UsageError("horizon must be >= 0")
        elems = tuple(sorted(set(int(n) for n in self.elements)))
        if elems and (elems[0] < 0 or elems[-1] > self.horizon):
            raise UsageError(f"elements must lie in [0, {self.horizon}]")
        if self.exactness not in (EXACT, SOUND_POSITIVES):
            raise UsageError(f"unknown exactness {self.exactness!r}")
        object.__setattr__(self, "elements", elems)

    @classmethod
    def full(cls, horizon: int) -> "ReturnSet":
        return cls(horizon, tuple(range(horizon + 1)))

    def __contains__(self, n) -> bool:
        return n in self._set

    @property
    def _set(self) -> frozenset:
        return frozenset(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def indicator(self) -> np.ndarray:
        out = np.zeros(self.horizon + 1, dtype=np.int64)
        out[list(self.elements)] = 1
        return out


@dataclass(frozen=True)
class Infinite:
    min_count: int = 1


@dataclass(frozen=True)
class Cofinite:
    tail_from: int


@dataclass(frozen=True)
class Thick:
    run: int


@dataclass(frozen=True)
class Syndetic:
    gap: int


@dataclass(frozen=True)
class AP:
    length: int


@dataclass(frozen=True)
class UpperBanach:
    threshold: Fraction
    min_window: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "threshold", to_fraction(self.threshold))


FamilySpec = Union[Infinite, Cofinite, Thick, Syndetic, AP, UpperBanach]

_KEYWORDS = {
    "infinite": Infinite,
    "cofinite": Cofinite,
    "thick": Thick,
    "syndetic": Syndetic,
    "ap": AP,
    "ubd": UpperBanach,
}


def parse_family(text: str) -> FamilySpec:
    """Parse ``keyword:param`` such as ``thick:8``, ``syndetic:4``, ``ubd:0.25``."""
    key, _, arg = text.strip().partition(":")
    key = key.lower()
    if key not in _KEYWORDS or not arg:
        raise UsageError(f"bad family {text!r}; expected one of {sorted(_KEYWORDS)} with ':param'")
    if key == "ubd":
        fam = UpperBanach(to_fraction(arg))
    else:
        try:
            fam = _KEYWORDS[key](int(arg))
        except ValueError as exc:
            raise UsageError(f"bad integer parameter in {text!r}") from exc
    _check_params(fam)
    return fam


def family_name(fam: FamilySpec) -> str:
    for key, cls in _KEYWORDS.items():
        if isinstance(fam, cls):
            value = {
                Infinite: "min_count", Cofinite: "tail_from", Thick: "run",
                Syndetic: "gap", AP: "length", UpperBanach: "threshold",
            }[cls]
            return f"{key}:{getattr(fam, value)}"
    raise UsageError(f"unknown family {fam!r}")


def _check_params(fam: FamilySpec) -> None:
    if isinstance(fam, UpperBanach):
        if not 0 < fam.threshold <= 1:
            raise UsageError("density threshold must lie in (0, 1]")
        if fam.min_window is not None and fam.min_window < 1:
            raise UsageError("min_window must be >= 1")
        return
    value = next(iter(vars(fam).values()))
    if value < 1:
        raise UsageError(f"{fam!r}: parameter must be positive")


@dataclass(frozen=True)
class FamilyVerdict:
    holds: bool
    certificate: dict = field(default_factory=dict)
    truncation_note: str = ""


def _note(fam: FamilySpec, R: ReturnSet, extra: str = "") -> str:
    text = f"{family_name(fam)} judged on the window [0, {R.horizon}] only"
    if R.exactness == SOUND_POSITIVES:
        text += "; return set lists verified times only, so a failure means 'not found'"
    return text + (f"; {extra}" if extra else "")


def _runs(elements) -> list[tuple[int, int]]:
    runs = []
    for n in elements:
        if runs and runs[-1][1] == n - 1:
            runs[-1] = (runs[-1][0], n)
        else:
            runs.append((n, n))
    return runs


def longest_ap(elements: tuple[int, ...]) -> tuple[int, int, int]:
    """``(terms, start, difference)`` of a longest AP with positive difference.

    Dynamic program over pairs: ``best[j][d]`` is the length of the longest
    progression ending at ``elements[j]`` with difference ``d``.
    """
    if not elements:
        return (0, 0, 0)
    top = (1, elements[0], 0)
    best: list[dict] = []
    for j, y in enumerate(elements):
        here: dict = {}
        for i in range(j):
            d = y - elements[i]
            here[d] = best[i].get(d, 1) + 1
            if here[d] > top[0]:
                top = (here[d], y - d * (here[d] - 1), d)
        best.append(here)
    return top


def find_ap(elements: tuple[int, ...], terms: int) -> tuple[int, int] | None:
    """``(start, difference)`` of some AP with ``terms`` terms, else None."""
    if terms <= 1:
        return (elements[0], 1) if elements else None
    best: list[dict] = []
    for j, y in enumerate(elements):
        here: dict = {}
        for i in range(j):
            d = y - elements[i]
            here[d] = best[i].get(d, 1) + 1
            if here[d] >= terms:
                return (y - d * (terms - 1), d)
        best.append(here)
    return None


def upper_banach_density(R: ReturnSet, min_window: int) -> Fraction:
    """``max #(R & [m, m+N]) / (N+1)`` over ``N >= min_window`` and ``m + N <= H``."""
    return _ubd(R, min_window)[0]


def _ubd(R: ReturnSet, min_window: int) -> tuple[Fraction, tuple[int, int]]:
    H = R.horizon
    if not 1 <= min_window <= H:
        raise UsageError(f"min_window must lie in [1, {H}]")
    prefix = np.concatenate([[0], np.cumsum(R.indicator())])
    best, where = Fraction(-1), (0, 0)
    for N in range(min_window, H + 1):
        counts = prefix[N + 1:] - prefix[: H + 1 - N]
        m = int(np.argmax(counts))
        value = Fraction(int(counts[m]), N + 1)
        if value > best:
            best, where = value, (m, m + N)
    return best, where


def member(fam: FamilySpec, R: ReturnSet) -> FamilyVerdict:
    _check_params(fam)
    H = R.horizon
    elems = R.elements
    if isinstance(fam, Infinite):
        if fam.min_count > H + 1:
            raise UsageError(f"min_count {fam.min_count} exceeds window size {H + 1}")
        holds = len(elems) >= fam.min_count
        cert = {"count": len(elems), "first": list(elems[: fam.min_count])}
        return FamilyVerdict(holds, cert, _note(fam, R, "'infinite' read as at least min_count times"))
    if isinstance(fam, Cofinite):
        if fam.tail_from > H:
            raise UsageError(f"tail_from {fam.tail_from} exceeds horizon {H}")
        missing = [n for n in range(fam.tail_from, H + 1) if n not in R]
        if missing:
            return FamilyVerdict(False, {"missing": missing[0]}, _note(fam, R))
        return FamilyVerdict(True, {"tail": [fam.tail_from, H]}, _note(fam, R))
    if isinstance(fam, Thick):
        if fam.run > H:
            raise UsageError(f"run {fam.run} exceeds horizon {H}")
        runs = _runs(elems)
        for a, b in runs:
            if b - a >= fam.run:
                return FamilyVerdict(True, {"run": [a, a + fam.run]}, _note(fam, R))
        longest = max(runs, key=lambda r: r[1] - r[0], default=None)
        return FamilyVerdict(False, {"longest_run": list(longest) if longest else None}, _note(fam, R))
    if isinstance(fam, Syndetic):
        if fam.gap > H:
            raise UsageError(f"gap {fam.gap} exceeds horizon {H}")
        # every window [m, m+gap] inside [0, H] must meet R
        prev = -1
        for n in list(elems) + [H + 1]:
            if n - prev - 1 >= fam.gap + 1:
                hole = [prev + 1, n - 1]
                return FamilyVerdict(False, {"empty_window": [hole[0], hole[0] + fam.gap], "hole": hole}, _note(fam, R))
            prev = n
        max_hole = max((b - a - 1 for a, b in zip([-1, *elems], [*elems, H + 1])), default=H + 1)
        return FamilyVerdict(True, {"max_hole": max_hole}, _note(fam, R))
    if isinstance(fam, AP):
        if fam.length > H:
            raise UsageError(f"AP length {fam.length} exceeds horizon {H}")
        found = find_ap(elems, fam.length + 1)
        if found:
            return FamilyVerdict(True, {"start": found[0], "difference": found[1], "terms": fam.length + 1}, _note(fam, R))
        terms, start, diff = longest_ap(elems)
        return FamilyVerdict(False, {"longest": {"terms": terms, "start": start, "difference": diff}}, _note(fam, R))
    if isinstance(fam, UpperBanach):
        window = fam.min_window if fam.min_window is not None else max(1, math.ceil(H / 4))
        density, (lo, hi) = _ubd(R, window)
        cert = {"density": str(density), "window": [lo, hi], "min_window": window}
        return FamilyVerdict(density >= fam.threshold, cert, _note(fam, R, f"limsup read as max over windows of length >= {window}"))
    raise UsageError(f"unknown family {fam!r}")


def validate_certificate(fam: FamilySpec, R: ReturnSet, verdict: FamilyVerdict) -> bool:
    """Recheck a positive verdict's certificate against ``R`` directly."""
    if not verdict.holds:
        return True
    c = verdict.certificate
    if isinstance(fam, Infinite):
        return len(c["first"]) == fam.min_count and all(n in R for n in c["first"])
    if isinstance(fam, Cofinite):
        return all(n in R for n in range(c["tail"][0], R.horizon + 1))
    if isinstance(fam, Thick):
        a, b = c["run"]
        return b - a == fam.run and all(n in R for n in range(a, b + 1))
    if isinstance(fam, Syndetic):
        return all(
            any(n in R for n in range(m, m + fam.gap + 1)) for m in range(R.horizon - fam.gap + 1)
        )
    if isinstance(fam, AP):
        return all(c["start"] + t * c["difference"] in R for t in range(fam.length + 1)) and c["difference"] > 0
    if isinstance(fam, UpperBanach):
        lo, hi = c["window"]
        count = sum(1 for n in range(lo, hi + 1) if n in R)
        return hi - lo >= c["min_window"] and Fraction(count, hi - lo + 1) >= fam.threshold
    return False


def block_witness_check(A_window: ReturnSet, B_window: ReturnSet, F_list: Iterable) -> FamilyVerdict:
    """Every finite ``F`` has a translate ``F + n_F`` inside ``B`` (within its horizon)."""
    translations = []
    for F in F_list:
        F = sorted(set(int(n) for n in F))
        if not F:
            raise UsageError("block sets must be non-empty")
        if any(n not in A_window for n in F):
            raise UsageError(f"block {F} is not contained in the A window")
        found = None
        for shift in range(0, B_window.horizon - F[-1] + 1):
            if all(n + shift in B_window for n in F):
                found = shift
                break
        if found is None:
            return FamilyVerdict(False, {"failing_block": F, "translations": translations},
                                 f"translations searched up to horizon {B_window.horizon}")
        translations.append(found)
    return FamilyVerdict(True, {"translations": translations},
                         f"translations searched up to horizon {B_window.horizon}")
