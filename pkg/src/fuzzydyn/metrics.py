"""The four fuzzy metrics on step fuzzy sets, plus brute-force oracles.

Exact routes (``d_inf``, ``d_skorokhod``, ``d_sendo``, ``d_endo``) return
:class:`fractions.Fraction`.  The oracles (``skorokhod_oracle``,
``endo_oracle``, ``sendo_oracle``) take an unrelated numerical route in numpy
and return floats; they exist only to cross-check the exact routes.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import BudgetError, UsageError
from .fuzzy import StepFuzzySet, alpha_level
from .space import CompactSet, Space, _check_set, _dist, hausdorff

ZERO = Fraction(0)


def _check_pair(space: Space, u: StepFuzzySet, v: StepFuzzySet) -> None:
    _check_set(space, u.support)
    _check_set(space, v.support)


def membership_map(u: StepFuzzySet) -> dict:
    """``x -> u(x)`` for every ``x`` in the support."""
    out = {}
    for a, L in u.pairs():
        for p in L:
            out[p] = a
    return out


# ---------------------------------------------------------------------------
# Supremum metric
# ---------------------------------------------------------------------------


def d_inf(space: Space, u: StepFuzzySet, v: StepFuzzySet) -> Fraction:
    """``sup_alpha d_H(u_alpha, v_alpha)``, evaluated at 0 and every breakpoint."""
    _check_pair(space, u, v)
    alphas = sorted({ZERO, *u.levels, *v.levels})
    return max(hausdorff(space, alpha_level(u, a), alpha_level(v, a)) for a in alphas)


# ---------------------------------------------------------------------------
# Skorokhod metric
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SkorokhodAlignment:
    """Where the reparameterization sends each breakpoint of ``v``.

    ``images[j]`` is the image of ``v.levels[j]``.  ``attained`` is False when
    the optimum is only a limit: two images coincide (a level of ``v`` is
    squeezed to nothing) or the first image is 0.
    """

    epsilon: Fraction
    levels: tuple[Fraction, ...]
    images: tuple[Fraction, ...]
    attained: bool

    @property
    def breakpoint_images(self) -> dict:
        return dict(zip(self.levels, self.images))


def _clip(x: Fraction, lo: Fraction, hi: Fraction) -> Fraction:
    return min(max(x, lo), hi)


def d_skorokhod(space: Space, u: StepFuzzySet, v: StepFuzzySet) -> tuple[Fraction, SkorokhodAlignment]:
    """Exact Skorokhod distance between step fuzzy sets.

    Sweeping alpha upward, the pair of active level indices ``(i, j)`` walks a
    monotone lattice path from the first pair to the last.  Crossing a
    breakpoint of ``u`` alone is free; crossing the image of ``b_j`` alone
    while inside ``(a_{i-1}, a_i)`` costs ``dist(b_j, [a_{i-1}, a_i])``;
    crossing both at once pins the image to ``a_i``.  Every visited pair costs
    ``d_H(U_i, V_j)``.  The answer is the bottleneck (min-max) path cost.
    """
    _check_pair(space, u, v)
    a = (ZERO,) + u.levels
    b = (ZERO,) + v.levels
    M, N = len(u.levels), len(v.levels)
    D = [[hausdorff(space, U, V) for V in v.sets] for U in u.sets]
    INF = None
    best = [[INF] * N for _ in range(M)]
    move = [[None] * N for _ in range(M)]
    best[0][0] = D[0][0]

    def relax(i, j, cost, how):
        if best[i][j] is INF or cost < best[i][j]:
            best[i][j] = cost
            move[i][j] = how

    # Process in order of i + j so every predecessor is final before use.
    for s in range(M + N - 1):
        for i in range(max(0, s - N + 1), min(M, s + 1)):
            j = s - i
            cur = best[i][j]
            if cur is INF:
                continue
            # indices below are 0-based: U_i lives on (a[i], a[i+1]]
            if i + 1 < M and j + 1 < N:
                c = max(cur, abs(b[j + 1] - a[i + 1]), D[i + 1][j + 1])
                relax(i + 1, j + 1, c, "diag")
            if j + 1 < N:
                gap = b[j + 1] - _clip(b[j + 1], a[i], a[i + 1])
                c = max(cur, abs(gap), D[i][j + 1])
                relax(i, j + 1, c, "up")
            if i + 1 < M:
                c = max(cur, D[i + 1][j])
                relax(i + 1, j, c, "right")
    eps = best[M - 1][N - 1]

    images = [None] * N
    images[N - 1] = Fraction(1)
    i, j = M - 1, N - 1
    while (i, j) != (0, 0):
        how = move[i][j]
        if how == "diag":
            images[j - 1] = a[i]
            i, j = i - 1, j - 1
        elif how == "up":
            images[j - 1] = _clip(b[j], a[i], a[i + 1])
            j -= 1
        else:
            i -= 1
    attained = images[0] > 0 and all(x < y for x, y in zip(images, images[1:]))
    return eps, SkorokhodAlignment(eps, v.levels, tuple(images), attained)


def relabel(v: StepFuzzySet, images) -> StepFuzzySet:
    """``xi o v`` for a strictly increasing ``xi`` sending ``v.levels[j]`` to ``images[j]``."""
    return StepFuzzySet(tuple(images), v.sets)


def skorokhod_objective(space: Space, u: StepFuzzySet, v: StepFuzzySet, images) -> Fraction:
    """``max(sup|xi - id|, d_inf(u, xi o v))`` for a piecewise-linear ``xi``."""
    images = tuple(Fraction(c) for c in images)
    shift = max(abs(c - b) for c, b in zip(images, v.levels))
    return max(shift, d_inf(space, u, relabel(v, images)))


def _float_table(space: Space, A, B) -> np.ndarray:
    return np.array([[float(_dist(space, p, q)) for q in B] for p in A], dtype=float)


def _hausdorff_float(space: Space, A, B) -> float:
    T = _float_table(space, A, B)
    return float(max(T.min(axis=1).max(), T.min(axis=0).max()))


def skorokhod_oracle(
    space: Space, u: StepFuzzySet, v: StepFuzzySet, grid: int = 64,
    budget: int = 2_000_000, extra=(),
) -> float:
    """Brute force over grid placements of ``v``'s breakpoints (top pinned at 1).

    Images of the lower breakpoints range over strictly increasing tuples in
    ``{1/grid, ..., (grid-1)/grid}`` together with any ``extra`` values in
    ``(0, 1)``; the objective of each placement is evaluated at every alpha
    where an active level could change.
    """
    if grid < 16:
        raise UsageError("grid must be >= 16")
    _check_pair(space, u, v)
    N = len(v.levels)
    values = np.union1d(np.arange(1, grid) / grid, [float(x) for x in extra if 0 < x < 1])
    count = math.comb(len(values), N - 1)
    if count > budget:
        raise BudgetError(f"{count} placements exceed budget {budget}")
    D = np.array([[_hausdorff_float(space, U, V) for V in v.sets] for U in u.sets])
    a = np.array([float(x) for x in u.levels])
    b = np.array([float(x) for x in v.levels])
    if N == 1:
        combos = np.zeros((1, 0))
    else:
        combos = values[np.array(list(itertools.combinations(range(len(values)), N - 1)))]
    C = np.hstack([combos, np.ones((len(combos), 1))])
    alphas = np.union1d(np.append(values, 1.0), a)
    i_idx = np.searchsorted(a, alphas, side="left")
    # j(alpha) = number of images strictly below alpha
    j_idx = (C[:, None, :] < alphas[None, :, None]).sum(axis=2)
    level_cost = D[i_idx[None, :], j_idx].max(axis=1)
    shift_cost = np.abs(C - b[None, :]).max(axis=1)
    return float(np.maximum(level_cost, shift_cost).min())


# ---------------------------------------------------------------------------
# Endograph and sendograph metrics
# ---------------------------------------------------------------------------


def _pos(t: Fraction) -> Fraction:
    return t if t > 0 else ZERO


def _directed_graph(space: Space, mu: dict, mv: dict, capped: bool) -> Fraction:
    worst = ZERO
    for x, ux in mu.items():
        best = min(max(_dist(space, x, y), _pos(ux - vy)) for y, vy in mv.items())
        if capped:
            best = min(best, ux)
        worst = max(worst, best)
    return worst


def d_endo(space: Space, u: StepFuzzySet, v: StepFuzzySet) -> Fraction:
    """Hausdorff distance of endographs under ``max(d(x, y), |alpha - beta|)``.

    The endograph is the union of the columns ``{x} x [0, u(x)]`` and the
    floor ``X x {0}``.  From ``(x, alpha)`` the nearest point of a column over
    ``y`` is at ``max(d(x, y), (alpha - v(y))^+)``, largest at ``alpha =
    u(x)``; the floor point ``(x, 0)`` caps the distance at ``u(x)``.
    """
    _check_pair(space, u, v)
    mu, mv = membership_map(u), membership_map(v)
    return max(_directed_graph(space, mu, mv, True), _directed_graph(space, mv, mu, True))


def d_sendo(space: Space, u: StepFuzzySet, v: StepFuzzySet) -> Fraction:
    """Same as :func:`d_endo` but graphs contain only the support columns."""
    _check_pair(space, u, v)
    mu, mv = membership_map(u), membership_map(v)
    return max(_directed_graph(space, mu, mv, False), _directed_graph(space, mv, mu, False))


def _graph_samples(mu: dict, resolution: int, floor_points) -> tuple[list, np.ndarray]:
    pts, heights = [], []
    steps = np.arange(resolution) / (resolution - 1)
    for x, ux in mu.items():
        pts.extend([x] * resolution)
        heights.extend(steps * float(ux))
    for x in floor_points:
        pts.append(x)
        heights.append(0.0)
    return pts, np.array(heights)


def _graph_oracle(space, u, v, resolution, with_floor):
    if resolution < 8:
        raise UsageError("resolution must be >= 8")
    _check_pair(space, u, v)
    mu, mv = membership_map(u), membership_map(v)
    floor = sorted(set(mu) | set(mv), key=lambda p: p.key()) if with_floor else []
    pa, ha = _graph_samples(mu, resolution, floor)
    pb, hb = _graph_samples(mv, resolution, floor)
    points = sorted(set(pa) | set(pb), key=lambda p: p.key())
    index = {p: k for k, p in enumerate(points)}
    T = _float_table(space, points, points)
    ia = np.array([index[p] for p in pa])
    ib = np.array([index[p] for p in pb])
    dist = np.maximum(T[np.ix_(ia, ib)], np.abs(ha[:, None] - hb[None, :]))
    return float(max(dist.min(axis=1).max(), dist.min(axis=0).max()))


def endo_oracle(space: Space, u: StepFuzzySet, v: StepFuzzySet, resolution: int = 256) -> float:
    """Sampled endographs (columns plus floor points) compared under the max metric."""
    return _graph_oracle(space, u, v, resolution, True)


def sendo_oracle(space: Space, u: StepFuzzySet, v: StepFuzzySet, resolution: int = 256) -> float:
    """Sampled sendographs (support columns only) compared under the max metric."""
    return _graph_oracle(space, u, v, resolution, False)


METRICS = {
    "inf": d_inf,
    "skorokhod": lambda space, u, v: d_skorokhod(space, u, v)[0],
    "sendo": d_sendo,
    "endo": d_endo,
}


def fuzzy_distance(space: Space, name: str, u: StepFuzzySet, v: StepFuzzySet) -> Fraction:
    try:
        fn = METRICS[name]
    except KeyError as exc:
        raise UsageError(f"unknown metric {name!r}; choose from {sorted(METRICS)}") from exc
    return fn(space, u, v)
