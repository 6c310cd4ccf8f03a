"""Baseline exact-diameter routines: all-pairs scan and convex-hull pipelines.

These serve both as correctness oracles for the pruning algorithm and as
benchmark comparators.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .geom import GeometryError, as_pointset, sqdist


@dataclass
class Stats:
    distance_evals: int = 0
    hull_size: int = 0
    survivors: int = 0
    stage_flags: dict[str, bool] = field(default_factory=dict)
    stage_evals: dict[str, int] = field(default_factory=dict)
    # (stage, region, size after reduce)
    region_log: list[tuple[str, int, int]] = field(default_factory=list)
    # (region_i, region_j, d_M_sq at skip time, bound_sq)
    skipped_pairs: list[tuple[int, int, float, float]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "distance_evals": self.distance_evals,
            "hull_size": self.hull_size,
            "survivors": self.survivors,
            "stage_flags": dict(self.stage_flags),
            "stage_evals": dict(self.stage_evals),
            "region_log": [list(r) for r in self.region_log],
            "skipped_pairs": [list(s) for s in self.skipped_pairs],
        }


@dataclass
class DiameterResult:
    dist_sq: float
    pair: tuple[int, int]
    stats: Stats = field(default_factory=Stats)

    @property
    def dist(self) -> float:
        return math.sqrt(self.dist_sq)

    def to_dict(self) -> dict:
        return {
            "dist": self.dist,
            "dist_sq": self.dist_sq,
            "pair": list(self.pair),
            "stats": self.stats.to_dict(),
        }


def _ordered(i: int, j: int) -> tuple[int, int]:
    return (int(i), int(j)) if i < j else (int(j), int(i))


def _require_pair_input(points) -> np.ndarray:
    pts = as_pointset(points)
    if len(pts) < 2:
        raise GeometryError("need at least two points")
    return pts


@njit(cache=True, inline="always")
def _col_sqdist(cols, i, j):
    s = 0.0
    for m in range(cols.shape[0]):
        d = cols[m, i] - cols[m, j]
        s += d * d
    return s


@njit(cache=True)
def _row_max(cols, i):
    # Same sqdist expression as everywhere else; four accumulators only
    # reorder the max, which is exact.
    k, n = cols.shape
    r0 = -1.0
    r1 = -1.0
    r2 = -1.0
    r3 = -1.0
    j = i + 1
    x = cols[0]
    y = cols[1]
    xi = x[i]
    yi = y[i]
    if k == 2:
        while j + 3 < n:
            dx = xi - x[j]
            dy = yi - y[j]
            r0 = max(r0, dx * dx + dy * dy)
            dx = xi - x[j + 1]
            dy = yi - y[j + 1]
            r1 = max(r1, dx * dx + dy * dy)
            dx = xi - x[j + 2]
            dy = yi - y[j + 2]
            r2 = max(r2, dx * dx + dy * dy)
            dx = xi - x[j + 3]
            dy = yi - y[j + 3]
            r3 = max(r3, dx * dx + dy * dy)
            j += 4
    else:
        z = cols[2]
        zi = z[i]
        while j + 3 < n:
            dx = xi - x[j]
            dy = yi - y[j]
            dz = zi - z[j]
            r0 = max(r0, dx * dx + dy * dy + dz * dz)
            dx = xi - x[j + 1]
            dy = yi - y[j + 1]
            dz = zi - z[j + 1]
            r1 = max(r1, dx * dx + dy * dy + dz * dz)
            dx = xi - x[j + 2]
            dy = yi - y[j + 2]
            dz = zi - z[j + 2]
            r2 = max(r2, dx * dx + dy * dy + dz * dz)
            dx = xi - x[j + 3]
            dy = yi - y[j + 3]
            dz = zi - z[j + 3]
            r3 = max(r3, dx * dx + dy * dy + dz * dz)
            j += 4
    while j < n:
        r0 = max(r0, _col_sqdist(cols, i, j))
        j += 1
    return max(max(r0, r1), max(r2, r3))


@njit(cache=True)
def _brute_kernel(cols):
    n = cols.shape[1]
    best = -1.0
    bi = 0
    for i in range(n - 1):
        row = _row_max(cols, i)
        if row > best:
            best = row
            bi = i
    bj = bi + 1
    for j in range(bi + 1, n):
        if _col_sqdist(cols, bi, j) == best:
            bj = j
            break
    return best, bi, bj


def brute_force_diameter(points) -> DiameterResult:
    """Exact diameter by scanning all ``n(n-1)/2`` pairs.

    The reported pair is the first maximizing pair in ``i < j`` scan order.
    """
    pts = _require_pair_input(points)
    n = len(pts)
    d, i, j = _brute_kernel(np.ascontiguousarray(pts.T))
    stats = Stats(distance_evals=n * (n - 1) // 2)
    return DiameterResult(float(d), (int(i), int(j)), stats)


@njit(cache=True, inline="always")
def _cross(pts, o, a, b):
    return (pts[a, 0] - pts[o, 0]) * (pts[b, 1] - pts[o, 1]) - (
        pts[a, 1] - pts[o, 1]
    ) * (pts[b, 0] - pts[o, 0])


@njit(cache=True)
def _monotone_chain(pts, order):
    m = order.shape[0]
    hull = np.empty(2 * m, dtype=np.int64)
    t = 0
    for s in range(m):
        p = order[s]
        while t >= 2 and _cross(pts, hull[t - 2], hull[t - 1], p) <= 0.0:
            t -= 1
        hull[t] = p
        t += 1
    lower = t + 1
    for s in range(m - 2, -1, -1):
        p = order[s]
        while t >= lower and _cross(pts, hull[t - 2], hull[t - 1], p) <= 0.0:
            t -= 1
        hull[t] = p
        t += 1
    return hull[: t - 1].copy()


def _sorted_unique(pts: np.ndarray) -> np.ndarray:
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    s = pts[order]
    keep = np.ones(len(order), dtype=bool)
    keep[1:] = np.any(s[1:] != s[:-1], axis=1)
    return order[keep]


def convex_hull_2d(points) -> np.ndarray:
    """Indices of the strictly convex hull vertices in counter-clockwise order.

    Collinear boundary points and duplicates are dropped; the first vertex is
    the lexicographically smallest point (lowest index among duplicates).
    """
    pts = as_pointset(points)
    if pts.shape[1] != 2:
        raise GeometryError("hull baseline is planar only")
    if len(pts) == 0:
        raise GeometryError("empty input")
    order = _sorted_unique(pts)
    if len(order) == 1:
        return order.astype(np.int64)
    return _monotone_chain(pts, order.astype(np.int64))


@njit(cache=True)
def _subset_brute(pts, idx):
    h = idx.shape[0]
    best = -1.0
    bi = idx[0]
    bj = idx[0]
    for a in range(h - 1):
        for b in range(a + 1, h):
            d = sqdist(pts, idx[a], idx[b])
            if d > best:
                best = d
                bi = idx[a]
                bj = idx[b]
    return best, bi, bj


def _planar_hull_input(points):
    pts = _require_pair_input(points)
    if pts.shape[1] != 2:
        raise GeometryError("hull baseline is planar only")
    return pts


def hull_diameter_bf(points) -> DiameterResult:
    pts = _planar_hull_input(points)
    hull = convex_hull_2d(pts)
    h = len(hull)
    if h == 1:
        return DiameterResult(0.0, (0, 1), Stats(hull_size=1, survivors=1))
    d, i, j = _subset_brute(pts, hull)
    stats = Stats(distance_evals=h * (h - 1) // 2, hull_size=h, survivors=h)
    return DiameterResult(float(d), _ordered(i, j), stats)


@njit(cache=True, inline="always")
def _area2(pts, a, b, c):
    return abs(_cross(pts, a, b, c))


@njit(cache=True)
def _calipers_kernel(pts, hull):
    h = hull.shape[0]
    best = -1.0
    bi = hull[0]
    bj = hull[1]
    evals = 0
    j = 1
    for i in range(h):
        i2 = (i + 1) % h
        a = hull[i]
        b = hull[i2]
        while _area2(pts, a, b, hull[(j + 1) % h]) > _area2(pts, a, b, hull[j]):
            j = (j + 1) % h
        # Also probe j + 1: on parallel edges both vertices are antipodal.
        for jj in (j, (j + 1) % h):
            c = hull[jj]
            for p in (a, b):
                if p != c:
                    d = sqdist(pts, p, c)
                    evals += 1
                    if d > best:
                        best = d
                        bi = p
                        bj = c
    return best, bi, bj, evals


def hull_diameter_calipers(points) -> DiameterResult:
    """Hull diameter by rotating calipers over antipodal vertex pairs."""
    pts = _planar_hull_input(points)
    hull = convex_hull_2d(pts)
    h = len(hull)
    if h == 1:
        return DiameterResult(0.0, (0, 1), Stats(hull_size=1, survivors=1))
    if h == 2:
        d = sqdist(pts, hull[0], hull[1])
        stats = Stats(distance_evals=1, hull_size=2, survivors=2)
        return DiameterResult(float(d), _ordered(hull[0], hull[1]), stats)
    d, i, j, evals = _calipers_kernel(pts, hull)
    stats = Stats(distance_evals=int(evals), hull_size=h, survivors=h)
    return DiameterResult(float(d), _ordered(i, j), stats)
