"""Point sets, axis-aligned boxes and the 2^k corner-region scheme.

A point set is an ``(n, k)`` float64 array with ``k`` in {2, 3}; row order
matters because results report pairs of row indices. A region id is an int
whose bit ``j`` is set when the point's coordinate ``j`` is at or above the
box center.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit


class GeometryError(ValueError):
    """Raised for inputs outside a routine's contract."""


def as_pointset(points, dim: int | None = None) -> np.ndarray:
    """Return ``points`` as a C-contiguous ``(n, k)`` float64 array.

    Raises GeometryError for a wrong shape, an unsupported dimension or a
    non-finite coordinate.
    """
    arr = np.ascontiguousarray(points, dtype=np.float64)
    if arr.ndim == 1 and arr.size == 0:
        arr = arr.reshape(0, dim or 2)
    if arr.ndim != 2:
        raise GeometryError(f"expected an (n, k) array, got shape {arr.shape}")
    k = arr.shape[1]
    if k not in (2, 3):
        raise GeometryError(f"dimension must be 2 or 3, got {k}")
    if dim is not None and k != dim:
        raise GeometryError(f"dimension mismatch: expected {dim}, got {k}")
    if not np.isfinite(arr).all():
        raise GeometryError("non-finite input")
    return arr


def squared_distance(p, q) -> float:
    if len(p) != len(q):
        raise GeometryError("dimension mismatch")
    s = 0.0
    for a, b in zip(p, q):
        d = float(a) - float(b)
        s += d * d
    return s


@njit(cache=True, inline="always")
def sqdist(pts, i, j):
    s = 0.0
    for m in range(pts.shape[1]):
        d = pts[i, m] - pts[j, m]
        s += d * d
    return s


@njit(cache=True, inline="always")
def corner_dist_sq_at(pts, i, lo, hi):
    # Per-axis farthest face, so the value dominates the distance to every
    # point of the box even when the center split is off by a rounding step.
    s = 0.0
    for m in range(pts.shape[1]):
        d0 = pts[i, m] - lo[m]
        d1 = hi[m] - pts[i, m]
        d = d0 if d0 > d1 else d1
        s += d * d
    return s


@njit(cache=True)
def _bbox_kernel(pts):
    n, k = pts.shape
    lo = pts[0].copy()
    hi = pts[0].copy()
    for i in range(1, n):
        for m in range(k):
            v = pts[i, m]
            if v < lo[m]:
                lo[m] = v
            elif v > hi[m]:
                hi[m] = v
    return lo, hi


@dataclass(frozen=True, eq=False)
class BoundingBox:
    lo: np.ndarray
    hi: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.lo)

    @property
    def sides(self) -> np.ndarray:
        return self.hi - self.lo

    @property
    def center(self) -> np.ndarray:
        return self.lo + 0.5 * (self.hi - self.lo)

    @property
    def half_extent(self) -> np.ndarray:
        """Widest half of each axis after the center split.

        Equals ``sides / 2`` unless the center coordinate was rounded.
        """
        c = self.center
        return np.maximum(c - self.lo, self.hi - c)

    @property
    def diagonal_sq(self) -> float:
        s = 0.0
        for side in self.sides:
            s += float(side) * float(side)
        return s

    @property
    def is_degenerate(self) -> bool:
        return bool(np.all(self.hi == self.lo))

    def corner(self, bits: int) -> np.ndarray:
        """Corner taking ``hi`` on every axis whose bit is set."""
        return np.array(
            [self.hi[j] if bits >> j & 1 else self.lo[j] for j in range(self.dim)]
        )

    def contains(self, p) -> bool:
        p = np.asarray(p, dtype=np.float64)
        return bool(np.all(p >= self.lo) and np.all(p <= self.hi))

    def __repr__(self) -> str:
        return f"BoundingBox(lo={self.lo.tolist()}, hi={self.hi.tolist()})"


def compute_bbox(points) -> BoundingBox:
    pts = as_pointset(points)
    if len(pts) == 0:
        raise GeometryError("empty input")
    return BoundingBox(*_bbox_kernel(pts))


def region_of(p, box: BoundingBox) -> int:
    c = box.center
    bits = 0
    for j in range(box.dim):
        if p[j] >= c[j]:
            bits |= 1 << j
    return bits


def _check_region(r: int, box: BoundingBox) -> None:
    if not 0 <= r < 1 << box.dim:
        raise GeometryError(f"region {r} out of range for dimension {box.dim}")


def opposite_corner(r: int, box: BoundingBox) -> np.ndarray:
    _check_region(r, box)
    return box.corner(~r & ((1 << box.dim) - 1))


def corner_distance_sq(p, box: BoundingBox) -> float:
    """Squared distance from ``p`` to the farthest corner of ``box``.

    For points inside the box this is the distance to the corner opposite
    the point's region, and an upper bound on its distance to any point of
    the box.
    """
    s = 0.0
    for j in range(box.dim):
        d0 = float(p[j]) - float(box.lo[j])
        d1 = float(box.hi[j]) - float(p[j])
        d = d0 if d0 > d1 else d1
        s += d * d
    return s


def region_pair_bound_sq(ri: int, rj: int, box: BoundingBox) -> float:
    _check_region(ri, box)
    _check_region(rj, box)
    if ri == rj:
        raise GeometryError("same region")
    sides = box.sides
    half = box.half_extent
    diff = ri ^ rj
    s = 0.0
    for j in range(box.dim):
        e = float(sides[j]) if diff >> j & 1 else float(half[j])
        s += e * e
    return s


def region_pair_bound(ri: int, rj: int, box: BoundingBox) -> float:
    """Upper bound on the distance between a point of region ``ri`` and one of ``rj``.

    Axes where the two regions lie in opposite halves contribute the full
    side, shared halves contribute half a side.
    """
    return math.sqrt(region_pair_bound_sq(ri, rj, box))
