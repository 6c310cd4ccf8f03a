"""Closed-form estimates for the corner-pruning scheme.

Used to annotate benchmark reports and as sanity checks in tests. Symbols:
the box is ``a x b`` with ``a = k * b``; ``d`` is the current distance
estimate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .geom import BoundingBox


class UnboundedSpeedup(ArithmeticError):
    """The predicted speed-up diverges (the estimate equals the box diagonal)."""


@dataclass(frozen=True)
class BoundPair:
    d1: float
    d2: float


def table1_bounds(box: BoundingBox) -> BoundPair:
    """Lower threshold ``d1`` and box diagonal ``d2`` for a 2-D or 3-D box.

    ``d1^2 = max_side^2 + min_side^2 / 2`` and ``d2^2`` is the sum of the
    squared sides.
    """
    sides = [float(s) for s in box.sides]
    if len(sides) not in (2, 3):
        raise ValueError("box dimension must be 2 or 3")
    lo, hi = min(sides), max(sides)
    d1_sq = hi * hi + 0.5 * lo * lo
    d2_sq = sum(s * s for s in sides)
    return BoundPair(math.sqrt(d1_sq), math.sqrt(d2_sq))


def omega0_area(a: float) -> float:
    """Area of the central set of an ``a x a`` square that pruning always removes.

    That set is the intersection of the four radius-``a`` disks centered at
    the square's corners.
    """
    if a < 0:
        raise ValueError("side length must be non-negative")
    return a * a * (math.pi / 3 - math.sqrt(3) + 1)


def surviving_fraction_q() -> float:
    return math.sqrt(3) - math.pi / 3


def naive_speedup() -> float:
    q = surviving_fraction_q()
    return 1.0 / (q * q)


def _offset(k: float, b: float, d: float) -> float:
    if k < 1:
        raise ValueError("aspect k must be >= 1")
    if b <= 0:
        raise ValueError("box height b must be positive")
    if d < b:
        raise ValueError("d below box height, sqrt of negative")
    return math.sqrt((d / b) ** 2 - 1)


def segment_area_P(k: float, b: float, d: float) -> float:
    """Area of the corner cap left after pruning with estimate ``d``.

    ``P = b^2/2 * [k^2 - 1 + d^2/b^2 - 2k sqrt(d^2/b^2 - 1)]``, evaluated as
    ``b^2/2 * (k - s)^2`` with ``s = sqrt(d^2/b^2 - 1)`` to avoid cancellation.
    """
    s = _offset(k, b, d)
    return 0.5 * b * b * (k - s) ** 2


def predicted_speedup_v(k: float, b: float, d: float) -> float:
    """Predicted speed-up over the all-pairs scan, ``(ab / 4P)^2`` with ``a = kb``.

    Raises UnboundedSpeedup when the bracket vanishes (``d`` on the diagonal).
    """
    s = _offset(k, b, d)
    bracket = (k - s) ** 2
    if bracket == 0.0:
        raise UnboundedSpeedup(f"speed-up unbounded at k={k}, b={b}, d={d}")
    return k * k / (4.0 * bracket * bracket)
