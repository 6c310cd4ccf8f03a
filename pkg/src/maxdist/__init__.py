"""Exact farthest-pair (diameter) computation for 2-D and 3-D point sets."""
from .fast import PruneConfig, max_distance
from .geom import BoundingBox, GeometryError, as_pointset, compute_bbox, squared_distance
from .reference import (
    DiameterResult,
    Stats,
    brute_force_diameter,
    convex_hull_2d,
    hull_diameter_bf,
    hull_diameter_calipers,
)

__all__ = [
    "BoundingBox",
    "DiameterResult",
    "GeometryError",
    "PruneConfig",
    "Stats",
    "as_pointset",
    "brute_force_diameter",
    "compute_bbox",
    "convex_hull_2d",
    "hull_diameter_bf",
    "hull_diameter_calipers",
    "max_distance",
    "squared_distance",
]
