"""Seeded point-set generators.

Every generator draws from ``numpy.random.default_rng(seed)`` (PCG64), so a
given :class:`GenSpec` always yields the same coordinates. The nominal box
is ``[0, aspect] x [0, 1] (x [0, 1])``.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

DISTRIBUTIONS = ("uniform", "gaussian", "clusters", "circle", "collinear", "duplicated")


@dataclass(frozen=True)
class GenSpec:
    dist: str = "uniform"
    n: int = 1000
    dim: int = 2
    seed: int = 0
    aspect: float = 1.0
    sigma: float = 0.1
    clusters: int = 5
    jitter: float = 0.0
    radius: float = 1.0

    def __post_init__(self):
        if self.dist not in DISTRIBUTIONS:
            raise ValueError(f"unknown distribution {self.dist!r}")
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if self.dim not in (2, 3):
            raise ValueError("dim must be 2 or 3")
        if not self.aspect >= 1 or not math.isfinite(self.aspect):
            raise ValueError("aspect must be a finite value >= 1")
        for name in ("sigma", "jitter", "radius"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0):
                raise ValueError(f"{name} must be finite and non-negative")
        if self.clusters < 1:
            raise ValueError("clusters must be >= 1")

    def to_dict(self) -> dict:
        return asdict(self)


def _extent(spec: GenSpec) -> np.ndarray:
    ext = np.ones(spec.dim)
    ext[0] = spec.aspect
    return ext


def _circle(spec: GenSpec, rng: np.random.Generator) -> np.ndarray:
    n = spec.n
    pts = np.zeros((n, spec.dim))
    radii = np.full(n, spec.radius)
    if spec.jitter > 0:
        radii += rng.uniform(-spec.jitter, spec.jitter, size=n)
    if n % 2 == 0 and spec.jitter == 0:
        # Exact antipodes: the second half is the negated first half.
        h = n // 2
        theta = 2 * np.pi * np.arange(h) / n
        pts[:h, 0] = radii[:h] * np.cos(theta)
        pts[:h, 1] = radii[:h] * np.sin(theta)
        pts[h:, :2] = -pts[:h, :2]
    else:
        theta = 2 * np.pi * np.arange(n) / n
        pts[:, 0] = radii * np.cos(theta)
        pts[:, 1] = radii * np.sin(theta)
    return pts


def generate(spec: GenSpec) -> np.ndarray:
    rng = np.random.default_rng(spec.seed)
    n, dim = spec.n, spec.dim
    ext = _extent(spec)
    if n == 0:
        return np.empty((0, dim))
    if spec.dist == "uniform":
        return rng.random((n, dim)) * ext
    if spec.dist == "gaussian":
        return ext / 2 + spec.sigma * rng.standard_normal((n, dim))
    if spec.dist == "clusters":
        centers = rng.random((spec.clusters, dim)) * ext
        labels = rng.integers(spec.clusters, size=n)
        return centers[labels] + spec.sigma * rng.standard_normal((n, dim))
    if spec.dist == "circle":
        return _circle(spec, rng)
    if spec.dist == "collinear":
        return np.linspace(0.0, 1.0, n)[:, None] * ext
    # duplicated
    base = rng.random(((n + 1) // 2, dim)) * ext
    return np.repeat(base, 2, axis=0)[:n][rng.permutation(n)]
