import itertools

import numpy as np
import pytest


def naive_diameter_sq(pts) -> float:
    """All-pairs maximum in plain Python, independent of the compiled kernels."""
    best = 0.0
    rows = [tuple(float(v) for v in p) for p in pts]
    for p, q in itertools.combinations(rows, 2):
        s = 0.0
        for a, b in zip(p, q):
            d = a - b
            s += d * d
        best = max(best, s)
    return best


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)
