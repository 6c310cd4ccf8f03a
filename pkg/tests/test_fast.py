import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import naive_diameter_sq
from maxdist import fast
from maxdist.cli import verify
from maxdist.datagen import DISTRIBUTIONS, GenSpec, generate
from maxdist.fast import (
    PruneConfig,
    chord_plane,
    collect_extremes,
    cross_pair_max,
    diagonal_pairs,
    initial_estimate,
    max_distance,
    neighbor_pairs,
    partition_filter,
    reduce,
    refresh_estimate,
)
from maxdist.geom import (
    GeometryError,
    compute_bbox,
    corner_distance_sq,
    region_of,
    region_pair_bound_sq,
    squared_distance,
)
from maxdist.reference import brute_force_diameter

SQUARE = np.array([(0, 0), (1, 0), (1, 1), (0, 1)], dtype=float)
LINEAR = PruneConfig("linear_chord")


def _corner_dist_brute(pts, corner):
    return [squared_distance(p, corner) for p in pts]


def test_prune_config_validates():
    with pytest.raises(ValueError):
        PruneConfig("quadratic")


def test_collect_extremes_square_pool():
    ext = collect_extremes(SQUARE, compute_bbox(SQUARE))
    assert sorted(ext.pool().tolist()) == [0, 1, 2, 3]


def test_collect_extremes_single_point():
    pts = np.array([(4.0, 5.0)])
    ext = collect_extremes(pts, compute_bbox(pts))
    for arr in (ext.axis_min, ext.axis_max, ext.corner_farthest, ext.corner_nearest):
        assert arr.tolist() == [0] * len(arr)
    assert ext.pool().tolist() == [0]
    assert initial_estimate(ext, pts) == (0.0, None)


@pytest.mark.parametrize("dim", [2, 3])
def test_collect_extremes_exhaustive(dim):
    pts = generate(GenSpec("uniform", 1000, dim, seed=3))
    box = compute_bbox(pts)
    ext = collect_extremes(pts, box)
    for c in range(1 << dim):
        d = _corner_dist_brute(pts, box.corner(c))
        assert ext.corner_farthest[c] == int(np.argmax(d))
        assert ext.corner_nearest[c] == int(np.argmin(d))
    assert ext.axis_min.tolist() == pts.argmin(axis=0).tolist()
    assert ext.axis_max.tolist() == pts.argmax(axis=0).tolist()
    assert 1 <= len(ext.pool()) <= 2 * dim + 2 * 2**dim


def test_collect_extremes_ties_go_to_lowest_index():
    pts = np.array([(0, 0), (0, 0), (1, 1), (1, 1)], dtype=float)
    ext = collect_extremes(pts, compute_bbox(pts))
    assert ext.axis_min.tolist() == [0, 0]
    assert ext.axis_max.tolist() == [2, 2]
    assert ext.corner_nearest.tolist()[0] == 0


def test_initial_estimate_examples():
    ext = collect_extremes(SQUARE, compute_bbox(SQUARE))
    d, pair = initial_estimate(ext, SQUARE)
    assert d == 2.0 and pair == (0, 2)

    pts = np.ones((5, 2))
    ext = collect_extremes(pts, compute_bbox(pts))
    assert initial_estimate(ext, pts)[0] == 0.0


def test_initial_estimate_at_least_unit_side_for_uniform():
    pts = generate(GenSpec("uniform", 10**5, 2, seed=11))
    box = compute_bbox(pts)
    d, _ = initial_estimate(collect_extremes(pts, box), pts)
    assert d >= max(box.sides) ** 2


def test_partition_threshold_zero_keeps_everything(rng):
    pts = rng.random((300, 2))
    box = compute_bbox(pts)
    part = partition_filter(pts, box, 0.0)
    assert sum(part.sizes) == 300
    for r, idx in enumerate(part.regions):
        assert all(region_of(pts[i], box) == r for i in idx)


def test_partition_above_diagonal_discards_everything(rng):
    pts = rng.random((300, 3))
    box = compute_bbox(pts)
    part = partition_filter(pts, box, box.diagonal_sq * 1.0001)
    assert part.sizes == [0] * 8
    assert (part.extreme == -1).all()


def test_partition_invariants(rng):
    pts = rng.random((2000, 2)) * [3, 1]
    box = compute_bbox(pts)
    thr = 9.5
    part = partition_filter(pts, box, thr)
    kept = set()
    for r, idx in enumerate(part.regions):
        cds = [corner_distance_sq(pts[i], box) for i in idx]
        assert all(c >= thr for c in cds)
        if len(idx):
            assert part.extreme_dist_sq[r] == max(cds)
            assert corner_distance_sq(pts[part.extreme[r]], box) == max(cds)
        kept.update(idx.tolist())
    dropped = set(range(len(pts))) - kept
    assert all(corner_distance_sq(pts[i], box) < thr for i in dropped)


def test_refresh_estimate():
    box = compute_bbox(SQUARE)
    part = partition_filter(SQUARE, box, 0.0)
    d, pair = refresh_estimate(part, SQUARE, 0.0)
    assert d == 2.0 and set(pair) in ({0, 2}, {1, 3})

    empty = partition_filter(SQUARE, box, 10.0)
    assert refresh_estimate(empty, SQUARE, 1.25, (0, 1)) == (1.25, (0, 1))


def test_refresh_estimate_is_monotone(rng):
    pts = rng.random((500, 2))
    box = compute_bbox(pts)
    d0, pair = initial_estimate(collect_extremes(pts, box), pts)
    part = partition_filter(pts, box, d0)
    d1, _ = refresh_estimate(part, pts, d0, pair)
    assert d1 >= d0


def test_reduce_circular_equality_boundary():
    pts = np.array([(0, 0), (0.1, 0.0), (1, 1), (0.9, 1.0)], dtype=float)
    box = compute_bbox(pts)
    part = partition_filter(pts, box, 0.0)
    kept = reduce(part, 0, box.diagonal_sq)
    assert kept.tolist() == [0]


def test_reduce_is_idempotent_at_partition_threshold(rng):
    pts = rng.random((1000, 2))
    box = compute_bbox(pts)
    part = partition_filter(pts, box, 1.3)
    before = [r.copy() for r in part.regions]
    for r in range(4):
        reduce(part, r, 1.3)
    assert all(np.array_equal(a, b) for a, b in zip(before, part.regions))


def test_chord_plane_cases():
    box = compute_bbox(SQUARE)
    assert chord_plane(0, box, 2.5) == "discard_all"
    assert chord_plane(0, box, 0.5) == "keep_all"
    delta = chord_plane(0, box, 1.5)
    # Sphere of radius sqrt(1.5) around (1, 1) meets the edges at 1 - sqrt(0.5).
    assert delta == pytest.approx([1 - math.sqrt(0.5)] * 2)


@pytest.mark.parametrize("dim", [2, 3])
def test_linear_chord_keeps_superset(rng, dim):
    for trial in range(40):
        pts = rng.random((800, dim)) * rng.uniform(0.5, 5, size=dim)
        box = compute_bbox(pts)
        d0, _ = initial_estimate(collect_extremes(pts, box), pts)
        part = partition_filter(pts, box, d0)
        d = rng.uniform(d0, box.diagonal_sq)
        for r in range(1 << dim):
            circ = reduce(part.copy(), r, d, PruneConfig("circular"))
            lin = reduce(part.copy(), r, d, LINEAR)
            assert set(circ.tolist()) <= set(lin.tolist())


def test_linear_chord_discards_nothing_outside_disk(rng):
    # Anything the chord drops must be strictly inside the discard disk.
    pts = rng.random((5000, 2))
    box = compute_bbox(pts)
    part = partition_filter(pts, box, 0.0)
    for d in (1.05, 1.2, 1.6, 1.9):
        for r in range(4):
            before = set(part.regions[r].tolist())
            after = set(reduce(part.copy(), r, d, LINEAR).tolist())
            assert after <= before
            assert all(corner_distance_sq(pts[i], box) < d for i in before - after)


def test_cross_pair_max():
    pts = np.array([(0, 0), (1, 1)], dtype=float)
    assert cross_pair_max([0], [1], pts) == (2.0, (0, 1))
    assert cross_pair_max([], [1], pts) == (0.0, None)


def test_cross_pair_max_matches_double_loop(rng):
    pts = rng.normal(size=(100, 2))
    a, b = np.arange(50), np.arange(50, 100)
    best, pair = -1.0, None
    for i in a:
        for j in b:
            d = squared_distance(pts[i], pts[j])
            if d > best:
                best, pair = d, (int(i), int(j))
    assert cross_pair_max(a, b, pts) == (best, pair)


def test_region_pair_orders():
    assert diagonal_pairs(2) == [(0, 3), (1, 2)]
    assert diagonal_pairs(3) == [(0, 7), (1, 6), (2, 5), (3, 4)]
    assert len(neighbor_pairs(2)) == 4
    box = compute_bbox(np.array([(0, 0, 0), (3, 2, 1)], dtype=float))
    pairs = neighbor_pairs(3, box)
    assert len(pairs) == 24
    bits = [bin(i ^ j).count("1") for i, j in pairs]
    assert bits == sorted(bits, reverse=True)
    bounds = [region_pair_bound_sq(i, j, box) for i, j in pairs[:12]]
    assert bounds == sorted(bounds, reverse=True)


def test_max_distance_square_skips_neighbor_stage():
    r = max_distance(SQUARE)
    assert r.dist == math.sqrt(2)
    assert r.stats.stage_flags["neighbor"] is False
    assert len(r.stats.skipped_pairs) == 4


def test_max_distance_errors():
    with pytest.raises(GeometryError, match="at least two"):
        max_distance([(0, 0)])
    with pytest.raises(GeometryError, match="non-finite"):
        max_distance([(0, 0), (np.inf, 0)])


def test_max_distance_degenerate_box():
    r = max_distance(np.full((7, 3), 2.5))
    assert r.dist == 0.0 and r.pair == (0, 1)


def test_max_distance_uniform_matches_oracle():
    pts = generate(GenSpec("uniform", 10**4, 2, seed=1))
    want = brute_force_diameter(pts)
    for cfg in (PruneConfig(), LINEAR):
        got = max_distance(pts, cfg)
        assert got.dist_sq == want.dist_sq
        assert squared_distance(*pts[list(got.pair)]) == got.dist_sq


def test_max_distance_circle_worst_case():
    pts = generate(GenSpec("circle", 1000, 2, radius=1.0))
    r = max_distance(pts)
    assert r.dist_sq == brute_force_diameter(pts).dist_sq
    assert r.dist == pytest.approx(2.0, abs=1e-15)


@pytest.mark.parametrize("dist", DISTRIBUTIONS)
@pytest.mark.parametrize("dim", [2, 3])
@pytest.mark.parametrize("aspect", [1.0, 3.0, 1e4])
def test_exact_across_generators(dist, dim, aspect):
    for seed in range(5):
        pts = generate(GenSpec(dist, 300, dim, seed=seed, aspect=aspect, jitter=0.01 * (seed % 2)))
        want = brute_force_diameter(pts).dist_sq
        for cfg in (PruneConfig(), LINEAR):
            assert max_distance(pts, cfg).dist_sq == want


coords = st.floats(-1e4, 1e4, allow_nan=False)


@settings(max_examples=400, deadline=None)
@given(
    st.integers(2, 3).flatmap(
        lambda k: st.lists(st.tuples(*[coords] * k), min_size=2, max_size=60)
    ),
    st.sampled_from(["circular", "linear_chord"]),
)
def test_exact_hypothesis(points, predicate):
    pts = np.array(points)
    assert max_distance(pts, PruneConfig(predicate)).dist_sq == naive_diameter_sq(pts)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=2, max_size=30))
def test_exact_on_lattice_ties(points):
    pts = np.array(points, dtype=float)
    assert max_distance(pts, LINEAR).dist_sq == max_distance(pts).dist_sq == naive_diameter_sq(pts)


def test_estimate_dominates_every_scan_and_regions_shrink(monkeypatch):
    seen = []
    original = fast.cross_pair_max

    def spy(a, b, points):
        res = original(a, b, points)
        seen.append(res[0])
        return res

    monkeypatch.setattr(fast, "cross_pair_max", spy)
    pts = generate(GenSpec("gaussian", 3000, 3, seed=4))
    r = max_distance(pts)
    assert r.dist_sq >= max(seen + [0.0])
    sizes: dict[int, int] = {}
    for _, region, size in r.stats.region_log:
        assert size <= sizes.get(region, size)
        sizes[region] = size
    d_at_skip = [s[2] for s in r.stats.skipped_pairs]
    assert d_at_skip == sorted(d_at_skip)


def test_gate_soundness(rng):
    for seed in range(30):
        dim = 2 + seed % 2
        pts = generate(GenSpec("uniform", 2000, dim, seed=seed, aspect=1 + seed % 3))
        box = compute_bbox(pts)
        labels = np.array([region_of(p, box) for p in pts])
        r = max_distance(pts)
        for ri, rj, d_skip, bound in r.stats.skipped_pairs:
            d, _ = cross_pair_max(np.flatnonzero(labels == ri), np.flatnonzero(labels == rj), pts)
            assert d < d_skip


def test_instrumentation_counts_cross_products(monkeypatch):
    calls = []
    original = fast.cross_pair_max

    def spy(a, b, points):
        calls.append(len(a) * len(b))
        return original(a, b, points)

    monkeypatch.setattr(fast, "cross_pair_max", spy)
    pts = generate(GenSpec("clusters", 5000, 2, seed=2, clusters=3))
    r = max_distance(pts)
    ev = r.stats.stage_evals
    assert ev["diagonal"] + ev["neighbor"] == sum(calls)
    assert r.stats.distance_evals == sum(ev.values())


def test_counters_disabled():
    pts = generate(GenSpec("uniform", 1000, 2, seed=2))
    r = max_distance(pts, PruneConfig(counters_enabled=False))
    assert r.stats.survivors == 0 and r.stats.region_log == []
    assert r.dist_sq == max_distance(pts).dist_sq


def test_mutation_is_detected(monkeypatch):
    """Discard-on-equality in the partition plus an off-by-one in the cross
    scan must break exactness somewhere in a modest random sweep."""
    cross, part = fast.cross_pair_max, fast.partition_filter

    def buggy_cross(a, b, points):
        return cross(a[:-1], b, points)

    def buggy_partition(points, box, d):
        return part(points, box, np.nextafter(d, np.inf))

    monkeypatch.setattr(fast, "cross_pair_max", buggy_cross)
    monkeypatch.setattr(fast, "partition_filter", buggy_partition)
    assert verify(200, 128, 0, [2, 3], dump_dir="/tmp/maxdist_mutation", out=io.StringIO()) == 2
