"""Timing harness producing speed-up tables with wall times and counters.

Wall times are machine-dependent; the counters (``distance_evals``,
``hull_size``, ``survivors``) are not, and are the primary comparison.
"""
from __future__ import annotations

import csv
import itertools
import json
import logging
import os
import statistics
import time
from dataclasses import asdict, dataclass, field

from .datagen import GenSpec, generate
from .fast import PruneConfig, max_distance
from .reference import brute_force_diameter, hull_diameter_bf, hull_diameter_calipers

log = logging.getLogger(__name__)

ALGORITHMS = {
    "brute": brute_force_diameter,
    "hull_bf": hull_diameter_bf,
    "hull_calipers": hull_diameter_calipers,
    "fast_circular": lambda ps: max_distance(ps, PruneConfig("circular")),
    "fast_linear": lambda ps: max_distance(ps, PruneConfig("linear_chord")),
}
ALIASES = {"fast": "fast_circular", "hull": "hull_bf"}
PLANAR_ONLY = {"hull_bf", "hull_calipers"}

RECORD_FIELDS = (
    "algo", "n", "dim", "dist", "seed", "aspect", "reps",
    "wall_ns", "diameter", "distance_evals", "hull_size", "survivors",
)
RATIO_FIELDS = ("n", "dist", "bf_over_hull", "bf_over_fast", "hull_over_fast")

DEFAULT_BF_CEILING = 200_000


def resolve_algo(name: str) -> str:
    name = ALIASES.get(name, name)
    if name not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {name!r}")
    return name


@dataclass
class BenchRecord:
    algo: str
    n: int
    dim: int
    dist: str
    seed: int
    aspect: float
    reps: int
    wall_ns: int
    diameter: float
    distance_evals: int
    hull_size: int
    survivors: int


@dataclass
class BenchReport:
    records: list[BenchRecord] = field(default_factory=list)
    ratios: list[dict] = field(default_factory=list)
    skipped: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "records": [asdict(r) for r in self.records],
            "ratios": list(self.ratios),
            "skipped": list(self.skipped),
        }


def run_case(algo: str, points, reps: int = 3, *, spec: GenSpec | None = None) -> BenchRecord:
    """Time one algorithm on one point set: a warm-up run, then ``reps`` timed runs."""
    if reps < 1:
        raise ValueError("reps must be >= 1")
    algo = resolve_algo(algo)
    fn = ALGORITHMS[algo]
    fn(points)
    times = []
    for _ in range(reps):
        t0 = time.perf_counter_ns()
        res = fn(points)
        times.append(time.perf_counter_ns() - t0)
    n, dim = points.shape
    return BenchRecord(
        algo=algo,
        n=n,
        dim=dim,
        dist=spec.dist if spec else "custom",
        seed=spec.seed if spec else 0,
        aspect=spec.aspect if spec else 1.0,
        reps=reps,
        wall_ns=max(1, int(statistics.median_low(times))),
        diameter=res.dist,
        distance_evals=res.stats.distance_evals,
        hull_size=res.stats.hull_size,
        survivors=res.stats.survivors,
    )


def _pick(times: dict[str, int], *names: str):
    for name in names:
        if name in times:
            return times[name]
    return None


def _ratio(num, den):
    if num is None or den is None:
        return None
    return num / den


def ratio_rows(records: list[BenchRecord]) -> list[dict]:
    """One row per (n, dist): quotients of the median-over-seeds wall times."""
    groups: dict[tuple[int, str], dict[str, list[int]]] = {}
    for r in records:
        groups.setdefault((r.n, r.dist), {}).setdefault(r.algo, []).append(r.wall_ns)
    rows = []
    for (n, dist), by_algo in groups.items():
        t = {a: statistics.median(v) for a, v in by_algo.items()}
        bf = t.get("brute")
        hull = _pick(t, "hull_bf", "hull_calipers")
        fast = _pick(t, "fast_circular", "fast_linear")
        rows.append({
            "n": n,
            "dist": dist,
            "bf_over_hull": _ratio(bf, hull),
            "bf_over_fast": _ratio(bf, fast),
            "hull_over_fast": _ratio(hull, fast),
        })
    return rows


def sweep(
    sizes,
    dists,
    algos,
    seeds,
    reps: int = 3,
    *,
    dim: int = 2,
    aspect: float = 1.0,
    bf_ceiling: int = DEFAULT_BF_CEILING,
) -> BenchReport:
    algos = [resolve_algo(a) for a in algos]
    report = BenchReport()
    for n, dist, seed in itertools.product(sizes, dists, seeds):
        spec = GenSpec(dist=dist, n=n, dim=dim, seed=seed, aspect=aspect)
        pts = generate(spec)
        for algo in algos:
            reason = None
            if algo == "brute" and n > bf_ceiling:
                reason = f"n above brute-force ceiling {bf_ceiling}"
            elif algo in PLANAR_ONLY and dim != 2:
                reason = "planar only"
            if reason:
                report.skipped.append({"algo": algo, "n": n, "dist": dist, "seed": seed, "reason": reason})
                log.info("skip %s n=%d %s: %s", algo, n, dist, reason)
                continue
            rec = run_case(algo, pts, reps, spec=spec)
            log.info("%s n=%d %s seed=%d: %d ns", algo, n, dist, seed, rec.wall_ns)
            report.records.append(rec)
    report.ratios = ratio_rows(report.records)
    return report


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _open(path):
    try:
        return open(path, "w", newline="", encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write {os.fspath(path)}: {exc}") from exc


def emit(report: BenchReport, fmt: str, destination, ratio_destination=None) -> None:
    """Write the records as CSV or JSON; with CSV, also the ratio table if asked."""
    if fmt == "json":
        with _open(destination) as fh:
            json.dump(report.to_dict(), fh, indent=2)
            fh.write("\n")
        return
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    with _open(destination) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(RECORD_FIELDS)
        for r in report.records:
            w.writerow([_fmt(getattr(r, f)) for f in RECORD_FIELDS])
    if ratio_destination is not None:
        with _open(ratio_destination) as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(RATIO_FIELDS)
            for row in report.ratios:
                w.writerow([_fmt(row[f]) for f in RATIO_FIELDS])
