"""``maxdist`` command line: gen, diameter, bench, verify.

Exit status 0 on success, 1 on usage or input errors, 2 when ``verify``
finds a mismatch against the all-pairs oracle.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys

import numpy as np

from . import bench
from .datagen import DISTRIBUTIONS, GenSpec, generate
from .fast import PruneConfig, max_distance
from .geom import GeometryError
from .pointfile import PointFileError, read_points, write_points
from .reference import brute_force_diameter, hull_diameter_bf, hull_diameter_calipers

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MISMATCH = 2

DIAMETER_ALGOS = ("brute", "hull_bf", "hull_calipers", "fast")
FILTERS = {"circular": "circular", "linear": "linear_chord"}


class UsageError(Exception):
    pass


def _csv_list(conv):
    def parse(text):
        try:
            return [conv(t) for t in text.split(",") if t.strip()]
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from exc
    return parse


def cmd_gen(args) -> int:
    try:
        spec = GenSpec(
            dist=args.dist, n=args.n, dim=args.dim, seed=args.seed, aspect=args.aspect,
            sigma=args.sigma, clusters=args.clusters, jitter=args.jitter, radius=args.radius,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    pts = generate(spec)
    write_points(args.out, pts, seed=spec.seed, dist=spec.dist)
    print(f"{spec.n} points -> {args.out}")
    return EXIT_OK


def _run_algo(name: str, pts, filt: str):
    if name == "brute":
        return brute_force_diameter(pts)
    if name == "hull_bf":
        return hull_diameter_bf(pts)
    if name == "hull_calipers":
        return hull_diameter_calipers(pts)
    return max_distance(pts, PruneConfig(FILTERS[filt]))


def cmd_diameter(args) -> int:
    pf = read_points(args.input)
    res = _run_algo(args.algo, pf.points, args.filter)
    if args.json:
        out = {"algo": args.algo, "filter": args.filter if args.algo == "fast" else None}
        out.update(res.to_dict())
        print(json.dumps(out))
        return EXIT_OK
    print(repr(res.dist))
    print(f"pair {res.pair[0]} {res.pair[1]}")
    print(f"dist_sq {res.dist_sq!r}")
    print(f"distance_evals {res.stats.distance_evals}")
    print(f"hull_size {res.stats.hull_size}")
    print(f"survivors {res.stats.survivors}")
    return EXIT_OK


def cmd_bench(args) -> int:
    try:
        algos = [bench.resolve_algo(a) for a in args.algos]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    for d in args.dists:
        if d not in DISTRIBUTIONS:
            raise UsageError(f"unknown distribution {d!r}")
    report = bench.sweep(
        args.sizes, args.dists, algos, args.seeds, args.reps,
        dim=args.dim, aspect=args.aspect, bf_ceiling=args.bf_ceiling,
    )
    os.makedirs(args.out, exist_ok=True)
    records = os.path.join(args.out, "records.csv")
    ratios = os.path.join(args.out, "ratios.csv")
    bench.emit(report, "csv", records, ratios)
    if args.json:
        bench.emit(report, "json", os.path.join(args.out, "report.json"))
    for row in report.ratios:
        print(
            f"n={row['n']} {row['dist']}: BF/hull={_show(row['bf_over_hull'])} "
            f"BF/fast={_show(row['bf_over_fast'])} hull/fast={_show(row['hull_over_fast'])}"
        )
    print(f"records -> {records}\nratios -> {ratios}")
    return EXIT_OK


def _show(v) -> str:
    return "-" if v is None else f"{v:.2f}"


def random_spec(rng: np.random.Generator, max_n: int, dims) -> GenSpec:
    dist = DISTRIBUTIONS[rng.integers(len(DISTRIBUTIONS))]
    # Mostly moderate aspects, occasionally extreme ones.
    aspect = float(rng.choice([1.0, rng.uniform(1, 4), 10 ** rng.uniform(1, 4)]))
    return GenSpec(
        dist=dist,
        n=int(rng.integers(2, max_n + 1)),
        dim=int(rng.choice(dims)),
        seed=int(rng.integers(2**63)),
        aspect=aspect,
        sigma=float(rng.uniform(0.001, 0.5)),
        clusters=int(rng.integers(1, 9)),
        jitter=float(rng.choice([0.0, 1e-9, rng.uniform(0, 0.2)])),
        radius=float(rng.uniform(0.1, 10)),
    )


def verify(trials: int, max_n: int, seed: int, dims, dump_dir: str = ".", out=None) -> int:
    """Differential check of both pruning predicates against the all-pairs scan."""
    out = out or sys.stdout
    rng = np.random.default_rng(seed)
    mismatches = 0
    for t in range(trials):
        spec = random_spec(rng, max_n, dims)
        pts = generate(spec)
        want = brute_force_diameter(pts).dist_sq
        for pred in ("circular", "linear_chord"):
            got = max_distance(pts, PruneConfig(pred)).dist_sq
            if got != want:
                mismatches += 1
                os.makedirs(dump_dir, exist_ok=True)
                path = os.path.join(dump_dir, f"mismatch_{t}_{pred}.pts")
                write_points(path, pts, seed=spec.seed, dist=spec.dist)
                print(f"MISMATCH trial {t} {pred}: got {got!r} want {want!r} spec {spec} -> {path}", file=out)
    print(f"verify: {trials} trials, {mismatches} mismatches", file=out)
    return EXIT_MISMATCH if mismatches else EXIT_OK


def cmd_verify(args) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    if args.max_n < 2:
        raise UsageError("--max-n must be >= 2")
    dims = [args.dim] if args.dim else [2, 3]
    return verify(args.trials, args.max_n, args.seed, dims, args.dump_dir)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="maxdist", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a seeded point file")
    g.add_argument("--dist", default="uniform", choices=DISTRIBUTIONS)
    g.add_argument("--n", type=int, default=1000)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--dim", type=int, default=2, choices=(2, 3))
    g.add_argument("--aspect", type=float, default=1.0)
    g.add_argument("--sigma", type=float, default=0.1)
    g.add_argument("--clusters", type=int, default=5)
    g.add_argument("--jitter", type=float, default=0.0)
    g.add_argument("--radius", type=float, default=1.0)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen)

    d = sub.add_parser("diameter", help="compute the diameter of a point file")
    d.add_argument("--algo", default="fast", choices=DIAMETER_ALGOS)
    d.add_argument("--in", dest="input", required=True)
    d.add_argument("--filter", default="circular", choices=tuple(FILTERS))
    d.add_argument("--json", action="store_true")
    d.set_defaults(func=cmd_diameter)

    b = sub.add_parser("bench", help="timing sweep, writes records.csv and ratios.csv")
    b.add_argument("--sizes", type=_csv_list(int), default=[1000, 10000])
    b.add_argument("--dists", type=_csv_list(str), default=["uniform"])
    b.add_argument("--algos", type=_csv_list(str), default=["brute", "hull_bf", "fast"])
    b.add_argument("--seeds", type=_csv_list(int), default=[1])
    b.add_argument("--reps", type=int, default=3)
    b.add_argument("--dim", type=int, default=2, choices=(2, 3))
    b.add_argument("--aspect", type=float, default=1.0)
    b.add_argument("--bf-ceiling", type=int, default=bench.DEFAULT_BF_CEILING)
    b.add_argument("--json", action="store_true", help="also write report.json")
    b.add_argument("--out", default="bench_out")
    b.set_defaults(func=cmd_bench)

    v = sub.add_parser("verify", help="differential check against brute force")
    v.add_argument("--trials", type=int, default=1000)
    v.add_argument("--max-n", type=int, default=512)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--dim", type=int, choices=(2, 3), default=None)
    v.add_argument("--dump-dir", default="verify_failures")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (UsageError, GeometryError, PointFileError, OSError, ValueError) as exc:
        print(f"maxdist: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
