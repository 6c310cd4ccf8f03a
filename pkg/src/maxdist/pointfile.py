"""Plain-text point files.

Layout::

    # maxdist v1 dim=2 n=3 seed=1 dist=uniform
    0.5 0.25
    ...

Coordinates use Python's shortest round-trip ``repr`` so a read/write cycle
is bit-exact. Unknown header keys are ignored on read.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

MAGIC = "# maxdist v1"


class PointFileError(ValueError):
    pass


@dataclass
class PointFile:
    points: np.ndarray
    seed: int | None = None
    dist: str | None = None
    extra: dict[str, str] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def n(self) -> int:
        return self.points.shape[0]


def format_header(dim: int, n: int, seed=None, dist=None) -> str:
    seed_s = "none" if seed is None else str(int(seed))
    return f"{MAGIC} dim={dim} n={n} seed={seed_s} dist={dist or 'none'}"


def dumps(points, seed=None, dist=None) -> str:
    pts = np.asarray(points, dtype=np.float64)
    lines = [format_header(pts.shape[1], pts.shape[0], seed, dist)]
    lines.extend(" ".join(repr(float(v)) for v in row) for row in pts)
    return "\n".join(lines) + "\n"


def write_points(path, points, seed=None, dist=None) -> None:
    text = dumps(points, seed, dist)
    try:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(text)
    except OSError as exc:
        raise PointFileError(f"cannot write {os.fspath(path)}: {exc}") from exc


def _parse_header(line: str) -> dict[str, str]:
    if not line.startswith(MAGIC):
        raise PointFileError(f"not a maxdist v1 point file: {line[:40]!r}")
    fields = {}
    for tok in line[len(MAGIC):].split():
        key, sep, value = tok.partition("=")
        if sep:
            fields[key] = value
    for key in ("dim", "n"):
        if key not in fields:
            raise PointFileError(f"header lacks {key}=")
    return fields


def loads(text: str) -> PointFile:
    lines = text.splitlines()
    if not lines:
        raise PointFileError("empty point file")
    hdr = _parse_header(lines[0])
    try:
        dim, n = int(hdr.pop("dim")), int(hdr.pop("n"))
    except ValueError as exc:
        raise PointFileError(f"bad header: {lines[0]!r}") from exc
    body = [ln for ln in lines[1:] if ln.strip()]
    if len(body) != n:
        raise PointFileError(f"header declares n={n} but file has {len(body)} point lines")
    pts = np.empty((n, dim))
    for i, ln in enumerate(body):
        toks = ln.split()
        if len(toks) != dim:
            raise PointFileError(f"line {i + 2}: expected {dim} values, got {len(toks)}")
        try:
            pts[i] = [float(t) for t in toks]
        except ValueError as exc:
            raise PointFileError(f"line {i + 2}: {exc}") from exc
    seed = hdr.pop("seed", "none")
    dist = hdr.pop("dist", "none")
    return PointFile(
        pts,
        seed=None if seed == "none" else int(seed),
        dist=None if dist == "none" else dist,
        extra=hdr,
    )


def read_points(path) -> PointFile:
    try:
        with open(path, encoding="ascii") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise PointFileError(f"cannot read {os.fspath(path)}: {exc}") from exc
