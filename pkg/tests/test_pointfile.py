import numpy as np
import pytest

from maxdist.pointfile import PointFileError, dumps, loads, read_points, write_points


def test_header_and_lines(tmp_path):
    pts = np.array([(0.1, 2.0), (-3.5, 1e-300)])
    path = tmp_path / "a.pts"
    write_points(path, pts, seed=7, dist="uniform")
    lines = path.read_text().splitlines()
    assert lines[0] == "# maxdist v1 dim=2 n=2 seed=7 dist=uniform"
    assert lines[1] == "0.1 2.0"
    pf = read_points(path)
    assert pf.seed == 7 and pf.dist == "uniform" and pf.dim == 2 and pf.n == 2
    assert pf.points.tobytes() == pts.tobytes()


def test_empty_point_set():
    text = dumps(np.empty((0, 3)))
    assert text == "# maxdist v1 dim=3 n=0 seed=none dist=none\n"
    pf = loads(text)
    assert pf.points.shape == (0, 3) and pf.seed is None


def test_unknown_header_keys_ignored():
    pf = loads("# maxdist v1 dim=2 n=1 seed=3 dist=circle origin=lab\n1 2\n")
    assert pf.points.tolist() == [[1.0, 2.0]]
    assert pf.extra == {"origin": "lab"}


@pytest.mark.parametrize(
    "text",
    [
        "",
        "x,y\n1,2\n",
        "# maxdist v1 dim=2\n1 2\n",
        "# maxdist v1 dim=2 n=2\n1 2\n",
        "# maxdist v1 dim=2 n=1\n1 2 3\n",
        "# maxdist v1 dim=2 n=1\n1 abc\n",
    ],
)
def test_malformed(text):
    with pytest.raises(PointFileError):
        loads(text)


def test_missing_file(tmp_path):
    with pytest.raises(PointFileError, match="cannot read"):
        read_points(tmp_path / "nope.pts")


def test_round_trip_awkward_values():
    vals = [0.1, -0.0, 5e-324, 1.7976931348623157e308, 1 / 3, 2.0**-1074 * 3, 123456789.123456789]
    pts = np.array([(v, -v) for v in vals])
    again = loads(dumps(pts)).points
    assert again.tobytes() == pts.tobytes()
