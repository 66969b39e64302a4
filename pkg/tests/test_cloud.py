import io
import math

import numpy as np
import pytest

import rieszdim as rd
from rieszdim.cloud import dumps_csv


def test_one_dimensional_input_reshapes():
    c = rd.PointCloud([0.0, 0.5, 1.0])
    assert c.n == 3 and c.dim == 1


def test_rejects_nan_and_inf():
    with pytest.raises(ValueError):
        rd.PointCloud([[0.0], [float("nan")]])
    with pytest.raises(ValueError):
        rd.PointCloud([[0.0], [float("inf")]])


def test_rejects_exact_duplicates():
    with pytest.raises(rd.DuplicatePoints):
        rd.PointCloud([[1.0, 2.0], [1.0, 2.0], [0.0, 0.0]])


def test_negative_zero_counts_as_duplicate():
    with pytest.raises(rd.DuplicatePoints):
        rd.PointCloud([[0.0], [-0.0]])


def test_rejects_empty():
    with pytest.raises(ValueError):
        rd.PointCloud(np.empty((0, 2)))


def test_prefix_preserves_order():
    c = rd.PointCloud([[3.0], [1.0], [2.0]])
    assert c.prefix(2).points.ravel().tolist() == [3.0, 1.0]
    with pytest.raises(rd.TooFewPoints):
        c.prefix(4)
    with pytest.raises(rd.TooFewPoints):
        c.prefix(0)


def test_points_are_immutable():
    c = rd.PointCloud([[0.0], [1.0]])
    with pytest.raises(ValueError):
        c.points[0, 0] = 5.0


def test_diameter_and_min_gap():
    c = rd.PointCloud([[0.0, 0.0], [3.0, 4.0], [0.0, 1.0]])
    assert c.diameter() == pytest.approx(5.0, abs=0)
    assert c.min_gap() == pytest.approx(1.0, abs=0)


def test_csv_round_trip_is_exact(tmp_path):
    rng = np.random.default_rng(42)
    pts = rng.random((50, 3)) * math.pi
    c = rd.PointCloud(pts)
    path = tmp_path / "cloud.csv"
    rd.write_csv(c, path)
    back = rd.read_csv(path)
    assert back.dim == 3
    assert np.array_equal(back.points, c.points)


def test_csv_header_and_comments():
    text = "# dim=2\n# a comment\n0,0\n1,1\n"
    c = rd.read_csv(io.StringIO(text))
    assert c.n == 2 and c.dim == 2


def test_csv_header_mismatch():
    with pytest.raises(rd.DimensionMismatch):
        rd.read_csv(io.StringIO("# dim=3\n0,0\n1,1\n"))


def test_csv_ragged_rows_rejected():
    with pytest.raises(ValueError):
        rd.read_csv(io.StringIO("0,0\n1\n"))


def test_csv_empty_rejected():
    with pytest.raises(ValueError):
        rd.read_csv(io.StringIO("# dim=1\n"))


def test_dumps_has_17_digit_fidelity():
    c = rd.PointCloud([[1.0 / 3.0], [2.0 / 3.0]])
    text = dumps_csv(c)
    back = rd.read_csv(io.StringIO(text))
    assert np.array_equal(back.points, c.points)
