import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

import rieszdim as rd
from rieszdim.sets import default_erdos_exponents


def exact_distance_count(points):
    """Rational-arithmetic oracle: distinct squared distances."""
    pts = [tuple(Fraction(x) for x in p) for p in points]
    seen = set()
    for a, b in itertools.combinations(pts, 2):
        seen.add(sum((x - y) ** 2 for x, y in zip(a, b)))
    return len(seen)


# ------------------------------------------------------------ distance set


def test_grid_distances_form_arithmetic_progression():
    for n in (2, 5, 17, 60):
        vs = rd.distance_set(rd.grid_1d(n))
        assert vs.count == n - 1


def test_two_points_single_distance():
    vs = rd.distance_set(rd.PointCloud([[0.0, 0.0], [3.0, 4.0]]))
    assert vs.count == 1
    assert vs.values[0] == pytest.approx(5.0, abs=0)


def test_three_by_three_grid_exact_counts():
    grid = [[float(x), float(y)] for x in range(3) for y in range(3)]
    cloud = rd.PointCloud(grid)
    vs = rd.distance_set(cloud)
    assert vs.quantization == "exact"
    assert vs.count == 5
    squared = sorted(round(v * v) for v in vs.values)
    assert squared == [1, 2, 4, 5, 8]
    assert exact_distance_count(grid) == 5


def test_exact_mode_matches_rational_oracle_on_random_integer_clouds():
    rng = np.random.default_rng(31)
    for n in (50, 200, 500):
        pts = rng.integers(0, 40, size=(n, 2)).astype(float)
        pts = np.unique(pts, axis=0)
        cloud = rd.PointCloud(pts)
        vs = rd.distance_set(cloud)
        assert vs.quantization == "exact"
        assert vs.count == exact_distance_count(pts)


def test_exact_mode_requires_integer_coordinates():
    with pytest.raises(ValueError):
        rd.distance_set(rd.PointCloud([[0.1], [0.7]]), "exact")


def test_quantized_never_splits_equal_and_never_overmerges():
    rng = np.random.default_rng(8)
    pts = rng.random((120, 2))
    cloud = rd.PointCloud(pts)
    vs = rd.distance_set(cloud)
    step = vs.quantization
    # reported representatives are separated by more than the step
    assert np.all(np.diff(vs.values) > step * 0.5)
    # every true distance lands within one step of a representative
    d = np.sqrt(
        ((pts[:, None, :] - pts[None, :, :]) ** 2).sum(axis=2)
    )[np.triu_indices(120, k=1)]
    nearest = np.min(np.abs(d[:, None] - vs.values[None, :]), axis=1)
    assert np.max(nearest) <= step
    # exactly-equal distances never split: isoceles configuration
    iso = rd.PointCloud([[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3) / 2]])
    assert rd.distance_set(iso, 1e-9).count == 1
    # values three steps apart never merge
    sep = rd.PointCloud([[0.0], [1.0], [1.0 + 3e-9]])
    assert rd.distance_set(sep, 1e-9).count == 3


def test_distance_set_isometry_invariance():
    rng = np.random.default_rng(77)
    pts = rng.random((60, 2))
    q, _ = np.linalg.qr(rng.normal(size=(2, 2)))
    moved = pts @ q.T + rng.normal(size=2)
    a = rd.distance_set(rd.PointCloud(pts), 1e-9)
    b = rd.distance_set(rd.PointCloud(moved), 1e-9)
    assert a.count == b.count
    assert np.allclose(a.values, b.values, atol=3e-9)


def test_distance_set_needs_two_points():
    with pytest.raises(rd.TooFewPoints):
        rd.distance_set(rd.PointCloud([[0.0]]))


# --------------------------------------------------------- dot-product set


def test_orthonormal_pair_dots():
    cloud = rd.PointCloud([[1.0, 0.0], [0.0, 1.0]])
    vs = rd.dot_product_set(cloud)
    assert vs.count == 2
    assert vs.values.tolist() == [0.0, 1.0]


def test_single_point_self_dot():
    vs = rd.dot_product_set(rd.PointCloud([[3.0, 4.0]]))
    assert vs.count == 1
    assert vs.values[0] == 25.0


def test_grid_dot_products_match_brute_force():
    grid = [[float(x), float(y)] for x in range(3) for y in range(3)]
    brute = {
        a[0] * b[0] + a[1] * b[1] for a in grid for b in grid
    }
    vs = rd.dot_product_set(rd.PointCloud(grid), 1e-9)
    assert vs.count == len(brute)
    assert set(np.round(vs.values).astype(int)) == brute


def test_dot_products_include_negatives():
    cloud = rd.PointCloud([[1.0], [-1.0]])
    vs = rd.dot_product_set(cloud, 1e-9)
    assert vs.values.tolist() == [-1.0, 1.0]


def test_dot_product_lipschitz_bound_interval():
    # |(x+u)(y+v) - xy| <= 3a for x, y in [0,1], |u|,|v| <= a <= 1
    rng = np.random.default_rng(13)
    trials = 10_000
    alpha = rng.random(trials)
    x = rng.random(trials)
    y = rng.random(trials)
    u = alpha * (2.0 * rng.random(trials) - 1.0)
    v = alpha * (2.0 * rng.random(trials) - 1.0)
    moved = np.abs((x + u) * (y + v) - x * y)
    assert np.all(moved <= 3.0 * alpha + 1e-15)


def test_dot_product_lipschitz_bound_higher_dimension():
    # in [0,1]^d the displacement bound picks up the corner norm sqrt(d):
    # |x.v + y.u + u.v| <= (2 sqrt(d) + 1) a
    rng = np.random.default_rng(14)
    d = 2
    trials = 10_000
    alpha = rng.random(trials)

    def ball(k):
        w = rng.normal(size=(k, d))
        w /= np.linalg.norm(w, axis=1, keepdims=True)
        return w * (alpha * rng.random(trials) ** (1.0 / d))[:, None]

    x = rng.random((trials, d))
    y = rng.random((trials, d))
    u = ball(trials)
    v = ball(trials)
    moved = np.abs(np.sum((x + u) * (y + v), axis=1) - np.sum(x * y, axis=1))
    assert np.all(moved <= (2.0 * math.sqrt(d) + 1.0) * alpha + 1e-15)


# ------------------------------------------------------------------- erdos


def test_erdos_two_points():
    report = rd.erdos_report(rd.PointCloud([[0.0], [1.0]]), [1.0, 2.0])
    for row in report.rows:
        assert row["ratio"] == pytest.approx(1.0 / 2.0 ** (1.0 / row["s0"]), rel=1e-12)


def test_erdos_default_exponents():
    assert default_erdos_exponents(1) == [0.5]
    assert default_erdos_exponents(2) == [1.0, 1.25]
    d3 = default_erdos_exponents(3)
    assert d3[0] == 1.5
    assert d3[1] == pytest.approx(1.5 + 0.25 - 1.0 / 28.0, rel=1e-12)


def test_erdos_integer_grid_count_is_small():
    # sqrt(n) x sqrt(n) integer grid: squared distances bounded by
    # 2 (sqrt(n) - 1)^2, so the count is at most 2n
    k = 14
    grid = [[float(x), float(y)] for x in range(k) for y in range(k)]
    report = rd.erdos_report(rd.PointCloud(grid))
    n = k * k
    assert report.count <= 2 * n
    assert report.quantization == "exact"


def test_erdos_generic_cloud_ratio_large():
    # generic points give about n^2/2 distinct distances, far above n^{4/5};
    # cross-checked against the brute-force oracle at this size
    pts = rd.sample(rd.UniformCube(2), 200, seed=1).points
    report = rd.erdos_report(rd.PointCloud(pts))
    brute = len(
        {
            round(math.dist(a, b), 9)
            for a, b in itertools.combinations(pts.tolist(), 2)
        }
    )
    assert report.count == brute
    row = next(r for r in report.rows if r["s0"] == 1.25)
    assert row["ratio"] > 10.0


def test_value_set_validation():
    with pytest.raises(ValueError):
        rd.ValueSet("distance", np.array([1.0, 1.0]), 1e-9, 2)
    with pytest.raises(ValueError):
        rd.ValueSet("distance", np.array([1.0, 2.0]), 1e-9, 3)


def test_value_set_json_suppresses_large_lists():
    vs = rd.ValueSet("distance", np.arange(1.0, 12.0), 1e-9, 11)
    assert "values" in vs.to_json()
    assert "values" not in vs.to_json(max_values=10)
