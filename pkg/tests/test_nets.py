import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wcover.geometry import Ball, Box, CrossPolytope, GeometryError, VSimplex, minkowski_sum, polygon
from wcover.nets import NetBudgetError, grid_net, grid_pitch

TRIANGLE = polygon([(0, 0), (1, 0), (0, 1)])


def test_unit_interval_example():
    net = grid_net(Box((0,), (1,)), 0.1)
    assert len(net) >= 6
    assert np.all((net.points >= 0) & (net.points <= 1))
    assert np.diff(np.sort(net.points[:, 0])).max() <= 0.2 + 1e-12


def test_unit_square_example():
    net = grid_net(Box((0, 0), (1, 1)), 0.1)
    assert net.radius <= 0.1 * (1 + 1e-9)
    assert net.covering_radius_sample(5000, seed=1) <= 0.1


def test_pitch():
    assert grid_pitch(0.1, 4) == pytest.approx(0.1)
    assert grid_pitch(0.1, 1) == pytest.approx(0.2)


def test_contains_centre_and_face_midpoints():
    pts = grid_net(Box((0, 0), (1, 2)), 0.07).points
    for p in [(0.5, 1.0), (0.5, 0.0), (0.0, 1.0), (1.0, 1.0), (0.5, 2.0)]:
        assert np.min(np.linalg.norm(pts - p, axis=1)) < 1e-12


def test_errors():
    with pytest.raises(GeometryError):
        grid_net(Box((0,), (1,)), 0.0)
    with pytest.raises(GeometryError):
        grid_net(Box((0,) * 9, (1,) * 9), 0.5)
    with pytest.raises(NetBudgetError) as info:
        grid_net(Box((0, 0), (1, 1)), 0.001, budget=1000)
    assert info.value.required > 1000


def test_deterministic_lexicographic_order():
    a = grid_net(TRIANGLE, 0.05).points
    b = grid_net(TRIANGLE, 0.05).points
    assert np.array_equal(a, b)
    box = grid_net(Box((0, 0), (1, 1)), 0.1).points
    order = np.lexsort(box.T[::-1])
    assert np.array_equal(order, np.arange(len(box)))


def test_csv_round_trip(tmp_path):
    net = grid_net(minkowski_sum(TRIANGLE, Ball((0, 0), 0.1)), 0.1)
    path = tmp_path / "net.csv"
    net.to_csv(path)
    back = np.loadtxt(path, delimiter=",", ndmin=2)
    assert np.array_equal(back, net.points)


def test_finer_nets_cover_better():
    B = Ball((0, 0), 1)
    radii = [grid_net(B, d).covering_radius_sample(4000, seed=2) for d in (0.2, 0.1, 0.05)]
    assert radii[0] >= radii[1] >= radii[2]
    assert all(r <= d for r, d in zip(radii, (0.2, 0.1, 0.05)))


def _random_body(rng, dim):
    kind = rng.integers(4)
    c = rng.uniform(-1, 1, dim)
    if kind == 0:
        h = rng.uniform(0.05, 1.0, dim)
        return Box(tuple(c - h), tuple(c + h))
    if kind == 1:
        return Ball(tuple(c), float(rng.uniform(0.1, 1.0)))
    if kind == 2:
        return CrossPolytope(tuple(c), float(rng.uniform(0.1, 1.0)))
    V = np.vstack([np.zeros(dim), np.eye(dim)]) + 0.3 * rng.uniform(-1, 1, (dim + 1, dim))
    return VSimplex(tuple(map(tuple, c + V)))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3), st.floats(0.05, 0.4), st.integers(0, 2**31))
def test_net_property(dim, delta, seed):
    rng = np.random.default_rng(seed)
    K = _random_body(rng, dim)
    net = grid_net(K, delta, budget=200_000)
    assert len(net) > 0
    assert K.contains_many(net.points, 1e-9).all()
    assert net.radius <= delta * (1 + 1e-9) + 1e-12
    assert net.covering_radius_sample(2000, seed=seed % 1000) <= net.radius
    assert len(np.unique(np.round(net.points, 12), axis=0)) == len(net)
    # a sampled bound is no proof; still, it must agree with the certified one
    assert math.isfinite(net.spacing) and net.spacing > 0
