from fractions import Fraction

import numpy as np
import pytest
import scipy.sparse as sp
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from wcover.geometry import Ball, Box, DimensionMismatch, negate, polygon
from wcover.lp import (CoverLP, LPError, UncoverablePoint, build_cover_lp, duality_gap,
                       duality_ok, membership_matrix, solve_dual, solve_primal)
from wcover.nets import grid_net
from wcover.simplex import solve_packing

TRIANGLE = polygon([(0, 0), (1, 0), (0, 1)])
HEX = polygon([(0.5, 0.0), (0.5, -0.5), (0.0, -0.5), (-0.5, 0.0), (-0.5, 0.5), (0.0, 0.5)])


def _lp(M, c=None):
    M = np.asarray(M, dtype=float)
    m, n = M.shape
    c = np.ones(m) if c is None else np.asarray(c, dtype=float)
    return CoverLP(sp.csr_matrix(M), c, np.ones(n), np.zeros((n, 1)), np.zeros((m, 1)))


def test_single_point_example():
    lp = build_cover_lp([[0.0]], [[0.0]], Box((-1,), (1,)), Box((0,), (0.5,)))
    assert lp.M.toarray().tolist() == [[1.0]]
    assert lp.c.tolist() == [1.0] and lp.b.tolist() == [1.0]


def test_membership_rows_example():
    lp = build_cover_lp([0, 1], [0, 0.5, 1], Box((-0.6,), (0.6,)), Box((0,), (1,)))
    assert lp.M.toarray().tolist() == [[1, 0], [1, 1], [0, 1]]


def test_constraint_indicator_example():
    lp = build_cover_lp([[0.0, 0.0]], [[-2.0, 0.0], [0.0, 0.0]], Ball((0, 0), 3), Ball((0, 0), 1))
    assert lp.c.tolist() == [0.0, 1.0]


@pytest.mark.parametrize("solver", ["simplex", "highs", "exact"])
def test_small_values(solver):
    assert solve_primal(_lp([[1]]), solver)[0] == pytest.approx(1)
    assert solve_primal(_lp(np.eye(3)), solver)[0] == pytest.approx(3)
    assert solve_dual(_lp([[1]]), solver)[0] == pytest.approx(1)
    value, y = solve_dual(_lp([[1, 1], [1, 1]]), solver)
    assert value == pytest.approx(1) and y.sum() == pytest.approx(1)


def test_exact_mode_returns_fraction():
    lp = _lp([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    value, _ = solve_primal(lp, "exact")
    assert lp.info["exact_value"] == Fraction(3, 2)
    assert value == 1.5


def test_uncoverable_point_named():
    lp = _lp([[1, 0], [0, 0]])
    with pytest.raises(UncoverablePoint) as info:
        solve_primal(lp)
    assert info.value.index == 1
    # rows outside K need no cover
    assert solve_primal(_lp([[1, 0], [0, 0]], c=[1, 0]))[0] == pytest.approx(1)


def test_errors():
    with pytest.raises(LPError):
        build_cover_lp(np.zeros((0, 1)), [[0.0]], Box((-1,), (1,)), Box((0,), (1,)))
    with pytest.raises(DimensionMismatch):
        build_cover_lp([[0.0, 0.0]], [[0.0]], Box((-1,), (1,)), Box((0,), (1,)))
    with pytest.raises(ValueError):
        solve_primal(_lp([[1]]), "nope")


def test_triangle_hexagon_net_value():
    net = grid_net(TRIANGLE, 0.02)
    lp = build_cover_lp(net.points, net.points, HEX, TRIANGLE)
    value, x = solve_primal(lp, "highs")
    dual, y = solve_dual(lp, "highs")
    assert 1.40 <= value <= 1.50 + 1e-7
    assert abs(value - dual) <= 1e-7
    assert lp.primal_feasible(x) and lp.dual_feasible(y)


def test_transpose_is_reflected_body():
    """``M(T)^T`` on a symmetric point set is ``M(-T)``: the reflection behind duality."""
    net = grid_net(Box((-1, -1), (1, 1)), 0.2).points
    M = membership_matrix(net, net, TRIANGLE).toarray()
    Mn = membership_matrix(net, net, negate(TRIANGLE)).toarray()
    assert np.array_equal(M.T, Mn)


def test_duplicate_column_does_not_change_value():
    M = np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]], dtype=float)
    a = solve_primal(_lp(M))[0]
    b = solve_primal(_lp(np.hstack([M, M[:, :1]])))[0]
    assert a == pytest.approx(b)


def test_more_columns_never_hurt():
    rng = np.random.default_rng(4)
    M = (rng.random((25, 20)) < 0.3).astype(float)
    M[:, 0] = 1
    base = solve_primal(_lp(M[:, :10]))[0]
    assert solve_primal(_lp(M))[0] <= base + 1e-9


def test_triplets_round_trip(tmp_path):
    net = grid_net(TRIANGLE, 0.1)
    lp = build_cover_lp(net.points, net.points, HEX, TRIANGLE)
    path = tmp_path / "m.txt"
    lp.to_triplets(path)
    lines = path.read_text().splitlines()
    rows, cols, nnz = map(int, lines[0].split())
    data = np.loadtxt(lines[1:], ndmin=2)
    assert (rows, cols) == lp.M.shape and nnz == len(data) == lp.M.nnz
    back = sp.coo_matrix((data[:, 2], (data[:, 0].astype(int), data[:, 1].astype(int))),
                         shape=(rows, cols))
    assert (back != lp.M).nnz == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 12), st.integers(1, 12), st.floats(0.1, 0.7), st.integers(0, 2**31))
def test_simplex_agrees_with_highs(m, n, density, seed):
    rng = np.random.default_rng(seed)
    M = (rng.random((m, n)) < density).astype(float)
    M[rng.integers(m, size=n), np.arange(n)] = 1.0       # no empty column
    M[np.arange(m), rng.integers(n, size=m)] = 1.0       # no empty row
    lp_s, lp_h = _lp(M), _lp(M)
    v_s, x = solve_primal(lp_s, "simplex")
    v_h, _ = solve_primal(lp_h, "highs")
    d_s, y = solve_dual(lp_s, "simplex")
    ref = linprog(np.ones(n), A_ub=-M, b_ub=-np.ones(m), method="highs").fun
    assert v_s == pytest.approx(ref, abs=1e-8)
    assert v_h == pytest.approx(ref, abs=1e-8)
    assert duality_ok(lp_s) and duality_gap(lp_s) <= 1e-9
    assert lp_s.primal_feasible(x) and lp_s.dual_feasible(y)
    # weak duality on arbitrary feasible pairs
    y2 = rng.random(m)
    y2 /= max(1.0, (M.T @ y2).max())
    assert y2.sum() <= v_s + 1e-9


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 2**31))
def test_exact_simplex_matches_float(m, n, seed):
    rng = np.random.default_rng(seed)
    A = rng.integers(0, 3, size=(m, n)).astype(float)
    A[0] += 1
    exact = solve_packing(A, np.ones(m), np.ones(n), exact=True)
    flt = solve_packing(A, np.ones(m), np.ones(n))
    assert isinstance(exact.value, Fraction)
    assert float(exact.value) == pytest.approx(flt.value, abs=1e-9)
