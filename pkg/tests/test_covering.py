import itertools

import numpy as np
import pytest
import scipy.sparse as sp
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from wcover.covering import (Bracket, bracket_weighted_cover, classical_cover_exact_small,
                             classical_cover_greedy, fractional_cover_on_net,
                             fractional_separation_on_net, hadwiger_weighted, translate_contains,
                             verify_cover_exact)
from wcover.geometry import Ball, Box, GeometryError, polygon, translate
from wcover.lp import CoverLP, build_cover_lp
from wcover.nets import grid_net

TRIANGLE = polygon([(0, 0), (1, 0), (0, 1)])
HEX = polygon([(0.5, 0.0), (0.5, -0.5), (0.0, -0.5), (-0.5, 0.0), (-0.5, 0.5), (0.0, 0.5)])
# |x| <= 1/2, |y| <= 1/2, |x + y| <= 1/2
HEX_A = np.array([[1, 0], [-1, 0], [0, 1], [0, -1], [1, 1], [-1, -1]], dtype=float)
HEX_B = np.full(6, 0.5)


def _matrix_lp(M):
    M = np.asarray(M, dtype=float)
    m, n = M.shape
    return CoverLP(sp.csr_matrix(M), np.ones(m), np.ones(n), np.arange(n, dtype=float)[:, None],
                   np.zeros((m, 1)))


def test_fractional_cover_examples():
    _, v = fractional_cover_on_net(Box((0,), (2,)), Box((-0.5,), (0.5,)), 0.05)
    assert 2.0 - 1e-7 <= v <= 2.2
    cover, v = fractional_cover_on_net(Ball((0, 0), 1), Ball((0, 0), 1), 0.1)
    assert v == pytest.approx(1.0, abs=1e-7)
    assert cover.verified


def test_triangle_hexagon_atoms_near_edge_midpoints():
    cover, v = fractional_cover_on_net(TRIANGLE, HEX, 0.05)
    assert 1.4 <= v <= 1.5 + 1e-7
    mids = np.array([(0.5, 0), (0, 0.5), (0.5, 0.5)])
    # the weight is spread over a neighbourhood of each midpoint on the net
    d = np.linalg.norm(cover.points[:, None, :] - mids[None], axis=2).min(axis=1)
    assert cover.weights[d <= 0.2].sum() >= 0.9 * v


def test_fractional_separation_examples():
    assert fractional_separation_on_net(Box((-1,), (1,)), Box((-0.9,), (0.9,)), 0.02) >= 1.99
    v = fractional_separation_on_net(Ball((0, 0), 1), Ball((0, 0), 1), 0.1)
    assert 0.95 <= v <= 1.0 + 1e-7


def test_bracket_examples():
    b = bracket_weighted_cover(Box((0,), (2,)), Box((-0.5,), (0.5,)), [0.1, 0.05, 0.02], 0.2)
    assert b.contains(2.0) and b.gap <= 0.2 and b.warning is None
    for K in (Ball((0, 0), 1), TRIANGLE, Box((0, 0), (1, 2))):
        b = bracket_weighted_cover(K, K, [0.1, 0.05], 0.1)
        assert b.contains(1.0) and b.gap <= 0.1


def test_bracket_history_is_monotone_and_warns():
    b = bracket_weighted_cover(TRIANGLE, HEX, [0.2, 0.1], 1e-9, exact_refine=False)
    lows = [r["best_lower"] for r in b.history]
    ups = [r["best_upper"] for r in b.history]
    assert lows == sorted(lows) and ups == sorted(ups, reverse=True)
    assert b.warning is not None
    assert isinstance(b.to_json()["history"], list)


def test_bracket_errors():
    with pytest.raises(GeometryError):
        bracket_weighted_cover(Box((0,), (1,)), Ball((0, 0), 1), [0.1], 0.1)
    with pytest.raises(ValueError):
        bracket_weighted_cover(Box((0,), (1,)), Box((0,), (1,)), [], 0.1)


def test_bracket_translation_invariant():
    a = bracket_weighted_cover(TRIANGLE, HEX, [0.1, 0.05], 0.05)
    b = bracket_weighted_cover(translate(TRIANGLE, (0.3, -0.7)), translate(HEX, (1.1, 0.2)),
                               [0.1, 0.05], 0.05)
    assert a.contains(1.5) and b.contains(1.5)
    assert abs(a.lower - b.lower) <= 0.05 and abs(a.upper - b.upper) <= 0.05


def test_greedy_examples():
    g = classical_cover_greedy(Box((0,), (2,)), Box((-0.5,), (0.5,)), 0.05)
    assert g.verified and g.size <= 4
    assert classical_cover_greedy(TRIANGLE, TRIANGLE, 0.1).size == 1


def _single_translate_contains(V, A, b):
    """LP oracle: is there x with A(v - x) <= b for every vertex v?"""
    A_ub = np.vstack([-A] * len(V))
    b_ub = np.concatenate([b - A @ v for v in V])
    res = linprog(np.zeros(2), A_ub=A_ub, b_ub=b_ub, bounds=(None, None), method="highs")
    return res.status == 0


def test_triangle_by_hexagon_needs_exactly_two():
    V = np.array([(0, 0), (1, 0), (0, 1)], dtype=float)
    assert not _single_translate_contains(V, HEX_A, HEX_B)
    g = classical_cover_greedy(TRIANGLE, HEX, 0.05)
    assert g.size == 2 and g.verification == "exact"
    assert verify_cover_exact(TRIANGLE, HEX, g.centers, np.ones(2)).status == "verified"
    # dense sample as an independent check of the exact verification
    X = np.random.default_rng(0).dirichlet(np.ones(3), size=20000)[:, :2]
    inside = np.zeros(len(X), dtype=bool)
    for c in g.centers:
        inside |= np.all((X - c) @ HEX_A.T <= HEX_B + 1e-9, axis=1)
    assert inside.all()


def test_verify_cover_exact_refutes_and_verifies():
    one = verify_cover_exact(TRIANGLE, HEX, [(0.5, 0.5)], [1.0])
    assert one.status == "refuted"
    assert TRIANGLE.contains(one.witness, tol=1e-7)
    assert not np.all((one.witness - (0.5, 0.5)) @ HEX_A.T <= HEX_B)
    halves = [(0.5, 0), (0, 0.5), (0.5, 0.5)]
    assert verify_cover_exact(TRIANGLE, HEX, halves, [0.5] * 3).status == "verified"
    assert verify_cover_exact(Ball((0, 0), 1), Ball((0, 0), 1), [(0.1, 0)], [0.5]).status \
        == "unsupported"


def test_translate_contains():
    assert translate_contains(Box((0, 0), (1, 1)), Ball((0, 0), 0.75), (0.5, 0.5))
    assert not translate_contains(Box((0, 0), (1, 1)), Ball((0, 0), 0.7), (0.5, 0.5))
    assert not translate_contains(TRIANGLE, HEX, (0.3, 0.3))


def test_exact_small_examples():
    assert classical_cover_exact_small(_matrix_lp(np.eye(3))).count == 3
    r = classical_cover_exact_small(_matrix_lp([[1, 1, 0], [0, 1, 1]]))
    assert r.count == 1 and r.columns == [1] and r.status == "optimal"


def test_exact_small_triangle_hexagon_coarse():
    net = grid_net(TRIANGLE, 0.25)
    assert len(net) <= 40
    r = classical_cover_exact_small(build_cover_lp(net.points, net.points, HEX, TRIANGLE))
    assert r.count == 2 and r.status == "optimal"


def test_exact_small_budget_flag():
    rng = np.random.default_rng(5)
    M = (rng.random((60, 40)) < 0.12).astype(float)
    M[np.arange(60), rng.integers(40, size=60)] = 1
    r = classical_cover_exact_small(_matrix_lp(M), max_nodes=1)
    assert r.status == "budget_exceeded"
    # the incumbent is still a cover, and no better than the optimum
    assert M[:, r.columns].any(axis=1).all()
    assert r.count >= classical_cover_exact_small(_matrix_lp(M)).count


def _brute_force(M):
    m, n = M.shape
    for k in range(1, n + 1):
        for cols in itertools.combinations(range(n), k):
            if M[:, cols].any(axis=1).all():
                return k
    return None


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.integers(1, 9), st.floats(0.1, 0.6), st.integers(0, 2**31))
def test_exact_small_matches_brute_force(m, n, density, seed):
    rng = np.random.default_rng(seed)
    M = rng.random((m, n)) < density
    M[np.arange(m), rng.integers(n, size=m)] = True
    r = classical_cover_exact_small(_matrix_lp(M))
    assert r.count == _brute_force(M)
    assert M[:, r.columns].any(axis=1).all()


def test_hadwiger_examples():
    for lam, b in hadwiger_weighted(Box((-1,), (1,)), [0.5, 0.9, 0.99], [0.01, 0.004],
                                    target_gap=0.05):
        assert b.contains(2.0), (lam, b.lower, b.upper)
    (_, sq), = hadwiger_weighted(Box((-1, -1), (1, 1)), [0.9], 0.05)
    assert sq.upper <= 4.3 and sq.lower >= 1 / 0.81 - 1e-7
    centred = polygon([(-1 / 3, -1 / 3), (2 / 3, -1 / 3), (-1 / 3, 2 / 3)])
    (_, tri), = hadwiger_weighted(centred, [0.9], 0.05)
    assert tri.upper <= 6


def test_hadwiger_errors():
    with pytest.raises(GeometryError):
        hadwiger_weighted(Box((1,), (2,)), [0.5], 0.1)
    with pytest.raises(ValueError):
        hadwiger_weighted(Box((-1,), (1,)), [1.0], 0.1)


def test_bracket_json():
    b = Bracket(1.0, 2.0, 0.1, "lo", "hi")
    out = b.to_json()
    assert out["gap"] == 1.0 and out["atoms"] == [] and out["meanings"]["lower"] == "lo"
