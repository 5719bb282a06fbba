import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wcover.bounds import (certificate_ratio, hadwiger_ceiling, hoeffding, intersection_volume,
                           symmetric_hadwiger_certificate, volume, volume_bounds)
from wcover.geometry import (Ball, Box, CrossPolytope, GeometryError, VSimplex, minkowski_sum,
                             polygon, scale, translate)

TRIANGLE = polygon([(0, 0), (1, 0), (0, 1)])
HEX = polygon([(0.5, 0.0), (0.5, -0.5), (0.0, -0.5), (-0.5, 0.0), (-0.5, 0.5), (0.0, 0.5)])


def _shoelace(V):
    x, y = np.asarray(V, dtype=float).T
    return 0.5 * abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def test_exact_volumes():
    assert volume(Box((0, 0), (2, 2))).value == 4
    assert volume(Ball((0, 0), 1)).value == pytest.approx(math.pi)
    assert volume(Ball((0, 0, 0), 1)).value == pytest.approx(4 / 3 * math.pi)
    assert volume(CrossPolytope((0, 0, 0), 1)).value == pytest.approx(4 / 3)
    assert volume(scale(TRIANGLE, 3)).value == pytest.approx(4.5)
    assert volume(translate(Box((0,), (2,)), (5,))).value == 2


def test_polygon_volumes_match_shoelace():
    assert volume(TRIANGLE).value == pytest.approx(_shoelace([(0, 0), (1, 0), (0, 1)]))
    hexv = [(0.5, 0.0), (0.5, -0.5), (0.0, -0.5), (-0.5, 0.0), (-0.5, 0.5), (0.0, 0.5)]
    assert volume(HEX).value == pytest.approx(_shoelace(hexv)) == pytest.approx(0.75)


def test_monte_carlo_steiner_value():
    est = volume(minkowski_sum(Box((-1, -1), (1, 1)), Ball((0, 0), 1)), 200_000, seed=0)
    assert est.method == "monte_carlo"
    assert abs(est.value - (12 + math.pi)) <= est.half_width


def test_monte_carlo_interval_coverage():
    S = minkowski_sum(Box((-1, -1), (1, 1)), Ball((0, 0), 1))
    truth = 12 + math.pi
    hits = sum(abs(volume(S, 10_000, seed=s).value - truth) <= volume(S, 10_000, seed=s).half_width
               for s in range(100))
    assert hits >= 99


def test_monte_carlo_reproducible():
    S = minkowski_sum(TRIANGLE, Ball((0, 0), 0.3))
    assert volume(S, 30_000, seed=4) == volume(S, 30_000, seed=4)
    with pytest.raises(ValueError):
        volume(S, 100)


def test_hoeffding():
    assert hoeffding(10_000) == pytest.approx(math.sqrt(math.log(200) / 20_000))
    assert hoeffding(40_000) == pytest.approx(hoeffding(10_000) / 2)


def test_volume_bounds_examples():
    vb = volume_bounds(Box((0, 0), (2, 2)), Box((0, 0), (1, 1)))
    assert (vb.lower, vb.upper) == (4, 9)
    vb = volume_bounds(Ball((0, 0), 1), Ball((0, 0), 1), samples=200_000)
    assert vb.lower == 1
    assert abs(vb.upper - 4) <= vb.upper_slack
    vb = volume_bounds(TRIANGLE, HEX)
    assert vb.lower == 1 and vb.upper == pytest.approx(11 / 3)


def test_ceilings():
    assert hadwiger_ceiling(1)["symmetric"] == 2
    c2 = hadwiger_ceiling(2)
    assert (c2["symmetric"], c2["general"]) == (4, 6) and "classical_symmetric" not in c2
    assert hadwiger_ceiling(3)["classical_symmetric"] == pytest.approx(148.62, abs=0.01)
    for n in range(2, 10):
        c = hadwiger_ceiling(n)
        assert c["symmetric"] < c["general"]
    with pytest.raises(ValueError):
        hadwiger_ceiling(0)


def test_certificate_examples():
    sq = Box((-1, -1), (1, 1))
    assert certificate_ratio(sq, (0, 0), 4.0) == (4.0, 0.0)
    assert certificate_ratio(Box((-1,), (1,)), (1,), 2.0)[0] == 1.0
    lens = 2 * math.pi / 3 - math.sqrt(3) / 2
    r, s = certificate_ratio(Ball((0, 0), 1), (1, 0), math.pi, samples=200_000)
    assert abs(r - 4 * lens / math.pi) <= s


def test_intersection_volume_box_exact():
    v = intersection_volume(Box((-1, -1), (1, 1)), (0.5, -1.5))
    assert v.value == pytest.approx(1.5 * 0.5) and v.method == "exact"
    assert intersection_volume(Ball((0, 0), 1), (3, 0)).value == 0


def test_symmetric_certificate_reports():
    rep = symmetric_hadwiger_certificate(Box((-1, -1), (1, 1)), n_points=50)
    assert rep.passed and rep.minimum == pytest.approx(1.0)
    rep = symmetric_hadwiger_certificate(Ball((0, 0), 1), n_points=40, samples=20_000)
    assert rep.passed and rep.minimum > 1.4
    with pytest.raises(GeometryError):
        symmetric_hadwiger_certificate(TRIANGLE, n_points=10)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.2, 2), st.floats(0.2, 2), st.floats(0.2, 2), st.floats(0.2, 2))
def test_box_bounds_sandwich_true_value(a, b, c, d):
    # K = [0,a]x[0,b], T = [0,c]x[0,d]; the cover number ceil(a/c) ceil(b/d) is above the
    # volume lower bound and the fractional value below the upper one
    vb = volume_bounds(Box((0, 0), (a, b)), Box((0, 0), (c, d)))
    assert vb.lower <= math.ceil(a / c - 1e-12) * math.ceil(b / d - 1e-12) + 1e-9
    assert vb.upper == pytest.approx((a + c) * (b + d) / (c * d))
    assert vb.lower <= vb.upper
