"""Volumes and the closed-form bounds built on them.

Monte Carlo estimates carry a two-sided 99% Hoeffding half-width
``sqrt(ln(2/0.01) / (2N)) * Vol(box)``, which needs no distributional
assumption.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np
from scipy.spatial import ConvexHull
from scipy.special import gamma

from .geometry import (Ball, Box, ConvexBody, CrossPolytope, GeometryError, Negated, Scaled,
                       Translated, VSimplex, minkowski_sum, negate)

CONFIDENCE = 0.99
MIN_SAMPLES = 10_000
BLOCK = 100_000


def default_samples(dim: int) -> int:
    return 1_000_000 if dim <= 3 else 10_000_000


def hoeffding(samples: int, alpha: float = 1.0 - CONFIDENCE) -> float:
    return math.sqrt(math.log(2.0 / alpha) / (2.0 * samples))


@dataclass(frozen=True)
class VolumeEstimate:
    value: float
    half_width: float
    samples: int
    method: str                  # exact | monte_carlo

    def to_json(self) -> dict[str, Any]:
        return {"value": self.value, "half_width": self.half_width,
                "samples": self.samples, "method": self.method}


def _exact_volume(body: ConvexBody) -> float | None:
    if isinstance(body, Box):
        return float(np.prod(np.asarray(body.hi) - np.asarray(body.lo)))
    if isinstance(body, Ball):
        n = body.dim
        return math.pi ** (n / 2) / gamma(n / 2 + 1) * body.radius ** n
    if isinstance(body, VSimplex):
        return body.volume()
    if isinstance(body, CrossPolytope):
        return (2.0 * body.radius) ** body.dim / math.factorial(body.dim)
    if isinstance(body, Scaled):
        inner = _exact_volume(body.body)
        return None if inner is None else inner * body.factor ** body.dim
    if isinstance(body, (Translated, Negated)):
        return _exact_volume(body.body)
    nf = body.normal_form
    if nf.r == 0.0 and nf.vertices is not None:
        if body.dim == 1:
            return float(np.ptp(nf.vertices))
        return float(ConvexHull(nf.vertices).volume)
    return None


def _mc_hits(body: ConvexBody, lo, hi, samples: int, seed: int, other=None,
             shift=None) -> int:
    """Count uniform points of the box ``[lo, hi]`` inside ``body`` (and ``other + shift``)."""
    hits = 0
    for blk, start in enumerate(range(0, samples, BLOCK)):
        m = min(BLOCK, samples - start)
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(blk,))))
        U = rng.uniform(lo, hi, size=(m, len(lo)))
        inside = body.contains_many(U, 0.0)
        if other is not None:
            inside &= other.contains_many(U - shift, 0.0)
        hits += int(inside.sum())
    return hits


def volume(body: ConvexBody, samples: int | None = None, seed: int = 0, *,
           exact: bool = True) -> VolumeEstimate:
    """Exact volume when a closed form applies, otherwise hit-or-miss Monte Carlo."""
    if exact:
        v = _exact_volume(body)
        if v is not None:
            return VolumeEstimate(v, 0.0, 0, "exact")
    samples = default_samples(body.dim) if samples is None else int(samples)
    if samples < MIN_SAMPLES:
        raise ValueError(f"need at least {MIN_SAMPLES} samples, got {samples}")
    bb = body.bounding_box()
    lo, hi = np.asarray(bb.lo), np.asarray(bb.hi)
    box = float(np.prod(hi - lo))
    hits = _mc_hits(body, lo, hi, samples, seed)
    return VolumeEstimate(box * hits / samples, hoeffding(samples) * box, samples, "monte_carlo")


@dataclass(frozen=True)
class VolumeBounds:
    lower: float
    upper: float
    lower_slack: float
    upper_slack: float
    vol_K: VolumeEstimate
    vol_T: VolumeEstimate
    vol_K_minus_T: VolumeEstimate

    def to_json(self) -> dict[str, Any]:
        return {"lower": self.lower, "upper": self.upper, "lower_slack": self.lower_slack,
                "upper_slack": self.upper_slack, "vol_K": self.vol_K.to_json(),
                "vol_T": self.vol_T.to_json(), "vol_K_minus_T": self.vol_K_minus_T.to_json()}


def _ratio(a: VolumeEstimate, b: VolumeEstimate) -> tuple[float, float]:
    """``a/b`` and the widest deviation over the two confidence intervals."""
    r = a.value / b.value
    if a.half_width == 0.0 and b.half_width == 0.0:
        return r, 0.0
    if b.value - b.half_width <= 0:
        return r, math.inf
    hi = (a.value + a.half_width) / (b.value - b.half_width)
    lo = max(a.value - a.half_width, 0.0) / (b.value + b.half_width)
    return r, max(hi - r, r - lo)


def volume_bounds(K: ConvexBody, T: ConvexBody, samples: int | None = None,
                  seed: int = 0) -> VolumeBounds:
    """``max(Vol K / Vol T, 1) <= N*(K, T) <= Vol(K - T) / Vol T``."""
    vK = volume(K, samples, seed)
    vT = volume(T, samples, seed + 1)
    vD = volume(minkowski_sum(K, negate(T)), samples, seed + 2)
    lo, lo_s = _ratio(vK, vT)
    up, up_s = _ratio(vD, vT)
    if lo < 1.0:
        lo, lo_s = 1.0, 0.0 if lo + lo_s < 1.0 else lo_s
    return VolumeBounds(lo, up, lo_s, up_s, vK, vT, vD)


def hadwiger_ceiling(n: int) -> dict[str, float]:
    """Fractional ceilings ``2^n`` (symmetric) and ``C(2n, n)`` (general), plus the
    classical symmetric bound ``2^n (n ln n + n ln ln n + 5n)`` for ``n >= 3``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    out = {"symmetric": float(2 ** n), "general": float(math.comb(2 * n, n))}
    if n >= 3:
        out["classical_symmetric"] = 2 ** n * (n * math.log(n) + n * math.log(math.log(n)) + 5 * n)
    return out


def intersection_volume(K: ConvexBody, x, samples: int = 20_000, seed: int = 0,
                        alpha: float = 1.0 - CONFIDENCE) -> VolumeEstimate:
    """``Vol(K & (x + K))``: exact for boxes, else joint membership sampling."""
    x = np.asarray(x, dtype=float).reshape(K.dim)
    if isinstance(K, Box):
        lo = np.maximum(np.asarray(K.lo), np.asarray(K.lo) + x)
        hi = np.minimum(np.asarray(K.hi), np.asarray(K.hi) + x)
        return VolumeEstimate(float(np.prod(np.clip(hi - lo, 0.0, None))), 0.0, 0, "exact")
    bb = K.bounding_box()
    lo = np.maximum(np.asarray(bb.lo), np.asarray(bb.lo) + x)
    hi = np.minimum(np.asarray(bb.hi), np.asarray(bb.hi) + x)
    if np.any(hi <= lo):
        return VolumeEstimate(0.0, 0.0, 0, "exact")
    box = float(np.prod(hi - lo))
    hits = _mc_hits(K, lo, hi, samples, seed, other=K, shift=x)
    return VolumeEstimate(box * hits / samples, hoeffding(samples, alpha) * box, samples,
                          "monte_carlo")


@dataclass
class CertificateReport:
    minimum: float
    minimum_slack: float
    argmin: list[float]
    ratios: list[float]
    slacks: list[float]
    flagged: int
    points: int
    samples: int
    seed: int

    @property
    def passed(self) -> bool:
        return self.flagged == 0

    def to_json(self) -> dict[str, Any]:
        return {"minimum": self.minimum, "minimum_slack": self.minimum_slack,
                "argmin": self.argmin, "flagged": self.flagged, "points": self.points,
                "samples": self.samples, "seed": self.seed, "passed": self.passed}


def _check_symmetric(K: ConvexBody, seed: int, tol: float = 1e-6) -> None:
    rng = np.random.default_rng(seed)
    bb = K.bounding_box()
    X = rng.uniform(bb.lo, bb.hi, size=(4000, K.dim))
    a = K.contains_many(X, -tol)
    b = K.contains_many(-X, -tol)
    # only compare points clear of the boundary
    clear = a == K.contains_many(X, tol)
    clear &= b == K.contains_many(-X, tol)
    if np.any(a[clear] != b[clear]):
        raise GeometryError("K is not centrally symmetric about the origin")


def certificate_ratio(K: ConvexBody, x, vol_K: float, samples: int = 20_000, seed: int = 0,
                      alpha: float = 1.0 - CONFIDENCE) -> tuple[float, float]:
    """``2^n Vol(K & (x + K)) / Vol K`` and its confidence slack."""
    est = intersection_volume(K, x, samples, seed, alpha)
    f = 2 ** K.dim / vol_K
    return f * est.value, f * est.half_width


def symmetric_hadwiger_certificate(K: ConvexBody, n_points: int = 500, samples: int = 20_000,
                                   seed: int = 0) -> CertificateReport:
    """Check that density ``2^n / Vol K`` on ``K`` covers ``K`` by ``int K``.

    That holds iff ``2^n Vol(K & (x + K)) >= Vol K`` for ``x`` in ``K``; the
    minimum over sampled ``x`` (vertices included for polytopes) is reported.
    Slacks use a Bonferroni split of the 1% error over all points.
    """
    _check_symmetric(K, seed)
    vK = volume(K, max(samples, MIN_SAMPLES), seed)
    if vK.half_width > 0:
        raise GeometryError("the certificate needs an exact volume for K")
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(1 << 20,)))
    bb = K.bounding_box()
    pts = []
    while len(pts) < n_points:
        X = rng.uniform(bb.lo, bb.hi, size=(4 * n_points, K.dim))
        pts.extend(X[K.contains_many(X, 0.0)][: n_points - len(pts)])
    nf = K.normal_form
    if nf.vertices is not None and nf.r == 0.0:
        pts.extend(nf.vertices + nf.c)
    alpha = (1.0 - CONFIDENCE) / len(pts)
    ratios, slacks = [], []
    for i, x in enumerate(pts):
        r, s = certificate_ratio(K, x, vK.value, samples, seed + 1 + i, alpha)
        ratios.append(r)
        slacks.append(s)
    ratios_a, slacks_a = np.array(ratios), np.array(slacks)
    k = int(np.argmin(ratios_a))
    flagged = int(np.sum(ratios_a < 1.0 - slacks_a - 1e-12))
    return CertificateReport(float(ratios_a[k]), float(slacks_a[k]), list(map(float, pts[k])),
                             ratios, slacks, flagged, len(pts), samples, seed)
