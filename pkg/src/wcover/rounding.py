"""Randomised rounding of a weighted cover into a classical one.

Given atoms ``(x_i, w_i)`` whose translates ``x_i + T1`` cover every centre
``y_k`` of a classical cover of ``K`` by ``T2``, each atom is replaced by
``ceil(w_i * M)`` copies of weight ``1/M``.  Every copy is kept independently
with probability ``p = S/M``.  A trial is accepted when the kept copies still
cover every ``y_k`` and their number is at most ``L * S * (N + 1)``; then the
kept centres cover ``K`` by ``T1 + T2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .covering import IntegralCover, WeightedCover, classical_cover_greedy
from .geometry import ConvexBody, minkowski_sum
from .lp import build_cover_lp, membership_matrix, solve_primal
from .nets import DEFAULT_BUDGET, grid_net

RNG_ALGORITHM = "numpy.random.PCG64 via SeedSequence(seed, spawn_key=(trial,))"


class RoundingFailure(RuntimeError):
    def __init__(self, trials: int, coverage_failures: int, size_failures: int):
        super().__init__(f"no accepted cover in {trials} trials "
                         f"({coverage_failures} missed a net point, "
                         f"{size_failures} exceeded the size bound)")
        self.trials = trials
        self.coverage_failures = coverage_failures
        self.size_failures = size_failures


@dataclass(frozen=True)
class RoundingParams:
    M_denom: int
    S: float
    N_plus1: float
    L: float
    p: float
    size_bound: float
    seed: int
    max_retries: int = 1000
    slack: float = 0.0           # theorem bound at the rounded weight minus at the LP weight

    def __post_init__(self):
        if not (0.0 < self.p <= 1.0 and self.L > 1.0 and self.S > 0.0):
            raise ValueError("need 0 < p <= 1, L > 1 and S > 0")


def theorem_bound(fractional_value: float, nbar2: int) -> float:
    """``S (v + 1) + sqrt(S (v + 1))`` with ``S = ln(4 nbar2)``."""
    if nbar2 < 1:
        raise ValueError("nbar2 must be at least 1")
    a = math.log(4.0 * nbar2) * (fractional_value + 1.0)
    return a + math.sqrt(a)


def rationalize_weights(cover: WeightedCover, precision: float
                        ) -> tuple[np.ndarray, np.ndarray, int]:
    """Round weights up to multiples of ``1/M`` with ``M = ceil(1/precision)``.

    Returns the atom points, their integer multiplicities and ``M``.
    """
    if not precision > 0:
        raise ValueError("precision must be positive")
    M = math.ceil(1.0 / precision)
    # guard against w*M landing a hair above an integer through float error
    mult = np.ceil(np.asarray(cover.weights, dtype=float) * M - 1e-9).astype(np.int64)
    mult = np.maximum(mult, 1)
    return np.asarray(cover.points, dtype=float), mult, M


def make_params(fractional_value: float, rounded_value: float, nbar2: int, M_denom: int,
                seed: int, max_retries: int = 1000) -> RoundingParams:
    S = math.log(4.0 * nbar2)
    n1 = math.floor(rounded_value) + 1.0
    L = 1.0 + 1.0 / math.sqrt(S * n1)
    return RoundingParams(M_denom=M_denom, S=S, N_plus1=n1, L=L, p=min(1.0, S / M_denom),
                          size_bound=L * S * n1, seed=int(seed), max_retries=max_retries,
                          slack=theorem_bound(rounded_value, nbar2)
                          - theorem_bound(fractional_value, nbar2))


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(trial,))))


@dataclass
class RoundingResult:
    cover: IntegralCover
    params: RoundingParams
    trials_used: int
    copies_kept: int
    fractional_value: float
    rounded_value: float
    nbar2: int
    failures: dict = field(default_factory=dict)

    @property
    def bound(self) -> float:
        return theorem_bound(self.fractional_value, self.nbar2) + self.params.slack

    def to_json(self) -> dict[str, Any]:
        p = self.params
        return {"centers": self.cover.centers.tolist(), "size": self.cover.size,
                "copies_kept": self.copies_kept, "size_bound": p.size_bound,
                "bound": self.bound, "fractional_value": self.fractional_value,
                "rounded_value": self.rounded_value, "nbar2": self.nbar2,
                "S": p.S, "L": p.L, "p": p.p, "M_denom": p.M_denom, "N_plus1": p.N_plus1,
                "rationalization_slack": p.slack, "seed": p.seed,
                "trials_used": self.trials_used, "rng": RNG_ALGORITHM,
                "failures": self.failures}


def sample_integral_cover(K: ConvexBody, T1: ConvexBody, T2: ConvexBody, cover: WeightedCover,
                          params: RoundingParams, net_points, *,
                          multiplicities: np.ndarray | None = None) -> RoundingResult:
    """Run seeded trials until one passes both acceptance tests.

    ``net_points`` are the centres ``y_k`` of a classical cover of ``K`` by
    ``T2``; ``cover`` must cover each of them by ``T1``.
    """
    Y = np.atleast_2d(np.asarray(net_points, dtype=float)).reshape(-1, K.dim)
    pts = np.asarray(cover.points, dtype=float)
    if multiplicities is None:
        multiplicities = np.ceil(np.asarray(cover.weights) * params.M_denom - 1e-9).astype(np.int64)
    mult = np.asarray(multiplicities, dtype=np.int64)
    hits = membership_matrix(Y, pts, T1).tocsc()          # y_k in x_i + T1
    if np.any(np.asarray(hits @ mult).ravel() < params.M_denom):
        raise ValueError("the weighted cover does not cover every net point")
    cov_fail = size_fail = 0
    for trial in range(params.max_retries):
        rng = trial_rng(params.seed, trial)
        kept = rng.binomial(mult, params.p)
        chosen = kept > 0
        covered = np.asarray(hits[:, chosen].sum(axis=1)).ravel() > 0
        if not covered.all():
            cov_fail += 1
            continue
        if kept.sum() > params.size_bound:
            size_fail += 1
            continue
        centers = pts[chosen]
        ic = IntegralCover(centers, minkowski_sum(T1, T2), True, int(
            np.asarray(hits[:, chosen].sum(axis=1)).min()), len(Y), "T2-net by T1")
        return RoundingResult(ic, params, trial + 1, int(kept.sum()), cover.total_weight,
                              cover.total_weight, 0,
                              {"coverage": cov_fail, "size": size_fail})
    raise RoundingFailure(params.max_retries, cov_fail, size_fail)


@dataclass
class RoundingInput:
    """Everything the sampler needs, independent of the seed."""
    cover: WeightedCover          # rationalised weights
    multiplicities: np.ndarray
    M_denom: int
    net_points: np.ndarray        # centres of the classical T2 cover
    nbar2: int
    fractional_value: float


def prepare_rounding(K: ConvexBody, T1: ConvexBody, T2: ConvexBody, delta: float, *,
                     precision: float = 1e-3, solver: str = "auto",
                     budget: int = DEFAULT_BUDGET) -> RoundingInput:
    """Classical T2 cover, weighted T1 cover of its centres and of a net, rationalised."""
    t2 = classical_cover_greedy(K, T2, delta, budget=budget)
    Y = t2.centers
    net = grid_net(K, delta, budget=budget)
    rows = np.vstack([net.points, Y])
    lp = build_cover_lp(net.points, rows, T1, K)
    _, x = solve_primal(lp, solver)
    keep = x > 1e-12
    frac = WeightedCover(net.points[keep], x[keep], T1)
    frac.verify(Y)
    pts, mult, M = rationalize_weights(frac, precision)
    rounded = WeightedCover(pts, mult / M, T1)
    return RoundingInput(rounded, mult, M, Y, t2.size, frac.total_weight)


def round_prepared(K: ConvexBody, T1: ConvexBody, T2: ConvexBody, prep: RoundingInput, *,
                   seed: int = 0, max_retries: int = 1000) -> RoundingResult:
    params = make_params(prep.fractional_value, prep.cover.total_weight, prep.nbar2,
                         prep.M_denom, seed, max_retries)
    res = sample_integral_cover(K, T1, T2, prep.cover, params, prep.net_points,
                                multiplicities=prep.multiplicities)
    res.fractional_value = prep.fractional_value
    res.rounded_value = prep.cover.total_weight
    res.nbar2 = prep.nbar2
    return res


def round_cover(K: ConvexBody, T1: ConvexBody, T2: ConvexBody, delta: float, *,
                precision: float = 1e-3, seed: int = 0, max_retries: int = 1000,
                solver: str = "auto", budget: int = DEFAULT_BUDGET) -> RoundingResult:
    """Full pipeline: classical T2 cover, weighted T1 cover, rationalise, sample."""
    prep = prepare_rounding(K, T1, T2, delta, precision=precision, solver=solver,
                            budget=budget)
    return round_prepared(K, T1, T2, prep, seed=seed, max_retries=max_retries)
