"""Covering and separation numbers of a finite metric space.

Balls are closed, ``B(x, eps) = {y : d(x, y) <= eps}``, and every centre is
a point of the space.  Rows of the ball matrix are points to be covered,
columns candidate centres, exactly as in the convex-body LPs, so the same
solvers and the same exact set-cover search apply.
"""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import networkx as nx
import numpy as np
import scipy.sparse as sp

from .covering import classical_cover_exact_small
from .lp import GAP_TOL, CoverLP, solve_dual, solve_primal

TRIANGLE_TOL = 1e-9
LP_TOL = 1e-9
# exact search limits; past them integer fields become bounds
MAX_NODES = 50_000
MAX_CLIQUE_POINTS = 400


class MetricError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteMetric:
    dist: np.ndarray
    K_indices: tuple[int, ...]

    def __post_init__(self):
        D = np.asarray(self.dist, dtype=float)
        if D.ndim != 2 or D.shape[0] != D.shape[1] or D.shape[0] == 0:
            raise MetricError("distance matrix must be square and nonempty")
        if not np.all(np.isfinite(D)) or np.any(D < 0):
            raise MetricError("distances must be finite and nonnegative")
        if np.any(np.diag(D) != 0):
            raise MetricError("diagonal must be zero")
        if not np.allclose(D, D.T, rtol=0.0, atol=TRIANGLE_TOL):
            raise MetricError("distance matrix is not symmetric")
        # d(i,k) <= d(i,j) + d(j,k) for all triples, one pivot j at a time
        for j in range(len(D)):
            if np.any(D > D[:, j, None] + D[None, j, :] + TRIANGLE_TOL):
                raise MetricError(f"triangle inequality fails through point {j}")
        K = tuple(sorted({int(k) for k in self.K_indices}))
        if not K:
            raise MetricError("K_indices must be nonempty")
        if K[0] < 0 or K[-1] >= len(D):
            raise MetricError("K_indices out of range")
        D.setflags(write=False)
        object.__setattr__(self, "dist", D)
        object.__setattr__(self, "K_indices", K)

    @property
    def n_points(self) -> int:
        return len(self.dist)

    @property
    def K_mask(self) -> np.ndarray:
        m = np.zeros(self.n_points, dtype=bool)
        m[list(self.K_indices)] = True
        return m

    @property
    def diameter(self) -> float:
        return float(self.dist.max())

    def balls(self, eps: float) -> np.ndarray:
        """``B[i, j]`` is true iff point ``i`` lies in ``B(j, eps)``."""
        return self.dist <= eps

    @classmethod
    def from_points(cls, X, K_indices=None) -> FiniteMetric:
        X = np.asarray(X, dtype=float)
        D = np.linalg.norm(X[:, None, :] - X[None, :, :], axis=2)
        return cls(D, tuple(range(len(X))) if K_indices is None else tuple(K_indices))

    @classmethod
    def path(cls, n: int) -> FiniteMetric:
        idx = np.arange(n, dtype=float)
        return cls(np.abs(idx[:, None] - idx[None, :]), tuple(range(n)))

    @classmethod
    def load(cls, path, K_indices=None) -> FiniteMetric:
        """Read a CSV matrix (``n`` rows of ``n`` reals) or JSON ``{"dist", "K"}``."""
        path = Path(path)
        if path.suffix.lower() == ".json":
            data = json.loads(path.read_text())
            D = np.asarray(data["dist"], dtype=float)
            K = data.get("K", K_indices)
        else:
            with open(path, newline="") as fh:
                D = np.array([[float(v) for v in row] for row in csv.reader(fh) if row])
            K = K_indices
        return cls(D, tuple(range(len(D))) if K is None else tuple(K))


@dataclass
class MetricCoverReport:
    epsilon: float
    N: int
    N_bar: int
    M: int
    M_bar: int
    N_omega: float
    M_omega: float
    N_bar_omega: float
    M_bar_omega: float
    exact: dict[str, bool]
    duality_gap: float
    cover_centers: list[int] = field(default_factory=list)
    separated_points: list[int] = field(default_factory=list)

    def to_json(self) -> dict[str, Any]:
        return {"epsilon": self.epsilon, "N": self.N, "N_bar": self.N_bar, "M": self.M,
                "M_bar": self.M_bar, "N_omega": self.N_omega, "M_omega": self.M_omega,
                "N_bar_omega": self.N_bar_omega, "M_bar_omega": self.M_bar_omega,
                "exact": self.exact, "duality_gap": self.duality_gap,
                "cover_centers": self.cover_centers,
                "separated_points": self.separated_points}


def _ball_lp(space: FiniteMetric, eps: float, centers: np.ndarray) -> CoverLP:
    B = space.balls(eps)[:, centers]
    idx = np.arange(space.n_points, dtype=float).reshape(-1, 1)
    return CoverLP(sp.csr_matrix(B.astype(float)), space.K_mask.astype(float),
                   np.ones(len(centers)), idx[centers], idx)


def _cover_number(space: FiniteMetric, eps: float, centers: np.ndarray,
                  max_nodes: int) -> tuple[int, list[int], bool]:
    res = classical_cover_exact_small(_ball_lp(space, eps, centers), max_nodes)
    return res.count, [int(centers[j]) for j in res.columns], res.status == "optimal"


def _separation_number(space: FiniteMetric, eps: float, witnesses: np.ndarray
                       ) -> tuple[int, list[int], bool]:
    """Largest set of K points whose balls share no point of ``witnesses``."""
    K = np.asarray(space.K_indices)
    B = space.balls(eps)
    W = B[np.ix_(witnesses, K)].astype(np.int32)
    conflict = (W.T @ W) > 0
    if len(K) > MAX_CLIQUE_POINTS:
        # greedy maximal independent set, lowest degree first
        deg = conflict.sum(axis=1)
        chosen: list[int] = []
        free = np.ones(len(K), dtype=bool)
        for i in np.argsort(deg, kind="stable"):
            if free[i]:
                chosen.append(int(i))
                free &= ~conflict[i]
        return len(chosen), [int(K[i]) for i in chosen], False
    G = nx.Graph()
    G.add_nodes_from(range(len(K)))
    iu, ju = np.nonzero(np.triu(~conflict, 1))
    G.add_edges_from(zip(iu.tolist(), ju.tolist()))
    clique, size = nx.max_weight_clique(G, weight=None)
    return int(size), sorted(int(K[i]) for i in clique), True


def _lp_pair(space: FiniteMetric, eps: float, centers: np.ndarray, solver: str
             ) -> tuple[float, float]:
    lp = _ball_lp(space, eps, centers)
    primal, _ = solve_primal(lp, solver)
    dual, _ = solve_dual(lp, solver)
    return primal, dual


def metric_cover_numbers(space: FiniteMetric, epsilon: float, *, solver: str = "auto",
                         max_nodes: int = MAX_NODES) -> MetricCoverReport:
    """All four classical numbers and the weighted ones, for closed ``epsilon``-balls."""
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    X = np.arange(space.n_points)
    K = np.asarray(space.K_indices)
    N, centers, n_exact = _cover_number(space, epsilon, X, max_nodes)
    N_bar, _, nb_exact = _cover_number(space, epsilon, K, max_nodes)
    M, sep, m_exact = _separation_number(space, epsilon, X)
    M_bar, _, mb_exact = _separation_number(space, epsilon, K)
    # the separation LP is the dual of the cover LP: rows are K, constraints run
    # over all of X for the unbarred pair and over K for the barred pair
    N_w, M_w = _lp_pair(space, epsilon, X, solver)
    Nb_w, Mb_w = _lp_pair(space, epsilon, K, solver)
    gap = max(abs(N_w - M_w), abs(Nb_w - Mb_w))
    return MetricCoverReport(float(epsilon), N, N_bar, M, M_bar, N_w, M_w, Nb_w, Mb_w,
                             {"N": n_exact, "N_bar": nb_exact, "M": m_exact, "M_bar": mb_exact},
                             gap, centers, sep)


@dataclass
class SandwichReport:
    epsilon: float
    N_2eps: int
    N_omega: float
    N: int
    M: int
    M_omega: float
    checks: dict[str, bool]
    duality_gap: float
    exact: bool

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict[str, Any]:
        return {"epsilon": self.epsilon, "N_2eps": self.N_2eps, "N_omega": self.N_omega,
                "N": self.N, "M": self.M, "M_omega": self.M_omega, "checks": self.checks,
                "duality_gap": self.duality_gap, "exact": self.exact, "passed": self.passed}


def metric_sandwich_check(space: FiniteMetric, epsilon: float, *, solver: str = "auto"
                          ) -> SandwichReport:
    """Check ``N(2eps) <= N_w(eps) <= N(eps)`` and ``M <= M_w <= N_w``."""
    r = metric_cover_numbers(space, epsilon, solver=solver)
    N2, _, n2_exact = _cover_number(space, 2.0 * epsilon, np.arange(space.n_points), MAX_NODES)
    checks = {
        "N(2eps) <= N_omega": N2 <= r.N_omega + LP_TOL,
        "N_omega <= N": r.N_omega <= r.N + LP_TOL,
        "M <= M_omega": r.M <= r.M_omega + LP_TOL,
        "M_omega <= N_omega": r.M_omega <= r.N_omega + LP_TOL,
        "duality": r.duality_gap <= GAP_TOL * (1.0 + abs(r.N_omega)),
    }
    exact = n2_exact and r.exact["N"] and r.exact["M"]
    return SandwichReport(r.epsilon, N2, r.N_omega, r.N, r.M, r.M_omega, checks,
                          r.duality_gap, exact)


def random_euclidean(n: int, seed: int, dim: int = 2) -> FiniteMetric:
    """``n`` uniform points of the unit square (or cube) with Euclidean distances."""
    rng = np.random.default_rng(seed)
    return FiniteMetric.from_points(rng.uniform(0.0, 1.0, size=(n, dim)))


__all__ = ["FiniteMetric", "MetricCoverReport", "MetricError", "SandwichReport",
           "metric_cover_numbers", "metric_sandwich_check", "random_euclidean"]
