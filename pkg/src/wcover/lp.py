"""Discretized covering and separation linear programs.

Rows are constraint points ``x_i``, columns candidate centres ``x_j``, and
``M[i, j] = 1`` iff ``x_i in x_j + T``.  With ``c_i = 1`` iff ``x_i in K`` and
``b = 1``::

    cover:       min <b, x>  s.t.  M x >= c,    x >= 0
    separation:  max <c, y>  s.t.  M^T y <= b,  y >= 0

are a primal/dual pair, so their optimal values agree.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.optimize import linprog

from . import kernels
from .geometry import DEFAULT_TOL, ConvexBody, DimensionMismatch
from .simplex import solve_packing

log = logging.getLogger(__name__)

FEAS_TOL = 1e-9
GAP_TOL = 1e-7
HIGHS_OPTIONS = {"primal_feasibility_tolerance": 1e-10,
                 "dual_feasibility_tolerance": 1e-10}
# instances at most this large go to the in-house simplex under solver="auto"
SMALL_LP = 60 * 60


class LPError(RuntimeError):
    pass


class UncoverablePoint(LPError):
    def __init__(self, index: int, point):
        super().__init__(f"constraint point {index} at {np.round(point, 12).tolist()} "
                         "lies in K but in no candidate translate")
        self.index = index
        self.point = point


@dataclass
class CoverLP:
    M: sp.csr_matrix
    c: np.ndarray
    b: np.ndarray
    centers: np.ndarray
    constraint_points: np.ndarray
    primal_value: float | None = None
    primal_weights: np.ndarray | None = None
    dual_value: float | None = None
    dual_weights: np.ndarray | None = None
    status: str = "built"
    info: dict = field(default_factory=dict)

    @property
    def shape(self):
        return self.M.shape

    def primal_feasible(self, x, tol: float = FEAS_TOL) -> bool:
        return bool(np.all(self.M @ x >= self.c - tol)) and bool(np.all(x >= -tol))

    def dual_feasible(self, y, tol: float = FEAS_TOL) -> bool:
        return bool(np.all(self.M.T @ y <= self.b + tol)) and bool(np.all(y >= -tol))

    def to_triplets(self, path) -> None:
        """Write ``rows cols nnz`` then one ``row col value`` line per entry (0-based)."""
        coo = self.M.tocoo()
        with open(path, "w") as fh:
            fh.write(f"{self.M.shape[0]} {self.M.shape[1]} {coo.nnz}\n")
            for i, j, v in zip(coo.row, coo.col, coo.data):
                fh.write(f"{i} {j} {v:g}\n")


def membership_matrix(rows: np.ndarray, cols: np.ndarray, body: ConvexBody,
                      tol: float = DEFAULT_TOL, workers: int = 1) -> sp.csr_matrix:
    """0/1 matrix with entry ``(i, j)`` set iff ``rows[i] - cols[j]`` lies in ``body``."""
    nf = body.normal_form
    rows = np.ascontiguousarray(rows, dtype=float)
    cols = np.ascontiguousarray(cols, dtype=float)

    def block(R):
        if nf.A is None:
            return kernels.pair_ball_mask(np.ascontiguousarray(R - nf.c), cols,
                                          (nf.r + tol) ** 2)
        P = np.ascontiguousarray(R @ nf.A.T)
        Q = np.ascontiguousarray(cols @ nf.A.T + (nf.A @ nf.c + nf.b))
        hi = nf.r + tol if nf.r > 0 else tol
        out = kernels.pair_excess_classify(P, Q, tol, hi)
        amb_i, amb_j = np.nonzero(out == 2)
        if len(amb_i):
            Z = R[amb_i] - cols[amb_j] - nf.c
            # grid nets repeat difference vectors; decide each distinct one once
            _, first, inv = np.unique(np.round(Z, 11), axis=0, return_index=True,
                                      return_inverse=True)
            hit = nf.dist_many(Z[first]) <= nf.r + tol
            out[amb_i, amb_j] = hit[inv.ravel()].astype(np.uint8)
        return out

    if workers > 1 and len(rows) > 256:
        chunks = np.array_split(np.arange(len(rows)), workers)
        with ThreadPoolExecutor(workers) as ex:
            parts = list(ex.map(lambda idx: block(rows[idx]), chunks))
        dense = np.vstack(parts)
    else:
        dense = block(rows)
    return sp.csr_matrix(dense, dtype=np.float64)


def build_cover_lp(centers, constraint_points, T: ConvexBody, K: ConvexBody,
                   tol: float = DEFAULT_TOL, workers: int = 1) -> CoverLP:
    centers = np.asarray(centers, dtype=float)
    cons = np.asarray(constraint_points, dtype=float)
    # flat lists of scalars are 1-D points
    centers = centers.reshape(-1, 1) if centers.ndim <= 1 else centers
    cons = cons.reshape(-1, 1) if cons.ndim <= 1 else cons
    if centers.size == 0 or cons.size == 0:
        raise LPError("point lists must be nonempty")
    if centers.shape[1] != T.dim or cons.shape[1] != T.dim or K.dim != T.dim:
        raise DimensionMismatch("points, T and K must share a dimension")
    M = membership_matrix(cons, centers, T, tol, workers)
    c = K.contains_many(cons, tol).astype(float)
    return CoverLP(M, c, np.ones(len(centers)), centers, cons)


def _check_coverable(lp: CoverLP):
    covered = np.asarray(lp.M.sum(axis=1)).ravel() > 0
    bad = np.nonzero((lp.c > 0) & ~covered)[0]
    if len(bad):
        i = int(bad[0])
        raise UncoverablePoint(i, lp.constraint_points[i])


def _pick(lp: CoverLP, solver: str) -> str:
    if solver != "auto":
        return solver
    return "simplex" if lp.M.shape[0] * lp.M.shape[1] <= SMALL_LP else "highs"


def _reduced(lp: CoverLP):
    rows = np.nonzero(lp.c > 0)[0]
    Mr = lp.M[rows]
    return rows, Mr


def solve_primal(lp: CoverLP, solver: str = "auto") -> tuple[float, np.ndarray]:
    """Optimal weighted cover.  Also stores a dual certificate on ``lp``."""
    _check_coverable(lp)
    rows, Mr = _reduced(lp)
    nrow, ncol = lp.M.shape
    solver = _pick(lp, solver)
    if len(rows) == 0:
        x, y, value = np.zeros(ncol), np.zeros(nrow), 0.0
    elif solver in ("simplex", "exact"):
        res = solve_packing(Mr.T.toarray(), lp.b, np.ones(len(rows)), exact=solver == "exact")
        x = res.x.astype(float) if solver == "exact" else res.x
        y = np.zeros(nrow)
        y[rows] = np.asarray(res.y, dtype=float)
        value = res.value
        if solver == "exact":
            lp.info["exact_value"] = res.value
            value = float(res.value)
    elif solver == "highs":
        res = linprog(lp.b, A_ub=-Mr, b_ub=-np.ones(len(rows)), bounds=(0, None),
                      method="highs-ds", options=HIGHS_OPTIONS)
        if res.status != 0:
            raise LPError(f"cover LP failed: {res.message}")
        x = np.maximum(res.x, 0.0)
        y = np.zeros(nrow)
        y[rows] = np.maximum(-res.ineqlin.marginals, 0.0)
        value = float(res.fun)
    else:
        raise ValueError(f"unknown solver {solver!r}")
    lp.primal_value, lp.primal_weights = float(value), x
    lp.info["primal_certificate"] = y
    lp.info["primal_solver"] = solver
    lp.status = "solved"
    return float(value), x


def solve_dual(lp: CoverLP, solver: str = "auto") -> tuple[float, np.ndarray]:
    """Optimal separated measure on the constraint points (packing LP)."""
    rows, Mr = _reduced(lp)
    nrow, ncol = lp.M.shape
    solver = _pick(lp, solver)
    if len(rows) == 0:
        y, x, value = np.zeros(nrow), np.zeros(ncol), 0.0
    elif solver in ("simplex", "exact"):
        res = solve_packing(Mr.T.toarray(), lp.b, np.ones(len(rows)), exact=solver == "exact")
        y = np.zeros(nrow)
        y[rows] = np.asarray(res.y, dtype=float)
        x = np.asarray(res.x, dtype=float)
        value = float(res.value)
    elif solver == "highs":
        res = linprog(-np.ones(len(rows)), A_ub=Mr.T.tocsr(), b_ub=lp.b, bounds=(0, None),
                      method="highs-ds", options=HIGHS_OPTIONS)
        if res.status != 0:
            raise LPError(f"separation LP failed: {res.message}")
        y = np.zeros(nrow)
        y[rows] = np.maximum(res.x, 0.0)
        x = np.maximum(-res.ineqlin.marginals, 0.0)
        value = float(-res.fun)
    else:
        raise ValueError(f"unknown solver {solver!r}")
    lp.dual_value, lp.dual_weights = float(value), y
    lp.info["dual_certificate"] = x
    lp.info["dual_solver"] = solver
    lp.status = "solved"
    return float(value), y


def duality_gap(lp: CoverLP) -> float:
    return abs(lp.primal_value - lp.dual_value)


def duality_ok(lp: CoverLP, tol: float = GAP_TOL) -> bool:
    return duality_gap(lp) <= tol * (1.0 + abs(lp.primal_value))
