"""Covering numbers of convex bodies from discretized linear programs.

Upper bounds for ``N_w(K, T)`` come from covers that provably cover all of
``K``.  Two routes are used:

* erosion: a cover of a delta-net of ``K`` by an eroded body ``T_d`` with
  ``T_d + d*B`` inside ``T`` covers ``K`` by ``T``;
* exact verification: when ``K`` and ``T`` are polytopes a candidate cover by
  ``T`` itself is checked on all of ``K`` with a small mixed-integer program,
  and points it misses are added as new constraints until it passes.

The second route matters whenever optimal covers touch ``K`` only along
boundaries, where every eroded body loses a constant amount.  Lower bounds
come from separation LPs on nets of ``K - T`` with the inflated body.
"""
from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from typing import Any

import numpy as np
import scipy.sparse as sp
from scipy.optimize import Bounds, LinearConstraint, linprog, milp

from . import kernels
from .geometry import (DEFAULT_TOL, Ball, ConvexBody, GeometryError, erode,
                       minkowski_sum, negate, scale, translate)
from .lp import (CoverLP, LPError, UncoverablePoint, build_cover_lp, membership_matrix,
                 solve_dual, solve_primal)
from .nets import DEFAULT_BUDGET, grid_net

log = logging.getLogger(__name__)

# weight a MILP pattern must fall short of 1 by to count as a coverage failure
COVER_DEFICIT = 1e-5
# facet violation depth below which a MILP witness is treated as boundary noise
DEPTH_TOL = 1e-6
SUPPORT_TOL = 1e-9


@dataclass
class WeightedCover:
    points: np.ndarray
    weights: np.ndarray
    body: ConvexBody
    checked_margin: float = float("nan")
    verified: bool = False
    verification: str = "none"

    @property
    def total_weight(self) -> float:
        return float(np.sum(self.weights))

    @property
    def atoms(self) -> list[tuple[np.ndarray, float]]:
        return [(p, float(w)) for p, w in zip(self.points, self.weights)]

    def coverage(self, X, tol: float = DEFAULT_TOL) -> np.ndarray:
        """``sum_i w_i 1[x - x_i in T]`` at each row of ``X``."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if len(self.points) == 0:
            return np.zeros(len(X))
        M = membership_matrix(X, self.points, self.body, tol)
        return np.asarray(M @ self.weights).ravel()

    def verify(self, X, tol: float = DEFAULT_TOL) -> float:
        """Record the minimum coverage over ``X`` and return it."""
        cov = self.coverage(X, tol)
        self.checked_margin = float(cov.min()) if len(cov) else float("inf")
        self.verified = self.checked_margin >= 1.0 - 1e-9
        if self.verified and self.verification == "none":
            self.verification = "net"
        return self.checked_margin

    def to_json(self) -> dict[str, Any]:
        return {"atoms": [{"x": p.tolist(), "w": float(w)} for p, w in self.atoms],
                "total_weight": self.total_weight,
                "checked_margin": self.checked_margin,
                "verified": self.verified,
                "verification": self.verification}


@dataclass
class IntegralCover:
    centers: np.ndarray
    body: ConvexBody
    verified: bool = False
    min_multiplicity: int = 0
    verification_points: int = 0
    verification: str = "net"

    @property
    def size(self) -> int:
        return len(self.centers)

    def to_json(self) -> dict[str, Any]:
        return {"centers": self.centers.tolist(), "size": self.size,
                "verified": self.verified, "min_multiplicity": self.min_multiplicity,
                "verification_points": self.verification_points,
                "verification": self.verification}


@dataclass
class Bracket:
    lower: float
    upper: float
    delta: float
    lower_meaning: str
    upper_meaning: str
    warning: str | None = None
    cover: WeightedCover | None = None
    history: list[dict] = field(default_factory=list)

    @property
    def gap(self) -> float:
        return self.upper - self.lower

    def contains(self, value: float, tol: float = 1e-7) -> bool:
        return self.lower - tol <= value <= self.upper + tol

    def to_json(self) -> dict[str, Any]:
        out = {"lower": self.lower, "upper": self.upper, "gap": self.gap,
               "delta": self.delta,
               "meanings": {"lower": self.lower_meaning, "upper": self.upper_meaning},
               "warning": self.warning, "history": self.history}
        out["atoms"] = self.cover.to_json()["atoms"] if self.cover is not None else []
        return out


def _sparse_cover(lp: CoverLP, x: np.ndarray, body: ConvexBody) -> WeightedCover:
    keep = x > SUPPORT_TOL
    return WeightedCover(lp.centers[keep], x[keep], body)


def _is_polytope(body: ConvexBody) -> bool:
    nf = body.normal_form
    return nf.A is not None and nf.r == 0.0


def _centred(T: ConvexBody) -> tuple[ConvexBody, np.ndarray]:
    """``T`` moved so its interior point sits at the origin, and the shift used.

    Separation numbers do not see translations of ``T``, but the nets do: with
    ``0`` in ``T`` the net of ``K + T`` contains ``K``, so every net point of
    ``K`` there can carry mass.
    """
    t0 = np.asarray(T.interior_point, dtype=float)
    if not np.any(t0):
        return T, t0
    return translate(T, -t0), t0


def center_net(K: ConvexBody, T: ConvexBody, delta: float, centers: str = "K",
               budget: int = DEFAULT_BUDGET):
    """Candidate centres: a net of ``K`` (restricted) or of ``K - T`` (unrestricted).

    Every translate ``x + T`` meeting ``K`` has ``x`` in ``K - T``.
    """
    if centers == "K":
        return grid_net(K, delta, budget=budget)
    if centers == "unrestricted":
        return grid_net(minkowski_sum(K, negate(T)), delta, budget=budget)
    raise ValueError(f"centers must be 'K' or 'unrestricted', got {centers!r}")


def fractional_cover_on_net(K: ConvexBody, T: ConvexBody, delta: float, *,
                            centers: str = "K", solver: str = "auto", workers: int = 1,
                            budget: int = DEFAULT_BUDGET) -> tuple[WeightedCover, float]:
    """Optimal weighted cover of a delta-net of ``K`` by translates of ``T``.

    The value bounds ``N_w(K, T + delta*B)`` from above.  With
    ``centers="K"`` the atoms lie in the net itself.
    """
    net = grid_net(K, delta, budget=budget)
    cols = net.points if centers == "K" else center_net(K, T, delta, centers, budget).points
    lp = build_cover_lp(cols, net.points, T, K, workers=workers)
    value, x = solve_primal(lp, solver)
    cover = _sparse_cover(lp, x, T)
    cover.verify(net.points)
    return cover, value


def separation_lp(K: ConvexBody, T: ConvexBody, delta: float, *, workers: int = 1,
                  budget: int = DEFAULT_BUDGET) -> CoverLP:
    """Separation LP on a net of ``K + T`` with body ``-T + delta*B``.

    A measure ``nu`` on ``K`` is ``T``-separated when ``nu * 1_T <= 1``, that is
    every translate ``x - T`` carries mass at most one.  Such a translate can
    only meet ``K`` when ``x`` lies in ``K + T``, hence within ``delta`` of a
    net point ``x_j``, and then ``x - T`` lies inside ``x_j - T + delta*B``.
    """
    T, _ = _centred(T)
    net = grid_net(minkowski_sum(K, T), delta, budget=budget)
    body = minkowski_sum(negate(T), Ball(np.zeros(T.dim), net.radius))
    return build_cover_lp(net.points, net.points, body, K, workers=workers)


def fractional_separation_on_net(K: ConvexBody, T: ConvexBody, delta: float, *,
                                 solver: str = "auto", workers: int = 1,
                                 budget: int = DEFAULT_BUDGET) -> float:
    """A lower bound on ``M_w(K, T)`` from the separation LP."""
    lp = separation_lp(K, T, delta, workers=workers, budget=budget)
    if not np.any(lp.c > 0):
        return 0.0
    value, _ = solve_dual(lp, solver)
    return value


# -- exact verification ------------------------------------------------------

@dataclass
class ExactCheck:
    status: str                      # verified | refuted | unsupported | inconclusive
    depth: float = 0.0
    witness: np.ndarray | None = None
    note: str = ""


def _support(nf, u: np.ndarray) -> float:
    h = float(u @ nf.c) + nf.r * float(np.linalg.norm(u))
    if nf.vertices is not None:
        h += float(np.max(nf.vertices @ u))
    return h


def containing_translates(K: ConvexBody, T: ConvexBody, X,
                          tol: float = DEFAULT_TOL) -> np.ndarray | None:
    """Mask of rows ``x`` of ``X`` with ``K <= x + T``.

    Exact when ``T`` is a polytope (support numbers of ``K`` against the facets
    of ``T``) or a ball (farthest point of ``K``); ``None`` otherwise.
    """
    nK, nT = K.normal_form, T.normal_form
    X = np.atleast_2d(np.asarray(X, dtype=float)).reshape(-1, K.dim)
    if nT.A is None:
        V = nK.vertices + nK.c if nK.vertices is not None else nK.c[None, :]
        D = X[:, None, :] + nT.c - V[None, :, :]
        far = np.linalg.norm(D, axis=2).max(axis=1) + nK.r
        return far <= nT.r + tol
    if nT.r != 0.0:
        return None
    need = np.array([_support(nK, a) for a in nT.A]) - nT.A @ nT.c - nT.b
    return np.all(X @ nT.A.T >= need - tol, axis=1)


def translate_contains(K: ConvexBody, T: ConvexBody, x, tol: float = DEFAULT_TOL) -> bool | None:
    """Decide ``K <= x + T`` exactly when ``T`` is a polytope or a ball, else ``None``."""
    mask = containing_translates(K, T, x, tol)
    return None if mask is None else bool(mask[0])


def verify_cover_exact(K: ConvexBody, T: ConvexBody, points, weights, *,
                       time_limit: float = 30.0) -> ExactCheck:
    """Check ``sum_i w_i 1[x - x_i in T] >= 1 - COVER_DEFICIT`` for every ``x`` in ``K``.

    For polytopes the mixed-integer program chooses, per atom, either to count
    its weight or a facet of ``x_i + T`` that ``x`` violates by at least ``t``,
    keeping the counted weight below ``1 - COVER_DEFICIT``, and maximises
    ``t``.  A positive optimum is a point of ``K`` covered with too little
    weight; a non-positive one verifies the cover.
    """
    P = np.atleast_2d(np.asarray(points, dtype=float)).reshape(-1, K.dim)
    w = np.asarray(weights, dtype=float)
    for p, wi in zip(P, w):
        if wi >= 1.0 - COVER_DEFICIT and translate_contains(K, T, p):
            return ExactCheck("verified", note="single translate contains K")
    if not (_is_polytope(K) and _is_polytope(T)):
        return ExactCheck("unsupported", note="exact check needs polytopes")
    nK, nT = K.normal_form, T.normal_form
    n, s, m = K.dim, len(w), nT.A.shape[0]
    bb = K.bounding_box()
    lo, hi = np.asarray(bb.lo), np.asarray(bb.hi)
    diam = float(np.linalg.norm(hi - lo))
    nv = n + 1 + s + s * m          # x, t, z (counted atoms), u (violated facets)
    zi, ui = n + 1, n + 1 + s
    cons = []
    A = np.zeros((len(nK.b), nv))
    A[:, :n] = nK.A
    A[:, n] = 1.0                    # stay at depth t inside K as well
    cons.append(LinearConstraint(A, -np.inf, nK.b + nK.A @ nK.c))
    A = np.zeros((s, nv))
    for j in range(s):
        A[j, zi + j] = 1.0
        A[j, ui + j * m:ui + (j + 1) * m] = 1.0
    cons.append(LinearConstraint(A, 1.0, np.inf))
    A = np.zeros((1, nv))
    A[0, zi:zi + s] = w
    cons.append(LinearConstraint(A, -np.inf, 1.0 - COVER_DEFICIT))
    A = np.zeros((s * m, nv))
    lb = np.empty(s * m)
    span = np.abs(nT.A) @ (hi - lo)
    for j in range(s):
        off = nT.A @ (P[j] + nT.c) + nT.b
        big = span + np.abs(nT.A @ lo - off) + 2.0 * diam + 1.0
        rows = slice(j * m, (j + 1) * m)
        A[rows, :n] = nT.A
        A[rows, n] = -1.0
        A[rows, ui + j * m:ui + (j + 1) * m] = -np.diag(big)
        lb[rows] = off - big
    cons.append(LinearConstraint(A, lb, np.inf))
    cost = np.zeros(nv)
    cost[n] = -1.0
    integrality = np.zeros(nv)
    integrality[zi:] = 1
    bounds = Bounds(np.r_[lo, -diam, np.zeros(nv - n - 1)], np.r_[hi, diam, np.ones(nv - n - 1)])
    res = milp(cost, constraints=cons, integrality=integrality, bounds=bounds,
               options={"time_limit": time_limit})
    if res.status == 2:              # no pattern of small enough weight at all
        return ExactCheck("verified", note="no deficient atom pattern")
    if res.x is None or res.status not in (0,):
        return ExactCheck("inconclusive", note=str(res.message))
    depth, x = float(res.x[n]), res.x[:n].copy()
    if depth <= DEPTH_TOL:
        return ExactCheck("verified", depth=depth)
    cov = WeightedCover(P, w, T).coverage(x[None, :])[0]
    if cov >= 1.0 - 1e-9:
        return ExactCheck("inconclusive", depth, x, "witness is covered on recheck")
    return ExactCheck("refuted", depth, x)


def refine_cover(K: ConvexBody, T: ConvexBody, centers, constraint_points, *,
                 max_rounds: int = 100, solver: str = "auto", workers: int = 1,
                 time_limit: float = 60.0) -> tuple[WeightedCover | None, dict]:
    """Cutting-plane loop: solve the cover LP, verify on all of ``K``, add the miss.

    Returns a cover certified on ``K`` with its weights scaled by
    ``1/(1 - COVER_DEFICIT)``, or ``None`` when verification is unavailable or
    the round budget runs out.
    """
    centers = np.atleast_2d(np.asarray(centers, dtype=float)).reshape(-1, K.dim)
    rows = np.atleast_2d(np.asarray(constraint_points, dtype=float)).reshape(-1, K.dim)
    info: dict[str, Any] = {"rounds": 0, "status": "unsupported"}
    start = time.monotonic()
    lp = build_cover_lp(centers, rows, T, K, workers=workers)
    for rnd in range(max_rounds):
        info["rounds"] = rnd + 1
        try:
            value, x = solve_primal(lp, solver)
        except UncoverablePoint:
            info["status"] = "uncoverable"
            return None, info
        cover = _sparse_cover(lp, x, T)
        check = verify_cover_exact(K, T, cover.points, cover.weights)
        info["status"] = check.status
        if check.status == "verified":
            scaled = WeightedCover(cover.points, cover.weights / (1.0 - COVER_DEFICIT), T)
            scaled.verify(lp.constraint_points)
            scaled.verification = "exact"
            info["lp_value"] = value
            return scaled, info
        if check.status != "refuted" or time.monotonic() - start > time_limit:
            return None, info
        # append the witness as a new constraint row
        row = membership_matrix(check.witness[None, :], centers, T)
        lp = CoverLP(sp.vstack([lp.M, row]).tocsr(), np.r_[lp.c, 1.0], lp.b, centers,
                     np.vstack([lp.constraint_points, check.witness]))
    info["status"] = "round budget exhausted"
    return None, info


# -- bracketing ----------------------------------------------------------------

def bracket_weighted_cover(K: ConvexBody, T: ConvexBody, delta_schedule, target_gap: float,
                           *, exact_refine: bool = True, solver: str = "auto",
                           workers: int = 1, budget: int = DEFAULT_BUDGET,
                           max_rounds: int = 100) -> Bracket:
    """Certified interval for ``N_w(K, T)`` along a decreasing delta schedule.

    The bracket keeps the best bounds seen so far and stops once the gap is at
    most ``target_gap``; otherwise it sets ``warning``.
    """
    if K.dim != T.dim:
        raise GeometryError("K and T must share a dimension")
    schedule = sorted({float(d) for d in delta_schedule}, reverse=True)
    if not schedule or schedule[-1] <= 0:
        raise ValueError("delta schedule must hold positive values")
    r_T = T.inradius
    best = Bracket(0.0, math.inf, schedule[0],
                   lower_meaning="no bound yet", upper_meaning="no bound yet")
    for delta in schedule:
        row: dict[str, Any] = {"delta": delta}
        low = fractional_separation_on_net(K, negate(T), delta, solver=solver,
                                           workers=workers, budget=budget)
        row["lower"] = low
        if low > best.lower:
            best.lower = low
            best.lower_meaning = (f"separation LP for T + {delta:g}B on a {delta:g}-net of K - T"
                                  " <= M_w(K,-T) = N*(K,T) <= N_w(K,T)")
        net = grid_net(K, delta, budget=budget)
        if net.radius < r_T:
            Td = erode(T, net.radius)
            lp = build_cover_lp(net.points, net.points, Td, K, workers=workers)
            try:
                value, x = solve_primal(lp, solver)
            except UncoverablePoint:
                # eroded translates centred in K miss a boundary point; widen the centres
                cols = center_net(K, Td, delta, "unrestricted", budget).points
                lp = build_cover_lp(cols, net.points, Td, K, workers=workers)
                value, x = solve_primal(lp, solver)
            row["upper_eroded"] = value
            if value < best.upper:
                best.upper = value
                best.cover = _sparse_cover(lp, x, T)
                best.cover.verify(net.points)
                best.cover.verification = "eroded net"
                best.upper_meaning = (f"cover LP for T eroded by {delta:g} on a {delta:g}-net of K"
                                      " >= N_w(K, T_d + dB) >= N_w(K,T)")
        else:
            row["upper_eroded"] = None
        if exact_refine and best.upper - best.lower > target_gap:
            cover, info = refine_cover(K, T, net.points, net.points, solver=solver,
                                       workers=workers, max_rounds=max_rounds)
            if info["status"] == "uncoverable":
                cols = center_net(K, T, delta, "unrestricted", budget).points
                cover, info = refine_cover(K, T, cols, net.points, solver=solver,
                                           workers=workers, max_rounds=max_rounds)
            row["upper_exact"] = cover.total_weight if cover is not None else None
            row["exact_status"] = info["status"]
            if cover is not None and cover.total_weight < best.upper:
                best.upper = cover.total_weight
                best.cover = cover
                best.upper_meaning = ("cover by T with centres on a "
                                      f"{delta:g}-net of K, verified on all of K, weights scaled"
                                      f" by 1/(1-{COVER_DEFICIT:g}) >= N_w(K,T)")
        best.delta = delta
        row["best_lower"], row["best_upper"] = best.lower, best.upper
        best.history.append(row)
        log.info("delta %g: bracket [%.6g, %.6g]", delta, best.lower, best.upper)
        if best.upper - best.lower <= target_gap:
            break
    if best.upper - best.lower > target_gap:
        best.warning = (f"gap {best.upper - best.lower:.6g} above target {target_gap:g}"
                        " after the whole schedule")
    return best


# -- classical covers --------------------------------------------------------------

def _greedy_columns(M: sp.csr_matrix, need: np.ndarray) -> list[int]:
    csr = M.tocsr().astype(bool).astype(np.int8)
    csc = csr.tocsc()
    csr.sort_indices()
    csc.sort_indices()
    idx = [np.ascontiguousarray(a, dtype=np.intc)
           for a in (csc.indptr, csc.indices, csr.indptr, csr.indices)]
    return [int(j) for j in kernels.greedy_cover(*idx, np.ascontiguousarray(need, dtype=np.uint8))]


def _drop_redundant(Mc: sp.csc_matrix, cols: list[int]) -> list[int]:
    """Reverse-delete: drop chosen columns, latest first, whose rows stay covered."""
    count = np.asarray(Mc[:, cols].sum(axis=1)).ravel()
    keep = list(cols)
    for j in reversed(cols):
        rows = Mc[:, j].nonzero()[0]
        if np.all(count[rows] >= 2):
            count[rows] -= 1
            keep.remove(j)
    return keep


def _integral(points, centers, body) -> IntegralCover:
    centers = np.asarray(centers, dtype=float).reshape(-1, body.dim)
    counts = np.asarray(membership_matrix(points, centers, body).sum(axis=1)).ravel()
    mult = int(counts.min()) if len(counts) else 0
    return IntegralCover(centers, body, mult >= 1, mult, len(points))


def _greedy_on_net(rows, cols, T: ConvexBody, K: ConvexBody, workers: int) -> IntegralCover:
    lp = build_cover_lp(cols, rows, T, K, workers=workers)
    need = lp.c > 0
    try:
        chosen = _greedy_columns(lp.M, need)
    except ValueError:
        covered = np.asarray(lp.M.sum(axis=1)).ravel() > 0
        i = int(np.nonzero(need & ~covered)[0][0])
        raise UncoverablePoint(i, lp.constraint_points[i]) from None
    chosen = _drop_redundant(lp.M.tocsc()[need], chosen)
    return _integral(lp.constraint_points[need], cols[chosen], T)


def classical_cover_greedy(K: ConvexBody, T: ConvexBody, delta: float, *,
                           exact_verify: bool = True, max_rounds: int = 20,
                           workers: int = 1, budget: int = DEFAULT_BUDGET) -> IntegralCover:
    """Greedy cover of ``K`` by translates of ``T`` centred at net points of ``K``.

    Centres move to a net of ``K - T`` only when no cover centred in ``K``
    exists at this scale.

    The greedy run on the eroded body covers ``K`` outright.  For polytopes a
    second greedy run with ``T`` itself is checked on all of ``K``; missed
    points join the constraint rows until it passes or stops beating the
    eroded cover.  Ties go to the lowest column index.
    """
    net = grid_net(K, delta, budget=budget)
    hit = containing_translates(K, T, net.points)
    if hit is not None and hit.any():
        one = _integral(net.points, net.points[np.argmax(hit)][None, :], T)
        one.verification = "exact"
        return one
    best = None
    if net.radius < T.inradius:
        Td = erode(T, net.radius)
        try:
            best = _greedy_on_net(net.points, net.points, Td, K, workers)
        except UncoverablePoint:
            # eroded translates centred in K miss a boundary point; widen the centres
            cols = center_net(K, Td, delta, "unrestricted", budget).points
            best = _greedy_on_net(net.points, cols, Td, K, workers)
        best.body, best.verification = T, "eroded net"
    if exact_verify and _is_polytope(K) and _is_polytope(T):
        rows = net.points
        for _ in range(max_rounds):
            cand = _greedy_on_net(rows, net.points, T, K, workers)
            if best is not None and cand.size >= best.size:
                break
            check = verify_cover_exact(K, T, cand.centers, np.ones(cand.size))
            if check.status == "verified":
                cand.verification = "exact"
                best = cand
                break
            if check.status != "refuted":
                break
            rows = np.vstack([rows, check.witness])
    if best is None:
        raise GeometryError(f"net radius {net.radius:.6g} is not below the inradius of T"
                            " and T is not a polytope")
    return best


@dataclass
class ExactCoverResult:
    count: int
    columns: list[int]
    centers: np.ndarray
    status: str                  # optimal | budget_exceeded
    nodes: int


def _lp_bound(A: np.ndarray) -> float:
    res = linprog(np.ones(A.shape[1]), A_ub=-A.astype(float), b_ub=-np.ones(A.shape[0]),
                  bounds=(0, None), method="highs")
    if res.status != 0:
        return math.inf
    return float(res.fun)


def classical_cover_exact_small(lp: CoverLP, max_nodes: int = 50_000) -> ExactCoverResult:
    """Minimum number of columns covering every row with ``c_i = 1``.

    Depth-first branch and bound: branch on the uncovered row with the fewest
    candidate columns, prune with a counting bound and then the LP relaxation.
    The greedy cover seeds the incumbent and is returned if the node budget
    runs out.
    """
    rows = np.nonzero(lp.c > 0)[0]
    A = lp.M[rows].toarray().astype(bool)
    if len(rows) == 0:
        return ExactCoverResult(0, [], lp.centers[:0], "optimal", 0)
    empty = ~A.any(axis=1)
    if empty.any():
        i = int(rows[np.nonzero(empty)[0][0]])
        raise UncoverablePoint(i, lp.constraint_points[i])
    # rows that contain another row's column set are implied by it
    A = np.unique(A, axis=0)
    sizes = A.sum(axis=1)
    keep = np.ones(len(A), dtype=bool)
    order = np.argsort(sizes, kind="stable")
    for a_pos, a in enumerate(order):
        if not keep[a]:
            continue
        for b in order[a_pos + 1:]:
            if keep[b] and np.all(A[b] | ~A[a]):
                keep[b] = False
    A = A[keep]
    best = _greedy_columns(sp.csr_matrix(A.astype(np.int8)), np.ones(len(A), dtype=bool))
    nodes = 0
    budget_hit = False
    stack = [([], np.ones(len(A), dtype=bool), np.ones(A.shape[1], dtype=bool))]
    while stack:
        chosen, open_rows, allowed = stack.pop()
        nodes += 1
        if nodes > max_nodes:
            budget_hit = True
            break
        if not open_rows.any():
            if len(chosen) < len(best):
                best = list(chosen)
            continue
        reach = A[open_rows].sum(axis=0) * allowed
        if reach.max(initial=0) == 0:
            continue
        if len(chosen) + math.ceil(open_rows.sum() / reach.max()) >= len(best):
            continue
        if len(chosen) + math.ceil(_lp_bound(A[open_rows][:, reach > 0]) - 1e-9) >= len(best):
            continue
        open_idx = np.nonzero(open_rows)[0]
        cand_counts = (A[open_idx] & allowed).sum(axis=1)
        r = open_idx[int(np.argmin(cand_counts))]
        cands = np.nonzero(A[r] & allowed)[0]
        cands = cands[np.argsort(-reach[cands], kind="stable")]
        # children pushed in reverse so the most promising is explored first
        children = []
        banned = allowed.copy()
        for col in cands:
            children.append((chosen + [int(col)], open_rows & ~A[:, col], banned.copy()))
            banned[col] = False
        stack.extend(reversed(children))
    best = sorted(best)
    return ExactCoverResult(len(best), best, lp.centers[best],
                            "budget_exceeded" if budget_hit else "optimal", nodes)


# -- Levi-Hadwiger schedule ------------------------------------------------------------

def hadwiger_weighted(K: ConvexBody, lambda_schedule, delta, *,
                      target_gap: float = 0.0, solver: str = "auto", workers: int = 1,
                      budget: int = DEFAULT_BUDGET) -> list[tuple[float, Bracket]]:
    """Brackets for ``N_w(K, lam*K)`` along an increasing schedule of ``lam < 1``.

    ``delta`` is one net scale or a decreasing schedule of them.  The
    separation side needs ``delta`` well below ``1 - lam`` to see the full
    lower bound, since it inflates ``lam*K`` by ``delta``.
    """
    deltas = [float(delta)] if np.isscalar(delta) else [float(d) for d in delta]
    if not K.contains(np.zeros(K.dim), tol=0.0):
        raise GeometryError("K must contain the origin; translate it first")
    out = []
    for lam in lambda_schedule:
        if not 0.0 < lam < 1.0:
            raise ValueError(f"lambda must lie in (0, 1), got {lam}")
        br = bracket_weighted_cover(K, scale(K, lam), deltas, target_gap, solver=solver,
                                    workers=workers, budget=budget)
        out.append((float(lam), br))
    return out
