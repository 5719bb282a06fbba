"""Grid delta-nets lying inside a convex domain.

Each axis of the domain's bounding box is split into an even number of equal
cells no wider than ``2*delta/sqrt(n)``, so the grid covers the box with
radius ``|h|/2``, which is ``delta`` up to a relative ``1e-9``, and always contains the box centre and the midpoints
of its faces.  Grid points inside the domain are kept; a point ``g`` outside
but within that radius of the domain is replaced by its Euclidean projection
``P(g)``.  Projection onto a convex set is non-expansive and fixes domain
points, so ``|x - P(g)| <= |x - g|`` for every ``x`` in the domain: the
repaired grid keeps the radius ``|h|/2``.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .geometry import DEFAULT_TOL, MAX_DIM, ConvexBody, GeometryError

DEFAULT_BUDGET = 2_000_000
# pitches may exceed the nominal one by this relative amount so that round
# extents split into the intended number of cells; ``Net.radius`` records it
PITCH_SLACK = 1e-9
# projections are exact up to float rounding; pad the certificate
PROJECTION_SLACK = 1e-12


class NetBudgetError(GeometryError):
    def __init__(self, required: int, budget: int):
        super().__init__(f"net needs about {required} grid points, budget is {budget}")
        self.required = required
        self.budget = budget


@dataclass(frozen=True, eq=False)
class Net:
    points: np.ndarray
    delta: float
    domain: ConvexBody
    spacing: float          # largest per-axis pitch
    radius: float           # certified covering radius, at most delta*(1 + 1e-9)

    def __len__(self):
        return len(self.points)

    def covering_radius_sample(self, samples: int = 10_000, seed: int = 0) -> float:
        """Largest sampled distance from a domain point to the net."""
        from scipy.spatial import cKDTree

        rng = np.random.default_rng(seed)
        bb = self.domain.bounding_box()
        lo, hi = np.array(bb.lo), np.array(bb.hi)
        got = []
        while sum(len(g) for g in got) < samples:
            X = rng.uniform(lo, hi, size=(4 * samples, len(lo)))
            got.append(X[self.domain.contains_many(X, 0.0)])
        X = np.vstack(got)[:samples]
        d, _ = cKDTree(self.points).query(X)
        return float(d.max())

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            for p in self.points:
                w.writerow([repr(float(v)) for v in p])


def grid_pitch(delta: float, dim: int, boundary_slack: float = 0.0) -> float:
    return 2.0 * delta / (math.sqrt(dim) * (1.0 + boundary_slack))


def grid_net(domain: ConvexBody, delta: float, *, max_dim: int = MAX_DIM,
             budget: int = DEFAULT_BUDGET, boundary_slack: float = 0.0,
             tol: float = DEFAULT_TOL) -> Net:
    """Delta-net of ``domain`` with every point inside the domain.

    The certified Euclidean covering radius ``Net.radius`` is ``delta`` up to a
    relative ``1e-9``; consumers that need a strict bound use ``radius``.
    Points are returned in lexicographic grid-index order.
    """
    n = domain.dim
    if n > max_dim:
        raise GeometryError(f"grid nets are capped at dimension {max_dim}, got {n}")
    if not delta > 0:
        raise GeometryError("delta must be positive")
    h0 = grid_pitch(delta, n, boundary_slack)
    bb = domain.bounding_box()
    lo, hi = np.array(bb.lo), np.array(bb.hi)
    cells = np.ceil((hi - lo) / h0 * (1.0 - PITCH_SLACK)).astype(np.int64)
    cells = np.maximum(cells + cells % 2, 2)
    counts = cells + 1
    required = int(np.prod(counts.astype(float)))
    if required > budget:
        raise NetBudgetError(required, budget)
    h = (hi - lo) / cells
    axes = [np.linspace(lo[i], hi[i], counts[i]) for i in range(n)]
    G = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n)
    inside = domain.contains_many(G, tol)
    reach = float(np.linalg.norm(h)) / 2.0
    pts = []
    nf = domain.normal_form
    outside = np.nonzero(~inside)[0]
    # cheap lower bound on the distance to the domain before projecting
    Z = G[outside] - nf.c
    lower = nf.facet_excess(Z) - nf.r if nf.A is not None else np.linalg.norm(Z, axis=1) - nf.r
    near = outside[lower <= reach + 1e-12]
    keep = np.zeros(len(G), dtype=bool)
    keep[inside] = True
    repaired = {}
    for k in near:
        p = domain.project(G[k])
        if np.linalg.norm(p - G[k]) <= reach + 1e-12:
            repaired[k] = p
            keep[k] = True
    for k in np.nonzero(keep)[0]:
        pts.append(repaired.get(k, G[k]))
    P = np.array(pts, dtype=float).reshape(-1, n)
    # projections may coincide; drop exact duplicates keeping first occurrence
    _, first = np.unique(np.round(P, 12), axis=0, return_index=True)
    P = P[np.sort(first)]
    return Net(P, float(delta), domain, float(h.max()), reach + PROJECTION_SLACK)
