"""Convex bodies with exact membership tests.

Every body in the combinator algebra (primitives, scaling, translation,
reflection, Minkowski sums) reduces to a normal form

    P + c + r*B

where ``P`` is a full-dimensional polytope (or the single point 0), ``c`` a
translation and ``r*B`` a Euclidean ball.  Membership of ``x`` is then
``dist(x - c, P) <= r``, decided by a half-space test when ``r == 0`` and by an
exact least-distance program (Lawson-Hanson LDP via NNLS) otherwise.
"""
from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np
from scipy.optimize import linprog, nnls
from scipy.spatial import ConvexHull, HalfspaceIntersection

DEFAULT_TOL = 1e-9
MAX_DIM = 6


class GeometryError(ValueError):
    pass


class DimensionMismatch(GeometryError):
    pass


def _as_point(x, dim: int) -> np.ndarray:
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.shape[0] != dim:
        raise DimensionMismatch(f"point has dimension {x.shape[0]}, body has {dim}")
    return x


def _as_points(X, dim: int) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X.reshape(-1, dim) if dim == 1 else X.reshape(1, -1)
    if X.shape[1] != dim:
        raise DimensionMismatch(f"points have dimension {X.shape[1]}, body has {dim}")
    return X


# --------------------------------------------------------------------------
# least-distance programming


def ldp(G: np.ndarray, h: np.ndarray) -> np.ndarray | None:
    """Minimum-norm ``z`` with ``G z >= h`` (Lawson & Hanson, ch. 23).

    Returns ``None`` when the system is infeasible.
    """
    m, n = G.shape
    E = np.vstack([G.T, h.reshape(1, -1)])
    f = np.zeros(n + 1)
    f[n] = 1.0
    u, _ = nnls(E, f, maxiter=50 * (m + n + 1))
    r = E @ u - f
    if abs(r[n]) < 1e-14:
        return None
    return -r[:n] / r[n]


@dataclass(frozen=True)
class NormalForm:
    """``P + c + r*B`` with ``P`` given by vertices and unit-normal half-spaces.

    ``vertices is None`` means ``P = {0}`` (pure ball).
    """

    dim: int
    vertices: np.ndarray | None
    A: np.ndarray | None
    b: np.ndarray | None
    c: np.ndarray
    r: float

    def facet_excess(self, Z: np.ndarray) -> np.ndarray:
        """max_k (A_k z - b_k) for rows of Z (already shifted by -c)."""
        if self.A is None:
            return np.linalg.norm(Z, axis=1)
        return np.max(Z @ self.A.T - self.b, axis=1)

    def dist_to_polytope(self, z: np.ndarray) -> float:
        if self.A is None:
            return float(np.linalg.norm(z))
        s = float(np.max(self.A @ z - self.b))
        if s <= 0.0:
            return 0.0
        if self.dim == 1:
            return s
        w = ldp(-self.A, self.A @ z - self.b)
        if w is None:  # pragma: no cover - P is nonempty by construction
            raise GeometryError("empty polytope in normal form")
        # the LDP optimum can never be shorter than the largest facet violation
        return max(float(np.linalg.norm(w)), s)

    def dist_many(self, Z: np.ndarray) -> np.ndarray:
        """Distances from rows of ``Z`` (already shifted by ``-c``) to ``P``.

        Closed form in dimensions 1 and 2 (nearest edge of the polygon),
        one least-distance program per row otherwise.
        """
        Z = np.atleast_2d(Z)
        if self.A is None:
            return np.linalg.norm(Z, axis=1)
        if self.dim == 1:
            return np.maximum(self.facet_excess(Z), 0.0)
        if self.dim != 2:
            return np.array([self.dist_to_polytope(z) for z in Z])
        d = np.full(len(Z), np.inf)
        for p, q in self._edges:
            e = q - p
            t = np.clip((Z - p) @ e / (e @ e), 0.0, 1.0)
            d = np.minimum(d, np.linalg.norm(Z - p - t[:, None] * e, axis=1))
        d[self.facet_excess(Z) <= 0.0] = 0.0
        return d

    @functools.cached_property
    def _edges(self) -> list[tuple[np.ndarray, np.ndarray]]:
        V = self.vertices
        on = np.abs(V @ self.A.T - self.b) <= 1e-9 * (1.0 + np.abs(self.b))
        edges = []
        for k in range(len(self.b)):
            idx = np.nonzero(on[:, k])[0]
            P = V[idx]
            D = np.linalg.norm(P[:, None] - P[None], axis=2)
            i, j = np.unravel_index(np.argmax(D), D.shape)
            edges.append((P[i], P[j]))
        return edges

    def project(self, x: np.ndarray) -> np.ndarray:
        """Euclidean projection of ``x`` onto ``P + c + r*B``."""
        z = x - self.c
        if self.A is None:
            p = np.zeros_like(z)
        else:
            s = float(np.max(self.A @ z - self.b))
            if s <= 0.0:
                return x.copy()
            w = ldp(-self.A, self.A @ z - self.b)
            p = z + w
        d = z - p
        nd = float(np.linalg.norm(d))
        if nd <= self.r:
            return x.copy()
        return self.c + p + d * (self.r / nd)

    def contains_many(self, X: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
        Z = X - self.c
        if self.A is None:
            return np.linalg.norm(Z, axis=1) <= self.r + tol
        s = self.facet_excess(Z)
        inside = s <= tol
        if self.r > 0.0:
            inside |= s <= self.r + tol
            # facet excess only bounds the distance from below: refine the shell
            shell = np.nonzero((s > tol) & (s <= self.r + tol))[0]
            if self.dim > 1 and len(shell):
                inside[shell] = self.dist_many(Z[shell]) <= self.r + tol
        return inside


def _hull_hrep(V: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vertices, unit normals and offsets of conv(V) (full-dimensional)."""
    dim = V.shape[1]
    if dim == 1:
        lo, hi = float(V.min()), float(V.max())
        return np.array([[lo], [hi]]), np.array([[1.0], [-1.0]]), np.array([hi, -lo])
    hull = ConvexHull(V)
    eq = hull.equations
    # qhull triangulates facets; merge coplanar duplicates
    key = np.round(eq, 11)
    _, idx = np.unique(key, axis=0, return_index=True)
    eq = eq[np.sort(idx)]
    A = eq[:, :-1]
    norms = np.linalg.norm(A, axis=1)
    return V[hull.vertices], A / norms[:, None], -eq[:, -1] / norms


def _chebyshev(A: np.ndarray, b: np.ndarray, anchor: np.ndarray | None = None
               ) -> tuple[np.ndarray, float]:
    """Largest inscribed ball of {A x <= b} (rows of A unit length).

    Among (near-)optimal centres the one closest in l1 to ``anchor`` is
    returned, so symmetric bodies get their centre of symmetry.
    """
    m, n = A.shape
    cost = np.zeros(n + 1)
    cost[-1] = -1.0
    A_ub = np.hstack([A, np.ones((m, 1))])
    res = linprog(cost, A_ub=A_ub, b_ub=b, bounds=[(None, None)] * n + [(0, None)],
                  method="highs")
    if res.status == 3:
        raise GeometryError("polytope is unbounded")
    if res.status != 0:
        raise GeometryError(f"Chebyshev-centre LP failed: {res.message}")
    center, r = res.x[:n], float(res.x[-1])
    if anchor is None or r <= 0:
        return center, r
    r_req = r * (1 - 1e-9)
    # variables (t, u): min sum u, u >= |t - anchor|, A t <= b - r_req
    I = np.eye(n)
    A2 = np.vstack([np.hstack([A, np.zeros((m, n))]),
                    np.hstack([I, -I]), np.hstack([-I, -I])])
    b2 = np.concatenate([b - r_req, anchor, -anchor])
    res2 = linprog(np.concatenate([np.zeros(n), np.ones(n)]), A_ub=A2, b_ub=b2,
                   bounds=[(None, None)] * n + [(0, None)] * n, method="highs")
    if res2.status == 0:
        t = res2.x[:n]
        return t, float(min(r, np.min(b - A @ t)))
    return center, r


# --------------------------------------------------------------------------
# bodies


@dataclass(frozen=True, eq=False)
class ConvexBody:
    """Base class.  Subclasses are immutable and safe to share."""

    @property
    def dim(self) -> int:  # pragma: no cover - abstract
        raise NotImplementedError

    @functools.cached_property
    def normal_form(self) -> NormalForm:  # pragma: no cover - abstract
        raise NotImplementedError

    @property
    def interior_point(self) -> np.ndarray:
        return self._interior[0]

    @property
    def inradius(self) -> float:
        """Radius of a ball around ``interior_point`` contained in the body."""
        return self._interior[1]

    @functools.cached_property
    def _interior(self) -> tuple[np.ndarray, float]:  # pragma: no cover - abstract
        raise NotImplementedError

    def contains(self, x, tol: float = DEFAULT_TOL) -> bool:
        x = _as_point(x, self.dim)
        return bool(self.contains_many(x.reshape(1, -1), tol)[0])

    def contains_many(self, X, tol: float = DEFAULT_TOL) -> np.ndarray:
        X = _as_points(X, self.dim)
        return self.normal_form.contains_many(X, tol)

    def project(self, x) -> np.ndarray:
        return self.normal_form.project(_as_point(x, self.dim))

    def bounding_box(self) -> "Box":  # pragma: no cover - abstract
        raise NotImplementedError

    def to_json(self) -> dict[str, Any]:
        return {"dim": self.dim, "shape": self._shape_json()}

    def _shape_json(self) -> dict[str, Any]:  # pragma: no cover - abstract
        raise NotImplementedError

    def __neg__(self):
        return negate(self)

    def __add__(self, other):
        return minkowski_sum(self, other)

    def __sub__(self, other):
        return minkowski_sum(self, negate(other))


@dataclass(frozen=True, eq=False)
class Box(ConvexBody):
    lo: tuple[float, ...]
    hi: tuple[float, ...]

    def __post_init__(self):
        lo = tuple(float(v) for v in np.atleast_1d(self.lo))
        hi = tuple(float(v) for v in np.atleast_1d(self.hi))
        if len(lo) != len(hi) or not lo:
            raise GeometryError("box bounds must be nonempty and of equal length")
        if not all(a < b for a, b in zip(lo, hi)):
            raise GeometryError("box requires lo < hi componentwise")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def dim(self):
        return len(self.lo)

    @functools.cached_property
    def normal_form(self):
        lo, hi = np.array(self.lo), np.array(self.hi)
        n = self.dim
        I = np.eye(n)
        corners = np.array(list(itertools.product(*zip(lo, hi))), dtype=float)
        return NormalForm(n, corners, np.vstack([I, -I]), np.concatenate([hi, -lo]),
                          np.zeros(n), 0.0)

    @functools.cached_property
    def _interior(self):
        lo, hi = np.array(self.lo), np.array(self.hi)
        return (lo + hi) / 2, float(np.min(hi - lo) / 2)

    def contains_many(self, X, tol=DEFAULT_TOL):
        X = _as_points(X, self.dim)
        return np.all((X >= np.array(self.lo) - tol) & (X <= np.array(self.hi) + tol), axis=1)

    def bounding_box(self):
        return self

    def _shape_json(self):
        return {"type": "box", "lo": list(self.lo), "hi": list(self.hi)}


@dataclass(frozen=True, eq=False)
class Ball(ConvexBody):
    center: tuple[float, ...]
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(float(v) for v in np.atleast_1d(self.center)))
        if not self.radius > 0:
            raise GeometryError("ball radius must be positive")
        object.__setattr__(self, "radius", float(self.radius))

    @property
    def dim(self):
        return len(self.center)

    @functools.cached_property
    def normal_form(self):
        return NormalForm(self.dim, None, None, None, np.array(self.center), self.radius)

    @functools.cached_property
    def _interior(self):
        return np.array(self.center), self.radius

    def bounding_box(self):
        c = np.array(self.center)
        return Box(tuple(c - self.radius), tuple(c + self.radius))

    def _shape_json(self):
        return {"type": "ball", "center": list(self.center), "radius": self.radius}


@dataclass(frozen=True, eq=False)
class HPolytope(ConvexBody):
    """{x : <a_k, x> <= b_k for all k}; must be bounded and full-dimensional."""

    normals: tuple[tuple[float, ...], ...]
    offsets: tuple[float, ...]

    def __post_init__(self):
        A = np.atleast_2d(np.asarray(self.normals, dtype=float))
        b = np.asarray(self.offsets, dtype=float).reshape(-1)
        if A.shape[0] != b.shape[0] or A.shape[0] == 0:
            raise GeometryError("need one offset per half-space normal")
        norms = np.linalg.norm(A, axis=1)
        if np.any(norms == 0):
            raise GeometryError("zero half-space normal")
        object.__setattr__(self, "normals", tuple(map(tuple, A)))
        object.__setattr__(self, "offsets", tuple(b))
        A, b = A / norms[:, None], b / norms
        n = A.shape[1]
        # boundedness: maximize +-each coordinate
        for i in range(n):
            for sgn in (1.0, -1.0):
                cost = np.zeros(n)
                cost[i] = -sgn
                res = linprog(cost, A_ub=A, b_ub=b, bounds=[(None, None)] * n, method="highs")
                if res.status == 3:
                    raise GeometryError("half-space system is unbounded")
                if res.status == 2:
                    raise GeometryError("half-space system is empty")
        center, r = _chebyshev(A, b)
        if r > 1e-12:
            center, r = _chebyshev(A, b, anchor=self._vertex_centroid(A, b, center))
        if r <= 1e-12:
            raise GeometryError("half-space system is not full-dimensional")
        object.__setattr__(self, "_unit", (A, b, center, r))

    @staticmethod
    def _vertex_centroid(A, b, center):
        if A.shape[1] == 1:
            return center
        hs = HalfspaceIntersection(np.hstack([A, -b[:, None]]), center)
        return np.unique(np.round(hs.intersections, 13), axis=0).mean(axis=0)

    @property
    def dim(self):
        return len(self.normals[0])

    @functools.cached_property
    def normal_form(self):
        A, b, center, _ = self._unit
        if self.dim == 1:
            hi = min(bb / a[0] for a, bb in zip(A, b) if a[0] > 0)
            lo = max(bb / a[0] for a, bb in zip(A, b) if a[0] < 0)
            V, A2, b2 = _hull_hrep(np.array([[lo], [hi]]))
            return NormalForm(1, V, A2, b2, np.zeros(1), 0.0)
        hs = HalfspaceIntersection(np.hstack([A, -b[:, None]]), center)
        V = np.unique(np.round(hs.intersections, 13), axis=0)
        return NormalForm(self.dim, V, A, b, np.zeros(self.dim), 0.0)

    @functools.cached_property
    def _interior(self):
        _, _, center, r = self._unit
        return center, r

    def bounding_box(self):
        V = self.normal_form.vertices
        return Box(tuple(V.min(axis=0)), tuple(V.max(axis=0)))

    def _shape_json(self):
        return {"type": "hpolytope",
                "halfspaces": [{"normal": list(a), "offset": o}
                               for a, o in zip(self.normals, self.offsets)]}


@dataclass(frozen=True, eq=False)
class VSimplex(ConvexBody):
    vertices: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        V = np.atleast_2d(np.asarray(self.vertices, dtype=float))
        n = V.shape[1]
        if V.shape[0] != n + 1:
            raise GeometryError(f"a {n}-simplex needs {n + 1} vertices, got {V.shape[0]}")
        if abs(np.linalg.det(V[1:] - V[0])) < 1e-12:
            raise GeometryError("simplex vertices are affinely dependent")
        object.__setattr__(self, "vertices", tuple(map(tuple, V)))

    @property
    def dim(self):
        return len(self.vertices[0])

    @functools.cached_property
    def normal_form(self):
        V, A, b = _hull_hrep(np.array(self.vertices))
        return NormalForm(self.dim, V, A, b, np.zeros(self.dim), 0.0)

    @functools.cached_property
    def _interior(self):
        nf = self.normal_form
        return _chebyshev(nf.A, nf.b, anchor=nf.vertices.mean(axis=0))

    def volume(self) -> float:
        V = np.array(self.vertices)
        return abs(float(np.linalg.det(V[1:] - V[0]))) / math.factorial(self.dim)

    def bounding_box(self):
        V = np.array(self.vertices)
        return Box(tuple(V.min(axis=0)), tuple(V.max(axis=0)))

    def _shape_json(self):
        return {"type": "simplex", "vertices": [list(v) for v in self.vertices]}


@dataclass(frozen=True, eq=False)
class CrossPolytope(ConvexBody):
    """{x : ||x - center||_1 <= radius}."""

    center: tuple[float, ...]
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(float(v) for v in np.atleast_1d(self.center)))
        if not self.radius > 0:
            raise GeometryError("cross-polytope radius must be positive")
        object.__setattr__(self, "radius", float(self.radius))

    @property
    def dim(self):
        return len(self.center)

    @functools.cached_property
    def normal_form(self):
        n, r = self.dim, self.radius
        c = np.array(self.center)
        I = np.eye(n)
        V = np.vstack([r * I, -r * I])
        signs = np.array(list(itertools.product((1.0, -1.0), repeat=n)))
        A = signs / math.sqrt(n)
        b = np.full(len(signs), r / math.sqrt(n))
        return NormalForm(n, V, A, b, c, 0.0)

    @functools.cached_property
    def _interior(self):
        return np.array(self.center), self.radius / math.sqrt(self.dim)

    def contains_many(self, X, tol=DEFAULT_TOL):
        X = _as_points(X, self.dim)
        # facet normals have norm sqrt(n), so tol is a Euclidean slack
        l1 = np.abs(X - np.array(self.center)).sum(axis=1)
        return l1 <= self.radius + tol * math.sqrt(self.dim)

    def bounding_box(self):
        c = np.array(self.center)
        return Box(tuple(c - self.radius), tuple(c + self.radius))

    def _shape_json(self):
        return {"type": "crosspolytope", "center": list(self.center), "radius": self.radius}


@dataclass(frozen=True, eq=False)
class Scaled(ConvexBody):
    factor: float
    body: ConvexBody

    def __post_init__(self):
        if not self.factor > 0:
            raise GeometryError("scale factor must be positive")
        object.__setattr__(self, "factor", float(self.factor))

    @property
    def dim(self):
        return self.body.dim

    @functools.cached_property
    def normal_form(self):
        nf, s = self.body.normal_form, self.factor
        return NormalForm(nf.dim, None if nf.vertices is None else s * nf.vertices,
                          nf.A, None if nf.b is None else s * nf.b, s * nf.c, s * nf.r)

    @functools.cached_property
    def _interior(self):
        p, r = self.body._interior
        return self.factor * p, self.factor * r

    def contains_many(self, X, tol=DEFAULT_TOL):
        X = _as_points(X, self.dim)
        return self.body.contains_many(X / self.factor, tol / self.factor)

    def bounding_box(self):
        bb = self.body.bounding_box()
        return Box(tuple(self.factor * np.array(bb.lo)), tuple(self.factor * np.array(bb.hi)))

    def _shape_json(self):
        return {"type": "scale", "factor": self.factor, "body": self.body.to_json()}


@dataclass(frozen=True, eq=False)
class Translated(ConvexBody):
    vector: tuple[float, ...]
    body: ConvexBody

    def __post_init__(self):
        v = tuple(float(t) for t in np.atleast_1d(self.vector))
        if len(v) != self.body.dim:
            raise DimensionMismatch("translation vector dimension mismatch")
        object.__setattr__(self, "vector", v)

    @property
    def dim(self):
        return self.body.dim

    @functools.cached_property
    def normal_form(self):
        nf = self.body.normal_form
        return NormalForm(nf.dim, nf.vertices, nf.A, nf.b, nf.c + np.array(self.vector), nf.r)

    @functools.cached_property
    def _interior(self):
        p, r = self.body._interior
        return p + np.array(self.vector), r

    def contains_many(self, X, tol=DEFAULT_TOL):
        X = _as_points(X, self.dim)
        return self.body.contains_many(X - np.array(self.vector), tol)

    def bounding_box(self):
        bb, v = self.body.bounding_box(), np.array(self.vector)
        return Box(tuple(np.array(bb.lo) + v), tuple(np.array(bb.hi) + v))

    def _shape_json(self):
        return {"type": "translate", "vector": list(self.vector), "body": self.body.to_json()}


@dataclass(frozen=True, eq=False)
class Negated(ConvexBody):
    body: ConvexBody

    @property
    def dim(self):
        return self.body.dim

    @functools.cached_property
    def normal_form(self):
        nf = self.body.normal_form
        return NormalForm(nf.dim, None if nf.vertices is None else -nf.vertices,
                          None if nf.A is None else -nf.A, nf.b, -nf.c, nf.r)

    @functools.cached_property
    def _interior(self):
        p, r = self.body._interior
        return -p, r

    def contains_many(self, X, tol=DEFAULT_TOL):
        X = _as_points(X, self.dim)
        return self.body.contains_many(-X, tol)

    def bounding_box(self):
        bb = self.body.bounding_box()
        return Box(tuple(-np.array(bb.hi)), tuple(-np.array(bb.lo)))

    def _shape_json(self):
        return {"type": "negate", "body": self.body.to_json()}


@dataclass(frozen=True, eq=False)
class MinkowskiSum(ConvexBody):
    a: ConvexBody
    b: ConvexBody

    def __post_init__(self):
        if self.a.dim != self.b.dim:
            raise DimensionMismatch("Minkowski summands differ in dimension")

    @property
    def dim(self):
        return self.a.dim

    @functools.cached_property
    def normal_form(self):
        na, nb = self.a.normal_form, self.b.normal_form
        c, r = na.c + nb.c, na.r + nb.r
        if na.vertices is None and nb.vertices is None:
            return NormalForm(self.dim, None, None, None, c, r)
        if na.vertices is None:
            return NormalForm(self.dim, nb.vertices, nb.A, nb.b, c, r)
        if nb.vertices is None:
            return NormalForm(self.dim, na.vertices, na.A, na.b, c, r)
        sums = (na.vertices[:, None, :] + nb.vertices[None, :, :]).reshape(-1, self.dim)
        V, A, b = _hull_hrep(sums)
        return NormalForm(self.dim, V, A, b, c, r)

    @functools.cached_property
    def _interior(self):
        pa, ra = self.a._interior
        pb, rb = self.b._interior
        return pa + pb, ra + rb

    def bounding_box(self):
        ba, bb = self.a.bounding_box(), self.b.bounding_box()
        return Box(tuple(np.array(ba.lo) + np.array(bb.lo)),
                   tuple(np.array(ba.hi) + np.array(bb.hi)))

    def _shape_json(self):
        return {"type": "minkowski_sum", "a": self.a.to_json(), "b": self.b.to_json()}


# --------------------------------------------------------------------------
# functional surface


def contains(body: ConvexBody, x, tol: float = DEFAULT_TOL) -> bool:
    return body.contains(x, tol)


def bounding_box(body: ConvexBody) -> Box:
    return body.bounding_box()


def negate(body: ConvexBody) -> ConvexBody:
    if isinstance(body, Negated):
        return body.body
    return Negated(body)


def scale(body: ConvexBody, factor: float) -> ConvexBody:
    if not factor > 0:
        raise GeometryError("scale factor must be positive")
    return Scaled(factor, body)


def translate(body: ConvexBody, vector) -> ConvexBody:
    return Translated(tuple(np.atleast_1d(np.asarray(vector, dtype=float))), body)


def minkowski_sum(a: ConvexBody, b: ConvexBody) -> ConvexBody:
    return MinkowskiSum(a, b)


def erode(body: ConvexBody, delta: float) -> ConvexBody:
    """Homothetic shrink ``T_d`` about the interior witness with ``T_d + d*B`` inside ``T``.

    Requires ``delta < inradius``.
    """
    t0, r = body.interior_point, body.inradius
    if not 0 <= delta < r:
        raise GeometryError(f"erosion {delta} must be below the inradius {r:.6g}")
    if delta == 0:
        return body
    return translate(scale(translate(body, -t0), 1.0 - delta / r), t0)


def minkowski_feasible(a: ConvexBody, b: ConvexBody, x, tol: float = DEFAULT_TOL) -> bool:
    """Decide ``exists y: y in a, x - y in b`` by a linear feasibility program.

    Independent of the hull route used by :meth:`MinkowskiSum.contains`; both
    summands must be polyhedral (no ball part).
    """
    x = _as_point(x, a.dim)
    na, nb = a.normal_form, b.normal_form
    if na.r > 0 or nb.r > 0:
        raise GeometryError("LP feasibility needs polyhedral summands")
    n = a.dim
    # y - ca in P_a and (x - y) - cb in P_b
    A_ub = np.vstack([na.A, -nb.A])
    b_ub = np.concatenate([na.b + na.A @ na.c, nb.b - nb.A @ (x - nb.c)]) + tol
    res = linprog(np.zeros(n), A_ub=A_ub, b_ub=b_ub, bounds=[(None, None)] * n,
                  method="highs")
    return res.status == 0


# --------------------------------------------------------------------------
# JSON descriptors


def body_from_json(desc: dict[str, Any]) -> ConvexBody:
    """Build a body from ``{"dim": n, "shape": {"type": ..., ...}}``."""
    try:
        dim = int(desc["dim"])
        shape = desc["shape"]
        kind = shape["type"]
    except (KeyError, TypeError) as exc:
        raise GeometryError(f"malformed body descriptor: {exc}") from exc
    if kind == "box":
        body = Box(tuple(shape["lo"]), tuple(shape["hi"]))
    elif kind == "ball":
        body = Ball(tuple(shape["center"]), shape["radius"])
    elif kind == "hpolytope":
        hs = shape["halfspaces"]
        body = HPolytope(tuple(tuple(h["normal"]) for h in hs), tuple(h["offset"] for h in hs))
    elif kind == "simplex":
        body = VSimplex(tuple(tuple(v) for v in shape["vertices"]))
    elif kind == "crosspolytope":
        body = CrossPolytope(tuple(shape["center"]), shape["radius"])
    elif kind == "scale":
        body = scale(body_from_json(shape["body"]), shape["factor"])
    elif kind == "translate":
        body = translate(body_from_json(shape["body"]), shape["vector"])
    elif kind == "negate":
        body = negate(body_from_json(shape["body"]))
    elif kind == "minkowski_sum":
        body = minkowski_sum(body_from_json(shape["a"]), body_from_json(shape["b"]))
    else:
        raise GeometryError(f"unknown shape type {kind!r}")
    if body.dim != dim:
        raise DimensionMismatch(f"descriptor says dim {dim}, shape has dim {body.dim}")
    return body


def polygon(vertices: Sequence[Sequence[float]]) -> HPolytope:
    """Convex polytope from a vertex list, stored as half-spaces."""
    V = np.asarray(vertices, dtype=float)
    _, A, b = _hull_hrep(V)
    return HPolytope(tuple(map(tuple, A)), tuple(b))
