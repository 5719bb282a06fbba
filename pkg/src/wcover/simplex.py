"""Dense tableau simplex for packing LPs ``max c.y  s.t.  A y <= b, y >= 0``.

With ``b >= 0`` the slack basis is feasible, so no phase one is needed.  The
optimal tableau also yields the dual ``min b.x  s.t.  A^T x >= c, x >= 0`` from
the reduced costs of the slacks, so one run certifies both sides.

Pricing is Dantzig's largest-coefficient rule with ties to the lowest index;
after ``10 * (rows + cols)`` consecutive degenerate pivots it falls back to
Bland's rule, which cannot cycle.  ``exact=True`` runs the same pivots over
:class:`fractions.Fraction`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np


class SimplexError(RuntimeError):
    pass


@dataclass
class SimplexResult:
    value: float | Fraction
    y: np.ndarray          # packing (maximisation) variables
    x: np.ndarray          # covering (minimisation) variables, from reduced costs
    pivots: int
    bland_pivots: int


def solve_packing(A, b, c, *, exact: bool = False, feas_tol: float = 1e-9,
                  max_pivots: int | None = None) -> SimplexResult:
    A = np.asarray(A)
    m, n = A.shape
    if exact:
        conv = np.vectorize(lambda v: Fraction(v).limit_denominator(10**12), otypes=[object])
        T = np.empty((m + 1, n + m + 1), dtype=object)
        T[:, :] = Fraction(0)
        T[:m, :n] = conv(A)
        for i in range(m):
            T[i, n + i] = Fraction(1)
        T[:m, -1] = conv(np.asarray(b, dtype=float))
        T[m, :n] = -conv(np.asarray(c, dtype=float))
        zero, eps = Fraction(0), Fraction(0)
    else:
        T = np.zeros((m + 1, n + m + 1))
        T[:m, :n] = A
        T[:m, n:n + m] = np.eye(m)
        T[:m, -1] = b
        T[m, :n] = -np.asarray(c, dtype=float)
        zero, eps = 0.0, feas_tol
    if np.any(T[:m, -1] < zero):
        raise SimplexError("right-hand side must be nonnegative")
    basis = list(range(n, n + m))
    limit = max_pivots if max_pivots is not None else 50 * (m + n) + 1000
    degenerate_run, bland, pivots, bland_pivots = 0, False, 0, 0
    switch_after = 10 * (m + n)

    while True:
        obj = T[m, :-1]
        if bland:
            cand = np.nonzero(obj < -eps)[0]
            if len(cand) == 0:
                break
            e = int(cand[0])
        else:
            e = int(np.argmin(obj))
            if not obj[e] < -eps:
                break
        col = T[:m, e]
        pos = np.nonzero(col > eps)[0]
        if len(pos) == 0:
            raise SimplexError("LP is unbounded")
        ratios = T[pos, -1] / col[pos]
        best = min(ratios)
        if exact:
            ties = pos[[r == best for r in ratios]]
        else:
            ties = pos[ratios <= best + eps]
        # Bland: leaving variable with lowest basic index; else lowest row
        r = int(min(ties, key=lambda i: basis[i])) if bland else int(ties[0])
        degenerate = (best == zero) if exact else (best <= eps)
        piv = T[r, e]
        T[r, :] = T[r, :] / piv
        others = np.nonzero(T[:, e] != zero)[0]
        for i in others:
            if i != r:
                T[i, :] = T[i, :] - T[i, e] * T[r, :]
        basis[r] = e
        pivots += 1
        if bland:
            bland_pivots += 1
        degenerate_run = degenerate_run + 1 if degenerate else 0
        if not bland and degenerate_run >= switch_after:
            bland = True
        if pivots > limit:
            raise SimplexError(f"pivot limit {limit} exceeded")

    y = np.empty(n, dtype=object) if exact else np.zeros(n)
    y[:] = zero
    for i, v in enumerate(basis):
        if v < n:
            y[v] = T[i, -1]
    x = T[m, n:n + m].copy()
    value = T[m, -1]
    if not exact:
        x = np.maximum(x, 0.0)
        y = np.maximum(y, 0.0)
        value = float(value)
    return SimplexResult(value, y, x, pivots, bland_pivots)
