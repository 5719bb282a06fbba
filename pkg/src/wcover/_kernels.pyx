# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops: pairwise membership classification and greedy cover."""
import numpy as np
cimport numpy as cnp

cnp.import_array()


def pair_excess_classify(const double[:, ::1] P, const double[:, ::1] Q,
                         double lo_thr, double hi_thr):
    """out[i, j] = 1 if max_k P[i,k]-Q[j,k] <= lo_thr, 2 if <= hi_thr, else 0."""
    cdef Py_ssize_t nr = P.shape[0], nc = Q.shape[0], m = P.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double s, t
    out = np.zeros((nr, nc), dtype=np.uint8)
    cdef unsigned char[:, ::1] o = out
    with nogil:
        for i in range(nr):
            for j in range(nc):
                s = -1e300
                for k in range(m):
                    t = P[i, k] - Q[j, k]
                    if t > s:
                        s = t
                        if s > hi_thr:
                            break
                if s <= lo_thr:
                    o[i, j] = 1
                elif s <= hi_thr:
                    o[i, j] = 2
    return out


def pair_ball_mask(const double[:, ::1] X, const double[:, ::1] Y, double r2):
    """out[i, j] = 1 iff ||X[i] - Y[j]||^2 <= r2."""
    cdef Py_ssize_t nr = X.shape[0], nc = Y.shape[0], n = X.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double acc, d
    out = np.zeros((nr, nc), dtype=np.uint8)
    cdef unsigned char[:, ::1] o = out
    with nogil:
        for i in range(nr):
            for j in range(nc):
                acc = 0.0
                for k in range(n):
                    d = X[i, k] - Y[j, k]
                    acc = acc + d * d
                    if acc > r2:
                        break
                if acc <= r2:
                    o[i, j] = 1
    return out


def greedy_cover(const int[::1] col_ptr, const int[::1] col_rows,
                 const int[::1] row_ptr, const int[::1] row_cols,
                 const unsigned char[::1] need):
    """Greedy set cover; lowest column index wins ties.

    Returns the chosen columns in order, or raises if some needed row has no
    covering column.
    """
    cdef Py_ssize_t n_rows = row_ptr.shape[0] - 1, n_cols = col_ptr.shape[0] - 1
    cdef Py_ssize_t i, j, p, q, best
    cdef long best_gain, remaining = 0
    gain_arr = np.zeros(n_cols, dtype=np.int64)
    covered_arr = np.zeros(n_rows, dtype=np.uint8)
    cdef long[::1] gain = gain_arr
    cdef unsigned char[::1] covered = covered_arr
    chosen = []
    for i in range(n_rows):
        if need[i]:
            remaining += 1
            for p in range(row_ptr[i], row_ptr[i + 1]):
                gain[row_cols[p]] += 1
        else:
            covered[i] = 1
    while remaining > 0:
        best = -1
        best_gain = 0
        for j in range(n_cols):
            if gain[j] > best_gain:
                best_gain = gain[j]
                best = j
        if best < 0:
            raise ValueError("uncoverable row")
        chosen.append(best)
        for p in range(col_ptr[best], col_ptr[best + 1]):
            i = col_rows[p]
            if not covered[i]:
                covered[i] = 1
                remaining -= 1
                for q in range(row_ptr[i], row_ptr[i + 1]):
                    gain[row_cols[q]] -= 1
    return chosen
