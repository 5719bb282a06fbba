"""Pure numpy versions of the compiled kernels in ``_kernels.pyx``."""
import numpy as np

_CHUNK = 1 << 22


def pair_excess_classify(P, Q, lo_thr, hi_thr):
    nr, nc = P.shape[0], Q.shape[0]
    out = np.zeros((nr, nc), dtype=np.uint8)
    step = max(1, _CHUNK // max(1, nc * P.shape[1]))
    for i0 in range(0, nr, step):
        s = np.max(P[i0:i0 + step, None, :] - Q[None, :, :], axis=2)
        blk = out[i0:i0 + step]
        blk[s <= hi_thr] = 2
        blk[s <= lo_thr] = 1
    return out


def pair_ball_mask(X, Y, r2):
    nr, nc = X.shape[0], Y.shape[0]
    out = np.zeros((nr, nc), dtype=np.uint8)
    step = max(1, _CHUNK // max(1, nc * X.shape[1]))
    for i0 in range(0, nr, step):
        d = X[i0:i0 + step, None, :] - Y[None, :, :]
        out[i0:i0 + step] = np.einsum("ijk,ijk->ij", d, d) <= r2
    return out


def greedy_cover(col_ptr, col_rows, row_ptr, row_cols, need):
    n_rows, n_cols = len(row_ptr) - 1, len(col_ptr) - 1
    covered = ~np.asarray(need, dtype=bool)
    gain = np.zeros(n_cols, dtype=np.int64)
    rows_needed = np.nonzero(~covered)[0]
    for i in rows_needed:
        gain[row_cols[row_ptr[i]:row_ptr[i + 1]]] += 1
    remaining = len(rows_needed)
    chosen = []
    while remaining > 0:
        best = int(np.argmax(gain))  # first maximum = lowest index
        if gain[best] <= 0:
            raise ValueError("uncoverable row")
        chosen.append(best)
        for i in col_rows[col_ptr[best]:col_ptr[best + 1]]:
            if not covered[i]:
                covered[i] = True
                remaining -= 1
                gain[row_cols[row_ptr[i]:row_ptr[i + 1]]] -= 1
    return chosen
