"""Time the compiled kernels against the numpy fallback.

Run with ``python3 benchmarks/bench_kernels.py [--repeat N]``.  Each kernel
is timed on inputs shaped like a membership-matrix build for a 2-D hexagon
on a fine net, and outputs are checked for equality.
"""
import argparse
import time

import numpy as np
import scipy.sparse as sp

from wcover import _kernels_py

try:
    from wcover import _kernels as compiled
except ImportError:  # pragma: no cover
    compiled = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def cases(seed):
    rng = np.random.default_rng(seed)
    A = np.array([[1, 0], [-1, 0], [0, 1], [0, -1], [1, 1], [-1, -1]], dtype=float)
    X = rng.uniform(-1, 1, size=(2000, 2))
    P = np.ascontiguousarray(X @ A.T)
    Q = np.ascontiguousarray(X @ A.T + 0.5)
    Y = np.ascontiguousarray(rng.uniform(-1, 1, size=(2000, 3)))
    M = sp.random(3000, 2000, density=0.01, random_state=seed, format="csr")
    M.data[:] = 1
    M = sp.csr_matrix(sp.vstack([M, sp.csr_matrix(np.ones((1, 2000)))]))
    csc = M.tocsc()
    M.sort_indices()
    csc.sort_indices()
    idx = [np.ascontiguousarray(a, dtype=np.intc) for a in (csc.indptr, csc.indices, M.indptr, M.indices)]
    need = (np.asarray(M.sum(axis=1)).ravel() > 0).astype(np.uint8)
    return {
        "pair_excess_classify 2000x2000": ("pair_excess_classify", (P, Q, 0.0, 1e-9)),
        "pair_ball_mask 2000x2000 dim 3": ("pair_ball_mask", (Y, Y, 0.25)),
        "greedy_cover 3001x2000": ("greedy_cover", (*idx, need)),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if compiled is None:
        print("compiled extension not built; only the fallback is available")
    print(f"{'kernel':34s} {'python s':>10s} {'compiled s':>11s} {'speedup':>8s}")
    for label, (name, argv) in cases(args.seed).items():
        tp, out_p = best_of(lambda: getattr(_kernels_py, name)(*argv), args.repeat)
        if compiled is None:
            print(f"{label:34s} {tp:10.4f} {'-':>11s} {'-':>8s}")
            continue
        tc, out_c = best_of(lambda: getattr(compiled, name)(*argv), args.repeat)
        same = np.array_equal(np.asarray(out_p), np.asarray(out_c))
        print(f"{label:34s} {tp:10.4f} {tc:11.4f} {tp / tc:7.1f}x{'' if same else '  MISMATCH'}")


if __name__ == "__main__":
    main()
