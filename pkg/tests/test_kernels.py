import os
import subprocess
import sys

import numpy as np
import pytest
import scipy.sparse as sp

from wcover import _kernels_py, kernels

compiled = pytest.importorskip("wcover._kernels")


def test_compiled_backend_is_default():
    if os.environ.get("WCOVER_PURE_PYTHON", "") in ("", "0"):
        assert kernels.BACKEND == "compiled"


def test_env_forces_fallback():
    out = subprocess.run([sys.executable, "-c", "from wcover import kernels; print(kernels.BACKEND)"],
                         env={**os.environ, "WCOVER_PURE_PYTHON": "1"}, capture_output=True,
                         text=True, check=True)
    assert out.stdout.strip() == "python"


@pytest.mark.parametrize("seed", range(5))
def test_excess_classify_parity(seed):
    rng = np.random.default_rng(seed)
    P = rng.normal(size=(70, 5))
    Q = rng.normal(size=(40, 5))
    a = compiled.pair_excess_classify(P, Q, 0.0, 0.3)
    b = _kernels_py.pair_excess_classify(P, Q, 0.0, 0.3)
    assert np.array_equal(np.asarray(a), b)


@pytest.mark.parametrize("seed", range(5))
def test_ball_mask_parity(seed):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(50, 3))
    Y = rng.normal(size=(60, 3))
    assert np.array_equal(np.asarray(compiled.pair_ball_mask(X, Y, 1.0)),
                          _kernels_py.pair_ball_mask(X, Y, 1.0))


@pytest.mark.parametrize("seed", range(5))
def test_greedy_parity(seed):
    rng = np.random.default_rng(seed)
    M = sp.csr_matrix((rng.random((40, 30)) < 0.15).astype(np.int8))
    M = sp.csr_matrix(sp.vstack([M, sp.csr_matrix(np.ones((1, 30), dtype=np.int8))]))
    need = (np.asarray(M.sum(axis=1)).ravel() > 0).astype(np.uint8)
    csc = M.tocsc()
    M.sort_indices()
    csc.sort_indices()
    idx = [np.ascontiguousarray(a, dtype=np.intc) for a in (csc.indptr, csc.indices, M.indptr, M.indices)]
    a = list(compiled.greedy_cover(*idx, need))
    b = list(_kernels_py.greedy_cover(*idx, need))
    assert a == b
    covered = np.asarray(M[:, a].sum(axis=1)).ravel() > 0
    assert np.all(covered[need.astype(bool)])
