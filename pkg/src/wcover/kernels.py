"""Kernel dispatch: the compiled extension when importable, numpy otherwise.

Set ``WCOVER_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _kernels_py

if os.environ.get("WCOVER_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
        BACKEND = "compiled"
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _kernels_py
        BACKEND = "python"

pair_excess_classify = _impl.pair_excess_classify
pair_ball_mask = _impl.pair_ball_mask
greedy_cover = _impl.greedy_cover
