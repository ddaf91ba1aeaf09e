"""Dispatch to the compiled kernels, or to numpy when they are unavailable.

Set ``UMEBMUB_PURE_PYTHON=1`` to force the fallback.
"""
import os

import numpy as np

from . import _kernels_py

if os.environ.get("UMEBMUB_PURE_PYTHON") == "1":
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = "cython" if _impl is not _kernels_py else "python"


def hadamard_masks(d):
    return _impl.hadamard_masks(int(d))


def overlap_max_deviation(A, B, target):
    A = np.ascontiguousarray(A, dtype=np.complex128)
    B = np.ascontiguousarray(B, dtype=np.complex128)
    return _impl.overlap_max_deviation(A, B, float(target))


def gram_det_batch(V, d):
    V = np.ascontiguousarray(V, dtype=np.complex128)
    return _impl.gram_det_batch(V, int(d))
