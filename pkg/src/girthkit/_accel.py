"""Numba switch for the hot kernels.

Set ``GIRTHKIT_DISABLE_NUMBA=1`` to run every kernel as plain Python over the
same numpy arrays.  Jitted kernels keep the original function as ``.py_func``,
which the benchmark uses to time both paths in one process.
"""
import os

NUMBA_ENABLED = os.environ.get("GIRTHKIT_DISABLE_NUMBA", "").lower() not in ("1", "true", "yes")

if NUMBA_ENABLED:
    try:
        from numba import njit as _njit
    except ImportError:  # pragma: no cover
        NUMBA_ENABLED = False

if NUMBA_ENABLED:
    def njit(f):
        return _njit(cache=True, nogil=True)(f)
else:
    def njit(f):
        f.py_func = f
        return f


__all__ = ["NUMBA_ENABLED", "njit"]
