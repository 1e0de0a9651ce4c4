"""JIT selection.

Kernels are written once in a numba-compatible subset of Python over numpy
arrays. Setting ``MCPHERSON_DISABLE_NUMBA=1`` before import (or running
without numba installed) turns ``njit`` into a no-op so the same source runs
as plain numpy code.
"""
import os

_FLAG = os.environ.get("MCPHERSON_DISABLE_NUMBA", "").strip().lower()
DISABLE_NUMBA = _FLAG in {"1", "true", "yes", "on"}


def _identity_njit(*args, **kwargs):
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda func: func


if DISABLE_NUMBA:
    njit = _identity_njit
    BACKEND = "numpy"
else:
    try:
        from numba import njit
        BACKEND = "numba"
    except ImportError:  # pragma: no cover
        njit = _identity_njit
        BACKEND = "numpy"


def python_impl(func):
    """Return the uncompiled implementation of a kernel."""
    return getattr(func, "py_func", func)
