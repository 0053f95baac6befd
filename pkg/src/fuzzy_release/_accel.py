"""Selects between numba-compiled kernels and the pure numpy path.

Set ``FUZZY_RELEASE_NO_NUMBA=1`` before import to force the numpy path.
numba is also skipped silently when it is not installed.
"""
import os

_DISABLED = os.environ.get("FUZZY_RELEASE_NO_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")

try:
    if _DISABLED:
        raise ImportError
    import numba
except ImportError:
    numba = None

USE_NUMBA = numba is not None


def njit(*args, **kwargs):
    """``numba.njit`` when available, identity decorator otherwise."""
    if USE_NUMBA:
        return numba.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda f: f


def backend():
    return "numba" if USE_NUMBA else "numpy"
