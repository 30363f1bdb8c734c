"""Numba switch.

Set ``EXTREMEREG_DISABLE_NUMBA=1`` to force the pure-numpy kernels.  Numba is
also skipped silently when it cannot be imported.
"""

import os

_DISABLED = os.environ.get("EXTREMEREG_DISABLE_NUMBA", "").strip().lower() in {
    "1",
    "true",
    "yes",
    "on",
}

try:
    if _DISABLED:
        raise ImportError("disabled by EXTREMEREG_DISABLE_NUMBA")
    import numba

    HAVE_NUMBA = True
except ImportError:
    numba = None
    HAVE_NUMBA = False


def njit(*args, **kwargs):
    """``numba.njit`` when available, else a no-op decorator."""
    if HAVE_NUMBA:
        kwargs.setdefault("cache", True)
        return numba.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda fn: fn
