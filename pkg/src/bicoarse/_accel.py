"""Numba switch.

Set ``BICOARSE_NUMBA=0`` to force the pure-numpy kernels (useful for debugging
and for platforms without numba). The flag is read once, at import time.
"""
import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is an optional speedup
    numba = None

HAVE_NUMBA = numba is not None


def _flag_enabled(value):
    return value.strip().lower() not in {"0", "false", "no", "off"}


USE_NUMBA = HAVE_NUMBA and _flag_enabled(os.environ.get("BICOARSE_NUMBA", "1"))


def njit(*args, **kwargs):
    """``numba.njit`` when numba is importable, identity decorator otherwise."""
    if HAVE_NUMBA:
        return numba.njit(*args, **kwargs)

    def wrap(fn):
        return fn

    if args and callable(args[0]):
        return args[0]
    return wrap
