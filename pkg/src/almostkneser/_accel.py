"""JIT switch for the numeric kernels.

Set ``KNS_DISABLE_NUMBA=1`` before import to run every kernel as plain
Python over the same numpy arrays. Both paths execute identical source, so
the fallback doubles as a reference for the compiled one.
"""

from __future__ import annotations

import os

_TRUTHY = {"1", "true", "yes", "on"}

NUMBA_DISABLED = os.environ.get("KNS_DISABLE_NUMBA", "0").strip().lower() in _TRUTHY

if not NUMBA_DISABLED:
    try:
        import numba
    except ImportError:  # pragma: no cover - numba is a declared dependency
        numba = None
else:
    numba = None

USING_NUMBA = numba is not None


def njit(*args, **kwargs):
    """``numba.njit`` when available and enabled, otherwise a no-op decorator."""
    if args and callable(args[0]) and len(args) == 1 and not kwargs:
        fn = args[0]
        return numba.njit(cache=True)(fn) if USING_NUMBA else fn

    def wrap(fn):
        if USING_NUMBA:
            kwargs.setdefault("cache", True)
            return numba.njit(*args, **kwargs)(fn)
        return fn

    return wrap


def backend_name() -> str:
    return f"numba-{numba.__version__}" if USING_NUMBA else "python"
