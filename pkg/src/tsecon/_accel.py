"""Optional numba acceleration.

Kernels in :mod:`tsecon._kernels` come in two flavours: an explicit-loop
version compiled with numba, and a vectorised numpy version. Which one the
public API uses is decided once, at import time:

* numba is used when it is importable, unless the environment variable
  ``TSECON_DISABLE_NUMBA`` is set to a truthy value (``1``, ``true``,
  ``yes``, ``on``).
* otherwise the numpy versions are used.

Both paths are tested against each other, so the flag only changes speed.
"""

import os

ENV_FLAG = "TSECON_DISABLE_NUMBA"

try:
    import numba as _numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba = None


def _disabled_by_env():
    return os.environ.get(ENV_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}


HAVE_NUMBA = _numba is not None
USE_NUMBA = HAVE_NUMBA and not _disabled_by_env()


def njit(fn):
    """Compile ``fn`` with numba when available; the plain function stays on ``.py_func``."""
    if not HAVE_NUMBA:
        fn.py_func = fn
        return fn
    return _numba.njit(cache=True, nogil=True)(fn)


def backend():
    return "numba" if USE_NUMBA else "numpy"
