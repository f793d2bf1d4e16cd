"""JIT switch for the hot kernels.

Numba is used when it is importable and ``QWTRANSFER_NUMBA`` is not set to a
false value (``0``, ``false``, ``no``, ``off``). Otherwise the pure-numpy
kernels are used.
"""

import os

try:
    import numba
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None

_FALSE = {"0", "false", "no", "off"}

NUMBA_AVAILABLE = numba is not None
USE_NUMBA = NUMBA_AVAILABLE and os.environ.get("QWTRANSFER_NUMBA", "1").strip().lower() not in _FALSE


def njit(func):
    """Compile ``func`` in nopython mode, or return it unchanged if numba is missing."""
    if not NUMBA_AVAILABLE:
        return func
    return numba.njit(cache=True, nogil=True, fastmath=False)(func)


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
