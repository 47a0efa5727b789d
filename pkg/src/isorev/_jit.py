"""Optional numba acceleration.

Set ``ISOREV_JIT=1`` to compile the quaternion kernels with numba. Any other
value (or numba missing) keeps the pure-numpy path.
"""
import os

_FLAG = os.environ.get("ISOREV_JIT", "0").strip().lower() in ("1", "true", "yes", "on")

try:
    import numba
except ImportError:  # pragma: no cover - numba is optional
    numba = None

JIT_AVAILABLE = numba is not None
JIT_ENABLED = _FLAG and JIT_AVAILABLE


def njit(func):
    """Compile ``func`` with numba when available; return it unchanged otherwise."""
    if numba is None:
        return func
    return numba.njit(cache=True, fastmath=False)(func)
