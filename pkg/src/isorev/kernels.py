"""Quaternion arithmetic kernels.

Quaternion arrays carry the four real coefficients (of 1, i, j, k) on the last
axis. Two interchangeable implementations exist: a numpy path that goes
through the ``H = C + Cj`` split (so matrix products hit BLAS), and explicit
loops compiled by numba. ``ISOREV_JIT=1`` selects the compiled path; both are
importable for testing and benchmarking.
"""
import numpy as np

from ._jit import JIT_AVAILABLE, JIT_ENABLED, njit

__all__ = [
    "qmul",
    "qmatmul",
    "qmul_numpy",
    "qmatmul_numpy",
    "qmul_loop",
    "qmatmul_loop",
    "to_pair",
    "from_pair",
    "backend",
]


def to_pair(q):
    """Split quaternion array ``q = u + v j`` into complex arrays ``(u, v)``."""
    q = np.asarray(q, dtype=np.float64)
    return q[..., 0] + 1j * q[..., 1], q[..., 2] + 1j * q[..., 3]


def from_pair(u, v):
    u = np.asarray(u, dtype=np.complex128)
    v = np.asarray(v, dtype=np.complex128)
    out = np.empty(np.broadcast_shapes(u.shape, v.shape) + (4,))
    out[..., 0] = u.real
    out[..., 1] = u.imag
    out[..., 2] = v.real
    out[..., 3] = v.imag
    return out


def qmul_numpy(p, q):
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    p0, p1, p2, p3 = p[..., 0], p[..., 1], p[..., 2], p[..., 3]
    q0, q1, q2, q3 = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    out = np.empty(np.broadcast_shapes(p.shape, q.shape))
    out[..., 0] = p0 * q0 - p1 * q1 - p2 * q2 - p3 * q3
    out[..., 1] = p0 * q1 + p1 * q0 + p2 * q3 - p3 * q2
    out[..., 2] = p0 * q2 - p1 * q3 + p2 * q0 + p3 * q1
    out[..., 3] = p0 * q3 + p1 * q2 - p2 * q1 + p3 * q0
    return out


def qmatmul_numpy(a, b):
    # (U + Vj)(X + Yj) = (UX - V conj(Y)) + (UY + V conj(X)) j
    u, v = to_pair(a)
    x, y = to_pair(b)
    return from_pair(u @ x - v @ y.conj(), u @ y + v @ x.conj())


@njit
def _qmul_flat(p, q, out):
    for n in range(p.shape[0]):
        p0, p1, p2, p3 = p[n, 0], p[n, 1], p[n, 2], p[n, 3]
        q0, q1, q2, q3 = q[n, 0], q[n, 1], q[n, 2], q[n, 3]
        out[n, 0] = p0 * q0 - p1 * q1 - p2 * q2 - p3 * q3
        out[n, 1] = p0 * q1 + p1 * q0 + p2 * q3 - p3 * q2
        out[n, 2] = p0 * q2 - p1 * q3 + p2 * q0 + p3 * q1
        out[n, 3] = p0 * q3 + p1 * q2 - p2 * q1 + p3 * q0


@njit
def _qmatmul_loop(a, b, out):
    n, m = a.shape[0], a.shape[1]
    p = b.shape[1]
    for r in range(n):
        for c in range(p):
            s0 = 0.0
            s1 = 0.0
            s2 = 0.0
            s3 = 0.0
            for k in range(m):
                p0, p1, p2, p3 = a[r, k, 0], a[r, k, 1], a[r, k, 2], a[r, k, 3]
                q0, q1, q2, q3 = b[k, c, 0], b[k, c, 1], b[k, c, 2], b[k, c, 3]
                s0 += p0 * q0 - p1 * q1 - p2 * q2 - p3 * q3
                s1 += p0 * q1 + p1 * q0 + p2 * q3 - p3 * q2
                s2 += p0 * q2 - p1 * q3 + p2 * q0 + p3 * q1
                s3 += p0 * q3 + p1 * q2 - p2 * q1 + p3 * q0
            out[r, c, 0] = s0
            out[r, c, 1] = s1
            out[r, c, 2] = s2
            out[r, c, 3] = s3


def qmul_loop(p, q):
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    shape = np.broadcast_shapes(p.shape, q.shape)
    pf = np.ascontiguousarray(np.broadcast_to(p, shape)).reshape(-1, 4)
    qf = np.ascontiguousarray(np.broadcast_to(q, shape)).reshape(-1, 4)
    out = np.empty_like(pf)
    _qmul_flat(pf, qf, out)
    return out.reshape(shape)


def qmatmul_loop(a, b):
    a = np.ascontiguousarray(a, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    if a.ndim != 3 or b.ndim != 3 or a.shape[1] != b.shape[0]:
        raise ValueError(f"incompatible quaternion matrices {a.shape} @ {b.shape}")
    out = np.empty((a.shape[0], b.shape[1], 4))
    _qmatmul_loop(a, b, out)
    return out


if JIT_ENABLED:
    qmul = qmul_loop
    qmatmul = qmatmul_loop
else:
    qmul = qmul_numpy
    qmatmul = qmatmul_numpy


def backend():
    """Name of the active kernel backend."""
    return "numba" if JIT_ENABLED else "numpy"


def loop_is_compiled():
    return JIT_AVAILABLE
