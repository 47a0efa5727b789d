"""Dense matrices over C and H.

Complex matrices are ``complex128`` arrays of shape ``(n, n)``; quaternionic
matrices are ``float64`` arrays of shape ``(n, n, 4)``. Vectors follow the
same rule with one axis fewer: ``(n,)`` complex or ``(n, 4)`` quaternionic.
Quaternionic matrices act on the right vector space ``H^n`` by left
multiplication.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.linalg

from .errors import DimensionMismatch, EigensolverFailure, NotUnitary
from .kernels import from_pair, qmatmul, qmul, to_pair
from .scalar import Quaternion

CLUSTER_GAP = 1e-8
FIXED_TOL = 1e-8


# ---------------------------------------------------------------------------
# basic helpers


def is_quat_mat(M) -> bool:
    M = np.asarray(M)
    return M.ndim == 3 and M.shape[-1] == 4 and not np.iscomplexobj(M)


def is_quat_vec(x) -> bool:
    x = np.asarray(x)
    return x.ndim == 2 and x.shape[-1] == 4 and not np.iscomplexobj(x)


def field_of(M) -> str:
    return "H" if is_quat_mat(M) else "C"


def dim(M) -> int:
    return int(np.asarray(M).shape[0])


def as_mat(M, field: str) -> np.ndarray:
    if field == "H":
        M = np.asarray(M, dtype=np.float64)
        if M.ndim == 2:  # real matrix promoted to quaternions
            out = np.zeros(M.shape + (4,))
            out[..., 0] = M
            return out
        if M.ndim != 3 or M.shape[0] != M.shape[1] or M.shape[2] != 4:
            raise DimensionMismatch(f"bad quaternion matrix shape {M.shape}")
        return M
    M = np.asarray(M, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"bad complex matrix shape {M.shape}")
    return M


def as_vec(x, field: str) -> np.ndarray:
    if field == "H":
        x = np.asarray(x, dtype=np.float64)
        if x.ndim == 1:
            out = np.zeros(x.shape + (4,))
            out[:, 0] = x
            return out
        if x.ndim != 2 or x.shape[1] != 4:
            raise DimensionMismatch(f"bad quaternion vector shape {x.shape}")
        return x
    x = np.asarray(x, dtype=np.complex128)
    if x.ndim != 1:
        raise DimensionMismatch(f"bad complex vector shape {x.shape}")
    return x


def eye(n: int, field: str) -> np.ndarray:
    if field == "H":
        out = np.zeros((n, n, 4))
        out[np.arange(n), np.arange(n), 0] = 1.0
        return out
    return np.eye(n, dtype=np.complex128)


def zeros_vec(n: int, field: str) -> np.ndarray:
    return np.zeros((n, 4)) if field == "H" else np.zeros(n, dtype=np.complex128)


def diag_matrix(values, field: str) -> np.ndarray:
    """Diagonal matrix with complex diagonal ``values`` (quaternionic if field H)."""
    values = np.asarray(values, dtype=np.complex128)
    if field == "H":
        n = len(values)
        out = np.zeros((n, n, 4))
        out[np.arange(n), np.arange(n), 0] = values.real
        out[np.arange(n), np.arange(n), 1] = values.imag
        return out
    return np.diag(values)


def block_diag(*blocks, field: str) -> np.ndarray:
    blocks = [b for b in blocks if np.asarray(b).shape[0] > 0]
    if not blocks:
        return eye(0, field)
    n = sum(np.asarray(b).shape[0] for b in blocks)
    out = np.zeros((n, n, 4)) if field == "H" else np.zeros((n, n), dtype=np.complex128)
    i = 0
    for b in blocks:
        k = np.asarray(b).shape[0]
        out[i:i + k, i:i + k] = b
        i += k
    return out


def mat_mul(A, B) -> np.ndarray:
    if is_quat_mat(A):
        return qmatmul(A, B)
    return np.asarray(A) @ np.asarray(B)


def mat_vec(A, x) -> np.ndarray:
    if is_quat_mat(A):
        return qmatmul(A, np.asarray(x)[:, None, :])[:, 0, :]
    return np.asarray(A) @ np.asarray(x)


def conj_entries(M) -> np.ndarray:
    M = np.asarray(M)
    if M.shape[-1] == 4 and not np.iscomplexobj(M):
        out = -M
        out[..., 0] = M[..., 0]
        return out
    return M.conj()


def adjoint(M) -> np.ndarray:
    """Conjugate transpose ``M*``."""
    M = np.asarray(M)
    if is_quat_mat(M):
        return np.ascontiguousarray(conj_entries(M).transpose(1, 0, 2))
    return M.conj().T


def entry_abs(M) -> np.ndarray:
    M = np.asarray(M)
    if M.shape and M.shape[-1] == 4 and not np.iscomplexobj(M) and M.ndim >= 2:
        return np.sqrt(np.sum(M * M, axis=-1))
    return np.abs(M)


def maxnorm(M) -> float:
    """Largest entry modulus."""
    a = entry_abs(M)
    return float(a.max()) if a.size else 0.0


def is_unitary(M, tol: float = 1e-9) -> bool:
    M = np.asarray(M)
    if M.ndim < 2 or M.shape[0] != M.shape[1]:
        return False
    n = M.shape[0]
    field = field_of(M)
    if not np.all(np.isfinite(M)):
        return False
    I = eye(n, field)
    return (maxnorm(mat_mul(adjoint(M), M) - I) <= tol
            and maxnorm(mat_mul(M, adjoint(M)) - I) <= tol)


def det(M) -> complex:
    """Determinant (complex case) or the determinant of the complex embedding."""
    if is_quat_mat(M):
        return complex(np.linalg.det(embed_complex(M)))
    return complex(np.linalg.det(np.asarray(M)))


def hermitian_form(z, w):
    """``conj(z_1) w_1 + ... + conj(z_n) w_n``.

    Returns a complex number over C and a :class:`Quaternion` over H.
    """
    z = np.asarray(z)
    w = np.asarray(w)
    if z.shape != w.shape:
        raise DimensionMismatch(f"vector shapes {z.shape} and {w.shape} differ")
    if is_quat_vec(z):
        return Quaternion.from_array(qmul(conj_entries(z), w).sum(axis=0))
    return complex(np.vdot(z, w))


def metric(z, w) -> float:
    """Distance ``Phi(z - w, z - w)^(1/2)``."""
    d = np.asarray(z) - np.asarray(w)
    val = hermitian_form(d, d)
    re = val.a0 if isinstance(val, Quaternion) else val.real
    return math.sqrt(max(re, 0.0))


# ---------------------------------------------------------------------------
# complex embedding  q = u + v j  ->  [[u, v], [-conj(v), conj(u)]]


def embed_complex(M) -> np.ndarray:
    """Complex ``2n x 2m`` image of a quaternionic ``n x m`` matrix (batched)."""
    u, v = to_pair(M)
    top = np.concatenate([u, v], axis=-1)
    bottom = np.concatenate([-v.conj(), u.conj()], axis=-1)
    return np.concatenate([top, bottom], axis=-2)


def unembed_complex(E) -> np.ndarray:
    """Inverse of :func:`embed_complex` read off the top block row."""
    E = np.asarray(E)
    n, m = E.shape[-2] // 2, E.shape[-1] // 2
    return from_pair(E[..., :n, :m], E[..., :n, m:])


def embed_vector(x) -> np.ndarray:
    """``2n x 2`` complex image of a quaternion column vector."""
    return embed_complex(np.asarray(x)[:, None, :])


def quat_column(x: np.ndarray) -> np.ndarray:
    """Quaternion vector whose embedding has first column ``x``."""
    n = x.shape[0] // 2
    return from_pair(x[:n], -x[n:].conj())


def partner(x: np.ndarray) -> np.ndarray:
    """Second embedded column belonging to the same quaternion vector as ``x``."""
    n = x.shape[0] // 2
    return np.concatenate([-x[n:].conj(), x[:n].conj()])


# ---------------------------------------------------------------------------
# spectra


class EigenClass(NamedTuple):
    theta: float
    multiplicity: int


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalue classes in normal-form order.

    Over H the angles are similarity-class angles in ``[0, pi]``; over C they
    are signed angles in ``(-pi, pi]``. Rotation classes come first (ascending),
    then the ``-1`` class, then the ``+1`` class.
    """

    field: str
    classes: tuple[EigenClass, ...]
    r: int
    s: int
    t: int

    @property
    def n(self) -> int:
        return self.r + self.s + self.t

    @property
    def has_plus_one(self) -> bool:
        return self.t > 0

    @property
    def has_minus_one(self) -> bool:
        return self.s > 0

    @property
    def rotations(self) -> tuple[EigenClass, ...]:
        return tuple(c for c in self.classes if not _is_real_angle(c.theta))

    @classmethod
    def from_angles(cls, field: str, angles, gap: float = CLUSTER_GAP) -> "Spectrum":
        """Build from a list of angles (one per coordinate)."""
        angles = [float(a) for a in angles]
        plus = [a for a in angles if abs(a) <= gap]
        minus = [a for a in angles if abs(abs(a) - math.pi) <= gap]
        rot = [a for a in angles if abs(a) > gap and abs(abs(a) - math.pi) > gap]
        if field == "H" and any(a < 0 for a in rot):
            raise ValueError("quaternionic class angles must lie in [0, pi]")
        classes = [EigenClass(th, m) for th, m in _cluster(rot, gap)]
        if minus:
            classes.append(EigenClass(math.pi, len(minus)))
        if plus:
            classes.append(EigenClass(0.0, len(plus)))
        return cls(field, tuple(classes), len(rot), len(minus), len(plus))

    def is_self_dual(self, tol: float = 1e-7) -> bool:
        if self.field == "H":
            return True
        rot = self.rotations
        for c in rot:
            match = [d for d in rot if abs(d.theta + c.theta) <= tol]
            if len(match) != 1 or match[0].multiplicity != c.multiplicity:
                return False
        return True

    @property
    def pairs(self) -> int:
        """Number of conjugate rotation pairs (complex self-dual layout)."""
        return self.r // 2

    def layout(self) -> list[float]:
        """Diagonal angles in the normal-form coordinate order.

        Complex self-dual spectra are laid out as adjacent ``(theta, -theta)``
        pairs with ``theta`` ascending in ``(0, pi)``; everything else as
        ascending angles. The ``-1`` then ``+1`` blocks close the list.
        """
        out: list[float] = []
        if self.field == "C" and self.is_self_dual():
            for c in self.rotations:
                if c.theta > 0:
                    out.extend([c.theta, -c.theta] * c.multiplicity)
        else:
            for c in self.rotations:
                out.extend([c.theta] * c.multiplicity)
        out.extend([math.pi] * self.s)
        out.extend([0.0] * self.t)
        return out

    def diagonal_values(self) -> np.ndarray:
        values = np.exp(1j * np.array(self.layout(), dtype=float))
        values[self.r:self.r + self.s] = -1.0
        values[self.r + self.s:] = 1.0
        return values

    def diagonal(self) -> np.ndarray:
        return diag_matrix(self.diagonal_values(), self.field)

    def to_json(self) -> dict:
        return {
            "rotations": [[c.theta, c.multiplicity] for c in self.rotations],
            "s": self.s,
            "t": self.t,
        }


def _is_real_angle(theta: float, gap: float = CLUSTER_GAP) -> bool:
    return abs(theta) <= gap or abs(abs(theta) - math.pi) <= gap


def _cluster(angles, gap: float):
    """Single-linkage clusters of sorted angles; yields ``(mean, count)``."""
    angles = sorted(angles)
    out = []
    group: list[float] = []
    for a in angles:
        if group and a - group[-1] > gap:
            out.append((float(np.mean(group)), len(group)))
            group = []
        group.append(a)
    if group:
        out.append((float(np.mean(group)), len(group)))
    return out


def _check_unitary(M, tol):
    n = dim(M)
    if not is_unitary(M, max(tol, 1e-9 * max(n, 1))):
        raise NotUnitary("matrix is not unitary within tolerance")


def _schur_normal(M: np.ndarray):
    T, Z = scipy.linalg.schur(M, output="complex")
    n = M.shape[0]
    off = np.abs(np.triu(T, 1)).max() if n > 1 else 0.0
    if off > 1e-8 * max(n, 1):
        raise EigensolverFailure(f"Schur form not diagonal (off-diagonal {off:.2e})")
    lam = np.diag(T).copy()
    mod = np.abs(lam)
    if np.any(mod == 0):
        raise EigensolverFailure("zero eigenvalue in a unitary matrix")
    return lam / mod, Z


def eig_unitary(M, tol: float = 1e-9):
    """Eigenvalues (unit modulus) and orthonormal eigenvectors of a unitary matrix.

    Uses the complex Schur form, which is diagonal for normal matrices.
    Eigenvalues are returned in ascending order of their argument.
    """
    M = as_mat(M, "C")
    _check_unitary(M, tol)
    lam, Z = _schur_normal(M)
    order = np.argsort(np.angle(lam), kind="stable")
    return lam[order], Z[:, order]


def _angles(lam):
    ang = np.angle(lam)
    ang[ang <= -math.pi + 1e-15] = math.pi
    return ang


def _fold_classes(lam, fixed_tol, gap):
    """Group eigenvalues of an embedded quaternion matrix into similarity classes.

    Returns a list of ``(theta, column_indices)`` where the indices address the
    representative (non-negative imaginary part) eigenvectors, plus the real
    clusters at ``theta = 0`` and ``pi`` which carry both halves.
    """
    plus = np.flatnonzero(np.abs(lam - 1) <= fixed_tol)
    minus = np.flatnonzero(np.abs(lam + 1) <= fixed_tol)
    ang = _angles(lam)
    real = set(plus) | set(minus)
    rest = sorted((k for k in range(len(lam)) if k not in real and ang[k] > 0), key=lambda k: ang[k])
    groups = []
    cur: list[int] = []
    for k in rest:
        if cur and ang[k] - ang[cur[-1]] > gap:
            groups.append(cur)
            cur = []
        cur.append(k)
    if cur:
        groups.append(cur)
    out = [(float(np.mean(ang[g])), list(g)) for g in groups]
    if len(minus):
        out.append((math.pi, list(minus)))
    if len(plus):
        out.append((0.0, list(plus)))
    return out


def _quaternionic_basis(Y: np.ndarray, count: int) -> np.ndarray:
    """Pick ``count`` columns spanning ``Y`` together with their partners.

    Pivoted Gram-Schmidt against both the chosen vectors and their partners,
    so the result is orthonormal in the quaternionic sense.
    """
    chosen: list[np.ndarray] = []
    basis: list[np.ndarray] = []
    R = Y.copy()
    for _ in range(count):
        norms = np.linalg.norm(R, axis=0)
        k = int(np.argmax(norms))
        if norms[k] < 0.5:
            raise EigensolverFailure("eigenspace too small for quaternionic basis")
        x = R[:, k] / norms[k]
        for b in basis:  # re-orthogonalise once
            x = x - b * np.vdot(b, x)
        x /= np.linalg.norm(x)
        p = partner(x)
        chosen.append(x)
        basis.extend([x, p])
        for b in (x, p):
            R = R - np.outer(b, b.conj() @ R)
    return np.stack(chosen, axis=1)


def diagonalize_sp(A, tol: float = 1e-9):
    """Return ``(U, thetas)`` with ``U A U^-1 = diag(e^{i thetas})``.

    ``U`` is quaternionic unitary and ``thetas`` ascend in ``[0, pi]``.
    """
    A = as_mat(A, "H")
    n = A.shape[0]
    _check_unitary(A, tol)
    if n == 0:
        return eye(0, "H"), np.zeros(0)
    E = embed_complex(A)
    lam, Z = _schur_normal(E)
    cols = []
    thetas = []
    for theta, idx in _fold_classes(lam, FIXED_TOL, CLUSTER_GAP):
        real = theta in (0.0, math.pi)
        count = len(idx) // 2 if real else len(idx)
        if real and len(idx) % 2:
            raise EigensolverFailure("odd real eigenvalue count in quaternionic embedding")
        X = _quaternionic_basis(Z[:, idx], count)
        cols.append(X)
        thetas.extend([theta] * count)
    if len(thetas) != n:
        raise EigensolverFailure(f"recovered {len(thetas)} classes for dimension {n}")
    X = np.concatenate(cols, axis=1)
    thetas = np.array(thetas)
    order = np.argsort(thetas, kind="stable")
    X, thetas = X[:, order], thetas[order]
    W = from_pair(X[:n], -X[n:].conj())
    U = adjoint(W)
    D = diag_matrix(np.exp(1j * thetas), "H")
    res = maxnorm(mat_mul(mat_mul(U, A), adjoint(U)) - D)
    if res > 1e-8 * n:
        raise EigensolverFailure(f"diagonalization residual {res:.2e}")
    return U, thetas


def eigenclasses(A, tol: float = FIXED_TOL) -> Spectrum:
    """Cluster the spectrum of a unitary matrix into classes.

    ``tol`` is the ``|lambda -+ 1|`` threshold for the real classes.
    """
    field = field_of(A)
    A = as_mat(A, field)
    _check_unitary(A, 1e-9)
    n = A.shape[0]
    if field == "H":
        lam, _ = _schur_normal(embed_complex(A)) if n else (np.zeros(0), None)
        angles = []
        for theta, idx in _fold_classes(lam, tol, CLUSTER_GAP):
            count = len(idx) // 2 if theta in (0.0, math.pi) else len(idx)
            angles.extend([theta] * count)
        return Spectrum.from_angles("H", angles)
    lam, _ = _schur_normal(A) if n else (np.zeros(0), None)
    angles = []
    for z in lam:
        if abs(z - 1) <= tol:
            angles.append(0.0)
        elif abs(z + 1) <= tol:
            angles.append(math.pi)
        else:
            angles.append(float(np.angle(z)))
    return Spectrum.from_angles("C", angles)


def spectrum_self_dual(A, tol: float = FIXED_TOL) -> bool:
    """Is the eigenvalue multiset closed under ``lambda -> conj(lambda)``?"""
    return eigenclasses(A, tol).is_self_dual()


# ---------------------------------------------------------------------------
# unitary projection


def nearest_unitary(M) -> np.ndarray:
    """Polar factor of ``M`` (complex or quaternionic)."""
    if is_quat_mat(M):
        return unembed_complex(nearest_unitary(embed_complex(M)))
    W, _, Vh = np.linalg.svd(np.asarray(M, dtype=np.complex128))
    return W @ Vh
