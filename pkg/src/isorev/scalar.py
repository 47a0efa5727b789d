"""Complex and quaternion scalars.

Complex scalars are plain Python/numpy complex numbers. Quaternions are
stored as ``a0 + a1 i + a2 j + a3 k`` and split as ``u + v j`` with
``u = a0 + a1 i`` and ``v = a2 + a3 i``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import NonUnitScalar
from .kernels import qmul

ANGLE_TOL = 1e-9


@dataclass(frozen=True)
class Quaternion:
    a0: float = 0.0
    a1: float = 0.0
    a2: float = 0.0
    a3: float = 0.0

    def __post_init__(self):
        if not all(math.isfinite(c) for c in self.coeffs):
            raise ValueError(f"non-finite quaternion {self.coeffs}")

    @classmethod
    def from_array(cls, arr) -> "Quaternion":
        a = np.asarray(arr, dtype=float).reshape(4)
        return cls(*(float(x) for x in a))

    @classmethod
    def from_complex(cls, z: complex) -> "Quaternion":
        z = complex(z)
        return cls(z.real, z.imag, 0.0, 0.0)

    @property
    def coeffs(self) -> tuple[float, float, float, float]:
        return (self.a0, self.a1, self.a2, self.a3)

    def to_array(self) -> np.ndarray:
        return np.array(self.coeffs)

    def conj(self) -> "Quaternion":
        return Quaternion(self.a0, -self.a1, -self.a2, -self.a3)

    def norm2(self) -> float:
        return self.a0 ** 2 + self.a1 ** 2 + self.a2 ** 2 + self.a3 ** 2

    def __abs__(self) -> float:
        return math.sqrt(self.norm2())

    def inverse(self) -> "Quaternion":
        n2 = self.norm2()
        if n2 == 0.0:
            raise ZeroDivisionError("quaternion inverse of zero")
        c = self.conj()
        return Quaternion(c.a0 / n2, c.a1 / n2, c.a2 / n2, c.a3 / n2)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return q_mul(self, other)
        if isinstance(other, (int, float)):
            return Quaternion(*(c * other for c in self.coeffs))
        if isinstance(other, complex):
            return q_mul(self, Quaternion.from_complex(other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return self * other
        if isinstance(other, complex):
            return q_mul(Quaternion.from_complex(other), self)
        return NotImplemented

    def __add__(self, other):
        if not isinstance(other, Quaternion):
            other = _coerce(other)
        return Quaternion(*(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Quaternion):
            other = _coerce(other)
        return Quaternion(*(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return Quaternion(-self.a0, -self.a1, -self.a2, -self.a3)

    def isclose(self, other, tol: float = 1e-12) -> bool:
        other = _coerce(other)
        return max(abs(a - b) for a, b in zip(self.coeffs, other.coeffs)) <= tol


QONE = Quaternion(1.0)
QI = Quaternion(0.0, 1.0)
QJ = Quaternion(0.0, 0.0, 1.0)
QK = Quaternion(0.0, 0.0, 0.0, 1.0)


def _coerce(x) -> Quaternion:
    if isinstance(x, Quaternion):
        return x
    if isinstance(x, (int, float, complex, np.number)):
        return Quaternion.from_complex(complex(x))
    return Quaternion.from_array(x)


def q_mul(p, q) -> Quaternion:
    """Hamilton product ``p * q``."""
    p, q = _coerce(p), _coerce(q)
    return Quaternion.from_array(qmul(p.to_array(), q.to_array()))


def q_split(q) -> tuple[complex, complex]:
    """Return ``(u, v)`` with ``q = u + v j``."""
    q = _coerce(q)
    return complex(q.a0, q.a1), complex(q.a2, q.a3)


def q_join(u: complex, v: complex) -> Quaternion:
    u, v = complex(u), complex(v)
    return Quaternion(u.real, u.imag, v.real, v.imag)


@dataclass(frozen=True)
class SimilarityClass:
    """Similarity class of a unit quaternion, represented by ``e^{i theta}``."""

    theta: float
    multiplicity: int = 1

    def __post_init__(self):
        if not (-ANGLE_TOL <= self.theta <= math.pi + ANGLE_TOL):
            raise ValueError(f"class angle {self.theta} outside [0, pi]")
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")

    @property
    def representative(self) -> complex:
        return complex(math.cos(self.theta), math.sin(self.theta))


def canonical_rep(q, tol: float = 1e-9) -> float:
    """Angle in ``[0, pi]`` of the complex representative of ``q``'s class.

    Conjugation ``mu^-1 q mu`` preserves the real part and the norm, so the
    answer only depends on ``a0``.
    """
    q = _coerce(q)
    if abs(abs(q) - 1.0) > tol:
        raise NonUnitScalar(f"|q| = {abs(q)!r} is not 1 within {tol}")
    return math.acos(max(-1.0, min(1.0, q.a0)))


class CommutationSolutionClass(enum.Enum):
    ZERO_ONLY = "zero"
    COMPLEX_LINE = "complex"
    COMPLEX_J_LINE = "complex_j"

    def contains(self, x, tol: float = 1e-12) -> bool:
        u, v = q_split(x)
        if self is CommutationSolutionClass.ZERO_ONLY:
            return abs(u) <= tol and abs(v) <= tol
        if self is CommutationSolutionClass.COMPLEX_LINE:
            return abs(v) <= tol
        return abs(u) <= tol


def solve_commutation(alpha: float, beta: float, tol: float = ANGLE_TOL) -> CommutationSolutionClass:
    """Solution set of ``x e^{i alpha} = e^{i beta} x`` for ``alpha`` in ``(0, pi)``.

    ``beta`` may be negative. Writing ``x = u + v j`` the equation splits into
    ``u e^{i alpha} = u e^{i beta}`` and ``v e^{-i alpha} = v e^{i beta}``.
    """
    if not (0.0 < alpha < math.pi):
        raise ValueError(f"alpha must lie in (0, pi), got {alpha}")
    if not (-math.pi - tol <= beta <= math.pi + tol):
        raise ValueError(f"beta must lie in [-pi, pi], got {beta}")
    if abs(alpha - beta) <= tol:
        return CommutationSolutionClass.COMPLEX_LINE
    if abs(alpha + beta) <= tol:
        return CommutationSolutionClass.COMPLEX_J_LINE
    return CommutationSolutionClass.ZERO_ONLY


def commutation_residual(x, alpha: float, beta: float) -> float:
    """``|x e^{i alpha} - e^{i beta} x|``."""
    x = _coerce(x)
    lhs = q_mul(x, complex(math.cos(alpha), math.sin(alpha)))
    rhs = q_mul(complex(math.cos(beta), math.sin(beta)), x)
    return abs(lhs - rhs)
