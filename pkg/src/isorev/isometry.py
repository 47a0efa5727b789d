"""Affine isometries ``z -> A z + v`` of Hermitian space."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import matlin as ml
from .errors import TagMismatch

FAMILIES = ("sp", "u", "su")


@dataclass(frozen=True)
class GroupTag:
    family: str
    affine: bool
    n: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown group family {self.family!r}")
        if self.n < 1:
            raise ValueError("dimension must be at least 1")

    @property
    def field(self) -> str:
        return "H" if self.family == "sp" else "C"

    @property
    def linear(self) -> "GroupTag":
        return GroupTag(self.family, False, self.n)

    def __str__(self):
        name = {"sp": "Sp", "u": "U", "su": "SU"}[self.family]
        space = "H" if self.family == "sp" else "C"
        return f"{name}({self.n})" + (f" x| {space}^{self.n}" if self.affine else "")


@dataclass(frozen=True, eq=False)
class Isometry:
    tag: GroupTag
    linear: np.ndarray
    translation: np.ndarray = dc_field(default=None)

    def __post_init__(self):
        f = self.tag.field
        A = ml.as_mat(self.linear, f)
        if A.shape[0] != self.tag.n:
            raise ValueError(f"linear part has size {A.shape[0]}, tag says {self.tag.n}")
        v = ml.zeros_vec(self.tag.n, f) if self.translation is None else ml.as_vec(self.translation, f)
        if v.shape[0] != self.tag.n:
            raise ValueError("translation length does not match dimension")
        if not self.tag.affine and np.any(v != 0):
            raise ValueError("linear group element with nonzero translation")
        if not (np.all(np.isfinite(A)) and np.all(np.isfinite(v))):
            raise ValueError("non-finite entries")
        object.__setattr__(self, "linear", A)
        object.__setattr__(self, "translation", v)

    @property
    def n(self) -> int:
        return self.tag.n

    @property
    def field(self) -> str:
        return self.tag.field

    def __call__(self, z):
        return ml.mat_vec(self.linear, z) + self.translation

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return compose(self, other)

    def replace(self, linear=None, translation=None) -> "Isometry":
        return Isometry(self.tag,
                        self.linear if linear is None else linear,
                        self.translation if translation is None else translation)

    def distance(self, other: "Isometry") -> float:
        """Max-norm distance over linear and translation parts."""
        return max(ml.maxnorm(self.linear - other.linear),
                   ml.maxnorm(self.translation - other.translation))

    def __repr__(self):
        return f"Isometry({self.tag}, n={self.n})"


def identity(tag: GroupTag) -> Isometry:
    return Isometry(tag, ml.eye(tag.n, tag.field), ml.zeros_vec(tag.n, tag.field))


def _same_tag(g: Isometry, h: Isometry):
    if g.tag != h.tag:
        raise TagMismatch(f"{g.tag} vs {h.tag}")


def compose(g: Isometry, h: Isometry) -> Isometry:
    """``(A, v) o (B, w) = (AB, Aw + v)``."""
    _same_tag(g, h)
    return Isometry(g.tag, ml.mat_mul(g.linear, h.linear),
                    ml.mat_vec(g.linear, h.translation) + g.translation)


def inverse(g: Isometry) -> Isometry:
    """``(A, v)^-1 = (A*, -A* v)``; the linear part is unitary."""
    Ai = ml.adjoint(g.linear)
    return Isometry(g.tag, Ai, -ml.mat_vec(Ai, g.translation))


def conjugate(h: Isometry, g: Isometry) -> Isometry:
    """``h g h^-1``."""
    _same_tag(g, h)
    return compose(compose(h, g), inverse(h))


def power(g: Isometry, k: int) -> Isometry:
    out = identity(g.tag)
    for _ in range(k):
        out = compose(out, g)
    return out


def linear_part(g: Isometry) -> Isometry:
    """Projection onto the linear group; a homomorphism."""
    return Isometry(g.tag.linear, g.linear)


def is_involution(g: Isometry, tol: float = 1e-9) -> bool:
    return compose(g, g).distance(identity(g.tag)) <= tol


def default_tol(n: int) -> float:
    return 1e-9 * max(n, 1)


def membership_check(g: Isometry, tol: float | None = None) -> bool:
    """Unitary linear part, plus ``det = 1`` for SU."""
    tol = default_tol(g.n) if tol is None else tol
    if not ml.is_unitary(g.linear, tol):
        return False
    if g.tag.family == "su" and abs(ml.det(g.linear) - 1.0) > tol:
        return False
    return True
