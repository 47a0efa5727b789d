"""Conjugacy normal form ``(D, v)`` of an affine isometry.

``D`` is diagonal with the rotation classes first, then the ``-1`` block and
the ``+1`` block; ``v`` lives on the ``+1`` block so that ``D v = v``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import matlin as ml
from .errors import IllConditioned, NotInGroup, PreconditionViolated
from .isometry import Isometry, compose, conjugate, membership_check
from .kernels import qmul


@dataclass(frozen=True, eq=False)
class NormalForm:
    element: Isometry
    conjugator: Isometry
    spectrum: ml.Spectrum
    diagonal: np.ndarray
    v: np.ndarray

    @property
    def tag(self):
        return self.element.tag

    @property
    def n(self) -> int:
        return self.element.n

    @property
    def r(self) -> int:
        return self.spectrum.r

    @property
    def s(self) -> int:
        return self.spectrum.s

    @property
    def t(self) -> int:
        return self.spectrum.t

    @property
    def fixed_part(self) -> np.ndarray:
        return self.v[self.n - self.t:]

    def fixed_part_nonzero(self, tol: float = 1e-12) -> bool:
        return self.t > 0 and ml.maxnorm(self.fixed_part) > tol

    @property
    def normal_element(self) -> Isometry:
        return Isometry(self.tag, self.diagonal, self.v)

    def round_trip_residual(self) -> float:
        """Distance between ``h g h^-1`` and ``(D, v)``."""
        return conjugate(self.conjugator, self.element).distance(self.normal_element)


def _slot_permutation(reps, layout, tol=1e-7):
    """Match each layout angle with an unused eigen-index of that class."""
    buckets: dict[float, list[int]] = {}
    for k, a in enumerate(reps):
        buckets.setdefault(a, []).append(k)
    keys = list(buckets)
    perm = []
    for a in layout:
        key = min(keys, key=lambda c: abs(c - a))
        if abs(key - a) > tol or not buckets[key]:
            raise IllConditioned(f"cannot place eigenvalue angle {a}")
        perm.append(buckets[key].pop(0))
    return perm


def _complex_frame(A):
    lam, Z = ml.eig_unitary(A)
    raw = []
    for z in lam:
        if abs(z - 1) <= ml.FIXED_TOL:
            raw.append(0.0)
        elif abs(z + 1) <= ml.FIXED_TOL:
            raw.append(math.pi)
        else:
            raw.append(float(np.angle(z)))
    return raw, Z


def _class_representatives(raw):
    """Replace every angle by the mean of its single-linkage cluster."""
    reps = list(raw)
    rot = sorted((a, k) for k, a in enumerate(raw) if a not in (0.0, math.pi))
    group: list[tuple[float, int]] = []

    def flush():
        if group:
            mean = float(np.mean([a for a, _ in group]))
            for _, k in group:
                reps[k] = mean

    for a, k in rot:
        if group and a - group[-1][0] > ml.CLUSTER_GAP:
            flush()
            group = []
        group.append((a, k))
    flush()
    return reps


def _solve_shift(d: complex, w, field: str):
    """``u`` with ``(d - 1) u = w`` for a diagonal entry ``d``."""
    c = d - 1.0
    if abs(c) <= ml.FIXED_TOL:
        raise IllConditioned("non-fixed coordinate has eigenvalue within tolerance of 1")
    if field == "H":
        inv = np.conj(c) / abs(c) ** 2
        return qmul(np.array([inv.real, inv.imag, 0.0, 0.0]), w)
    return w / c


def normalize(g: Isometry, tol: float | None = None) -> NormalForm:
    """Conjugate ``g`` into normal form.

    The conjugator is ``h = (U, u)``: ``U`` diagonalises the linear part in
    normal-form order and the translation ``u`` clears ``v`` off the fixed block.
    """
    if not membership_check(g, tol):
        raise NotInGroup(f"element is not in {g.tag}")
    f, n = g.field, g.n
    A = g.linear
    if f == "H":
        U, thetas = ml.diagonalize_sp(A)
        reps = [float(a) for a in thetas]
        spectrum = ml.Spectrum.from_angles("H", reps)
        perm = _slot_permutation(reps, spectrum.layout())
        U = U[perm]
    else:
        raw, Z = _complex_frame(A)
        reps = _class_representatives(raw)
        spectrum = ml.Spectrum.from_angles("C", reps)
        perm = _slot_permutation(reps, spectrum.layout())
        U = Z[:, perm].conj().T
        if g.tag.family == "su":
            phase = np.angle(np.linalg.det(U))
            U = U * np.exp(-1j * phase / n)
    d = spectrum.diagonal_values()
    D = ml.diag_matrix(d, f)

    w = ml.mat_vec(U, g.translation)
    u = ml.zeros_vec(n, f)
    moving = spectrum.r + spectrum.s
    for k in range(moving):
        u[k] = _solve_shift(d[k], w[k], f)
    v = ml.zeros_vec(n, f)
    v[moving:] = w[moving:]
    if not g.tag.affine:
        u = ml.zeros_vec(n, f)
        v = ml.zeros_vec(n, f)
    h = Isometry(g.tag, U, u)
    return NormalForm(g, h, spectrum, D, v)


def _support_rotation(f: np.ndarray, special: bool) -> np.ndarray:
    """Unitary ``C`` with ``C f = (|f|, 0, ..., 0)``; ``det C = 1`` if ``special``."""
    t = f.shape[0]
    fhat = f / np.linalg.norm(f)
    Q, _ = np.linalg.qr(np.column_stack([fhat, np.eye(t, dtype=np.complex128)]))
    Q[:, 0] *= np.vdot(Q[:, 0], fhat)  # unit phase; makes the first column exactly fhat
    C = Q.conj().T
    if special:
        C[-1] /= np.linalg.det(C)
    return C


def reduce_fixed_support(nf: NormalForm, tol: float = 1e-12) -> NormalForm:
    """Rotate the fixed part of ``v`` onto the first fixed coordinate (U and SU only)."""
    if nf.tag.family not in ("u", "su"):
        raise PreconditionViolated("support reduction applies to U and SU families")
    t, n = nf.t, nf.n
    if t <= 1 or np.linalg.norm(nf.fixed_part) <= tol:
        return nf
    C = _support_rotation(nf.fixed_part, nf.tag.family == "su")
    R = np.eye(n, dtype=np.complex128)
    R[n - t:, n - t:] = C
    rot = Isometry(nf.tag, R, np.zeros(n, dtype=np.complex128))
    v = R @ nf.v
    v[n - t + 1:] = 0.0
    v[n - t] = abs(v[n - t])
    return NormalForm(nf.element, compose(rot, nf.conjugator), nf.spectrum, nf.diagonal, v)
