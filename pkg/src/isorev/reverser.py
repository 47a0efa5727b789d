"""Explicit reversing elements built on the normal form.

Every builder assembles a block matrix ``B`` in normal-form coordinates with
``B D B^-1 = D^-1`` and ``B v = -v``, then transports ``(B, 0)`` back through
the stored conjugator so that the returned witness reverses the original
element. Each witness is checked by :func:`verify_witness` before it is
returned.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import matlin as ml
from .errors import CriterionUnsatisfied, Infeasible, PreconditionViolated, WitnessVerificationError
from .isometry import Isometry, compose, conjugate, identity, inverse
from .normalform import NormalForm, reduce_fixed_support

K2 = np.array([[0, 1], [1, 0]], dtype=np.complex128)
J2 = np.array([[0, -1], [1, 0]], dtype=np.complex128)


def _quat_L() -> np.ndarray:
    L = np.zeros((2, 2, 4))
    L[0, 1, 2] = 1.0
    L[1, 0, 2] = -1.0
    return L


L2 = _quat_L()


@dataclass(frozen=True, eq=False)
class ReverserWitness:
    h: Isometry
    is_involution: bool
    residual_conj: float
    residual_inv: float
    det_ok: bool
    normal: np.ndarray | None = None  # B in normal-form coordinates, when built there

    def to_json(self) -> dict:
        return {
            "residual_conj": self.residual_conj,
            "residual_inv": self.residual_inv,
            "is_involution": self.is_involution,
            "det_ok": self.det_ok,
        }


def conj_tol(n: int) -> float:
    return 1e-8 * max(n, 1)


def inv_tol(n: int) -> float:
    return 1e-9 * max(n, 1)


def verify_witness(g: Isometry, h: Isometry, tol: float | None = None) -> ReverserWitness:
    """Residuals of ``h g h^-1 = g^-1`` and ``h^2 = 1`` (max-norm)."""
    tol = inv_tol(g.n) if tol is None else tol
    r_conj = conjugate(h, g).distance(inverse(g))
    r_inv = compose(h, h).distance(identity(h.tag))
    det_ok = True
    if h.tag.family == "su":
        det_ok = abs(ml.det(h.linear) - 1.0) <= max(tol, 1e-9)
    return ReverserWitness(h, r_inv <= tol, r_conj, r_inv, det_ok)


def transport(nf: NormalForm, B: np.ndarray) -> Isometry:
    """The element reversing ``g`` that corresponds to ``(B, 0)`` on the normal form."""
    b = Isometry(nf.tag, B, ml.zeros_vec(nf.n, nf.tag.field))
    return conjugate(inverse(nf.conjugator), b)


def _finish(nf: NormalForm, B: np.ndarray, tol: float | None) -> ReverserWitness:
    tol = conj_tol(nf.n) if tol is None else tol
    h = transport(nf, B)
    w = verify_witness(nf.element, h, inv_tol(nf.n))
    if w.residual_conj > tol or not w.det_ok:
        raise WitnessVerificationError(
            f"witness residual {w.residual_conj:.2e} (det ok: {w.det_ok}) for {nf.tag}")
    return ReverserWitness(w.h, w.is_involution, w.residual_conj, w.residual_inv, w.det_ok, B)


def _require(nf: NormalForm, *families: str):
    if nf.tag.family not in families:
        raise PreconditionViolated(f"builder needs family in {families}, got {nf.tag.family}")


def _diag_tail(nf: NormalForm) -> np.ndarray:
    """Signs on the ``-1`` and ``+1`` blocks: ``+1``, except ``-1`` where ``v`` must be negated."""
    t_sign = -1.0 if nf.fixed_part_nonzero() else 1.0
    return np.concatenate([np.ones(nf.s), np.full(nf.t, t_sign)]).astype(np.complex128)


# ---------------------------------------------------------------------------
# Sp(n)


def build_sp_reverser(nf: NormalForm, tol: float | None = None) -> ReverserWitness:
    """``B = diag(j, ..., j, -I_{s+t})``; always a reverser, rarely an involution."""
    _require(nf, "sp")
    n = nf.n
    B = np.zeros((n, n, 4))
    idx = np.arange(nf.r)
    B[idx, idx, 2] = 1.0
    tail = np.arange(nf.r, n)
    B[tail, tail, 0] = -1.0
    return _finish(nf, B, tol)


def sp_parity_holds(spectrum: ml.Spectrum) -> bool:
    return all(c.multiplicity % 2 == 0 for c in spectrum.rotations)


def build_sp_strong(nf: NormalForm, tol: float | None = None) -> ReverserWitness:
    """``B = L + ... + L`` plus signs, with ``L = [[0, j], [-j, 0]]``."""
    _require(nf, "sp")
    if not sp_parity_holds(nf.spectrum):
        raise CriterionUnsatisfied("a non-real eigenvalue class has odd multiplicity")
    blocks = [L2] * (nf.r // 2)
    tail = ml.diag_matrix(_diag_tail(nf), "H")
    B = ml.block_diag(*blocks, tail, field="H")
    return _finish(nf, B, tol)


# ---------------------------------------------------------------------------
# U(n) and SU(n)


def _pair_blocks(nf: NormalForm, first=None) -> list[np.ndarray]:
    blocks = [K2] * nf.spectrum.pairs
    if first is not None and blocks:
        blocks = [first] + blocks[1:]
    return blocks


def _require_self_dual(nf: NormalForm):
    if not nf.spectrum.is_self_dual():
        raise CriterionUnsatisfied("characteristic polynomial is not self-dual")


def build_u_strong(nf: NormalForm, tol: float | None = None) -> ReverserWitness:
    """``B = K + ... + K`` plus signs, with ``K`` the 2x2 swap."""
    _require(nf, "u", "su")
    _require_self_dual(nf)
    B = ml.block_diag(*_pair_blocks(nf), np.diag(_diag_tail(nf)), field="C")
    return _finish(nf, B, tol)


def _negatives(tail: np.ndarray) -> int:
    return int(np.sum(tail.real < 0))


def build_su_reverser(nf: NormalForm, tol: float | None = None) -> ReverserWitness:
    """A reverser of determinant one.

    Starts from the swap construction, whose determinant is ``(-1)^pairs``
    times the product of the signs. A wrong sign is repaired by flipping one
    entry of the ``-1`` block when there is one (still an involution),
    otherwise by turning the first swap into ``J = [[0, -1], [1, 0]]`` (no
    longer an involution).
    """
    _require(nf, "su")
    _require_self_dual(nf)
    pairs = nf.spectrum.pairs
    tail = _diag_tail(nf)
    first = None
    if (pairs + _negatives(tail)) % 2:
        if nf.s >= 1:
            tail[0] = -tail[0]
        elif pairs >= 1:
            first = J2
        else:
            # no rotations: sign fixes on the fixed block are all that is available
            return build_su_strong(nf, tol)
    B = ml.block_diag(*_pair_blocks(nf, first), np.diag(tail), field="C")
    return _finish(nf, B, tol)


def build_su_strong(nf: NormalForm, tol: float | None = None) -> ReverserWitness:
    """An involutive reverser of determinant one, or :class:`Infeasible`.

    After the fixed part of ``v`` is rotated onto one coordinate, ``B`` is the
    swap blocks plus a sign diagonal that is ``-1`` on that coordinate; one
    of the remaining signs is flipped if needed to make ``det B = 1``.
    """
    _require(nf, "su")
    _require_self_dual(nf)
    nf = reduce_fixed_support(nf)
    n, s, t = nf.n, nf.s, nf.t
    tail = _diag_tail(nf)
    if (nf.spectrum.pairs + _negatives(tail)) % 2:
        if s >= 1:
            tail[0] = -tail[0]
        else:
            free = list(range(s, s + t))
            if nf.fixed_part_nonzero():
                free = free[1:]
            if not free:
                raise Infeasible("every involutive reverser has determinant -1")
            tail[free[-1]] = -tail[free[-1]]
    B = ml.block_diag(*_pair_blocks(nf), np.diag(tail), field="C")
    if B.shape[0] != n:
        raise AssertionError("block sizes do not add up")
    return _finish(nf, B, tol)


def involution_factors(g: Isometry, h: Isometry) -> tuple[Isometry, Isometry]:
    """``g = h (h g)`` with both factors involutions when ``h`` is an involutive reverser."""
    return h, compose(h, g)
