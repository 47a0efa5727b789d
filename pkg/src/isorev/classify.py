"""Decide reversibility and strong reversibility from the normal form."""
from __future__ import annotations

from dataclasses import dataclass, field

from . import reverser as rv
from .isometry import Isometry, identity
from .jsonio import isometry_to_json, normal_form_to_json
from .normalform import NormalForm, normalize
from .oracle import ObstructionCertificate, det_obstruction

# reason codes
SP_PARITY = "sp-parity"
SP_ODD = "sp-odd-multiplicity"
U_SELF_DUAL = "u-self-dual"
U_NOT_SELF_DUAL = "u-not-self-dual"
SU_NOT_SELF_DUAL = "su-not-self-dual"
SU_LINEAR_STRONG = "su-linear-strong"
SU_2MOD4 = "su-linear-2mod4-obstruction"
SU1_FIXED = "su1-identity"
SU1_TRANSLATION = "su1-translation"
SU_MINUS_ONE = "su-minus-one-eigenvalue"
SU_NO_FIXED = "su-no-fixed-point-linear-criterion"
SU_SINGLE_FIXED_ODD = "su-single-fixed-odd-pairs"
SU_EXCEPTIONAL = "su-exceptional-family"
SU_FREE_FIXED = "su-free-fixed-block"

REASONS = (SP_PARITY, SP_ODD, U_SELF_DUAL, U_NOT_SELF_DUAL, SU_NOT_SELF_DUAL, SU_LINEAR_STRONG,
           SU_2MOD4, SU1_FIXED, SU1_TRANSLATION, SU_MINUS_ONE, SU_NO_FIXED, SU_SINGLE_FIXED_ODD,
           SU_EXCEPTIONAL, SU_FREE_FIXED)


@dataclass(frozen=True, eq=False)
class Verdict:
    reversible: bool
    strongly_reversible: bool
    reason: str
    witness: Isometry | None = None
    witness_is_involution: bool = False
    residuals: dict = field(default_factory=dict)
    obstruction: ObstructionCertificate | None = None
    normal_form: NormalForm | None = None

    def __post_init__(self):
        if self.strongly_reversible and not self.reversible:
            raise ValueError("strongly reversible implies reversible")

    def to_json(self, include_normal_form: bool = False) -> dict:
        out = {
            "reversible": self.reversible,
            "strongly_reversible": self.strongly_reversible,
            "reason": self.reason,
            "witness": None if self.witness is None else isometry_to_json(self.witness),
            "witness_is_involution": self.witness_is_involution,
            "residuals": dict(self.residuals),
            "obstruction": None if self.obstruction is None else self.obstruction.to_json(),
        }
        if include_normal_form and self.normal_form is not None:
            out["normal_form"] = normal_form_to_json(self.normal_form)
        return out


def _verdict(nf, reversible, strong, reason, w: rv.ReverserWitness | None = None, cert=None):
    if w is None:
        return Verdict(reversible, strong, reason, obstruction=cert, normal_form=nf)
    res = {"conj": w.residual_conj, "inv": w.residual_inv}
    return Verdict(reversible, strong, reason, w.h, w.is_involution, res, cert, nf)


def _need(nf: NormalForm, family: str, affine: bool | None = None):
    if nf.tag.family != family or (affine is not None and nf.tag.affine != affine):
        raise rv.PreconditionViolated(f"wrong group for this rule: {nf.tag}")


def _sp(nf: NormalForm) -> Verdict:
    if rv.sp_parity_holds(nf.spectrum):
        return _verdict(nf, True, True, SP_PARITY, rv.build_sp_strong(nf))
    return _verdict(nf, True, False, SP_ODD, rv.build_sp_reverser(nf))


def classify_sp_linear(nf: NormalForm) -> Verdict:
    _need(nf, "sp", False)
    return _sp(nf)


def classify_sp_affine(nf: NormalForm) -> Verdict:
    _need(nf, "sp", True)
    return _sp(nf)


def classify_u(nf: NormalForm) -> Verdict:
    _need(nf, "u")
    if nf.spectrum.is_self_dual():
        return _verdict(nf, True, True, U_SELF_DUAL, rv.build_u_strong(nf))
    return _verdict(nf, False, False, U_NOT_SELF_DUAL)


def _su_negative(nf: NormalForm, reason: str) -> Verdict:
    cert = det_obstruction(nf)
    if cert is None:
        raise AssertionError(f"{reason}: no determinant obstruction for {nf.tag}, rule and oracle disagree")
    return _verdict(nf, True, False, reason, rv.build_su_reverser(nf), cert)


def classify_su_linear(nf: NormalForm) -> Verdict:
    _need(nf, "su", False)
    sp = nf.spectrum
    if not sp.is_self_dual():
        return _verdict(nf, False, False, SU_NOT_SELF_DUAL)
    if nf.n % 4 == 2 and sp.s == 0 and sp.t == 0:
        return _su_negative(nf, SU_2MOD4)
    return _verdict(nf, True, True, SU_LINEAR_STRONG, rv.build_su_strong(nf))


def classify_su_affine(nf: NormalForm) -> Verdict:
    _need(nf, "su", True)
    sp = nf.spectrum
    if nf.n == 1:
        # SU(1) is trivial: (1, v) reverses only to (1, -v), and is conjugate to (1, v) alone
        if nf.fixed_part_nonzero():
            return _verdict(nf, False, False, SU1_TRANSLATION, cert=det_obstruction(nf))
        w = rv.verify_witness(nf.element, identity(nf.tag))
        return _verdict(nf, True, True, SU1_FIXED, w)
    if not sp.is_self_dual():
        return _verdict(nf, False, False, SU_NOT_SELF_DUAL)
    if sp.s >= 1:
        return _verdict(nf, True, True, SU_MINUS_ONE, rv.build_su_strong(nf))
    if sp.t == 0:
        if nf.n % 4 == 2:
            return _su_negative(nf, SU_2MOD4)
        return _verdict(nf, True, True, SU_NO_FIXED, rv.build_su_strong(nf))
    if sp.t == 1 and nf.fixed_part_nonzero():
        if sp.pairs % 2 == 1:
            return _verdict(nf, True, True, SU_SINGLE_FIXED_ODD, rv.build_su_strong(nf))
        return _su_negative(nf, SU_EXCEPTIONAL)
    return _verdict(nf, True, True, SU_FREE_FIXED, rv.build_su_strong(nf))


def exceptional_family_detect(nf: NormalForm) -> bool:
    """Reversible but not strongly reversible although the linear part is.

    Self-dual, no ``-1`` eigenvalue, a single fixed direction carrying a
    nonzero translation and an even, positive number of conjugate pairs.
    """
    _need(nf, "su", True)
    sp = nf.spectrum
    return (sp.is_self_dual() and sp.s == 0 and sp.t == 1 and nf.fixed_part_nonzero()
            and sp.pairs >= 2 and sp.pairs % 2 == 0)


def classify_normal_form(nf: NormalForm) -> Verdict:
    fam, affine = nf.tag.family, nf.tag.affine
    if fam == "sp":
        return classify_sp_affine(nf) if affine else classify_sp_linear(nf)
    if fam == "u":
        return classify_u(nf)
    return classify_su_affine(nf) if affine else classify_su_linear(nf)


def classify(g: Isometry, tol: float | None = None) -> Verdict:
    """Normalize ``g`` and apply the rule for its group."""
    return classify_normal_form(normalize(g, tol))
