"""Independent checks for the classifier and the witness builders.

* :func:`reverser_space` derives which entries a reverser of a diagonal
  matrix may use, straight from the entrywise equation ``b_st a_t = a_s^-1 b_st``.
* :func:`det_obstruction` does sign bookkeeping over the block structure to
  certify that every admissible involutive reverser has determinant ``-1``.
* :func:`brute_reverser_search` samples that space at random and keeps the
  samples that meet the constraints. It knows nothing about the
  classification rules.
* Random group elements, optionally with a prescribed spectrum.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import matlin as ml
from .errors import PreconditionViolated
from .isometry import GroupTag, Isometry, conjugate
from .normalform import NormalForm
from .reverser import ReverserWitness, verify_witness
from .scalar import CommutationSolutionClass, solve_commutation

SEARCH_TOL = 1e-7


# ---------------------------------------------------------------------------
# reverser space of a diagonal matrix


@dataclass(frozen=True)
class SearchConstraints:
    family: str
    involution: bool = True
    det_one: bool | None = None

    @property
    def field(self) -> str:
        return "H" if self.family == "sp" else "C"

    @property
    def needs_det(self) -> bool:
        return self.family == "su" if self.det_one is None else self.det_one

    def names(self) -> tuple[str, ...]:
        out = ["unitary"]
        if self.involution:
            out.append("involution")
        if self.needs_det:
            out.append("det=1")
        return tuple(out)


@dataclass(frozen=True, eq=False)
class ReverserSpace:
    """Admissible sparsity of ``B`` with ``B A = A^-1 B`` for diagonal ``A``.

    ``types[s, t]`` is ``"zero"``, ``"complex"``, ``"complex_j"`` (entries in
    ``C j``) or ``"full"`` (any quaternion; complex matrices use ``"complex"``
    for free entries).
    """

    field: str
    diag: np.ndarray  # complex diagonal entries
    types: np.ndarray
    v: np.ndarray | None
    constraints: tuple[str, ...] = ()

    @property
    def n(self) -> int:
        return len(self.diag)

    @property
    def free_params(self) -> int:
        per = {"zero": 0, "complex": 2, "complex_j": 2, "full": 4}
        return int(sum(per[x] for x in self.types.ravel()))

    def blocks(self) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        """Groups of rows and the columns they may connect to."""
        out = {}
        for s in range(self.n):
            cols = tuple(int(t) for t in np.flatnonzero(self.types[s] != "zero"))
            out.setdefault(cols, []).append(s)
        return [(tuple(rows), cols) for cols, rows in out.items()]

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """Random elements of the space, shape ``(size, n, n)`` (``+ (4,)`` over H)."""
        n = self.n
        if self.field == "C":
            mask = self.types != "zero"
            z = rng.standard_normal((size, n, n)) + 1j * rng.standard_normal((size, n, n))
            return z * mask
        q = rng.standard_normal((size, n, n, 4))
        keep = np.zeros((n, n, 4), dtype=bool)
        keep[self.types == "full"] = True
        keep[self.types == "complex", 0:2] = True
        keep[self.types == "complex_j", 2:4] = True
        return q * keep


def _diag_entries(A) -> tuple[str, np.ndarray]:
    if ml.is_quat_mat(A):
        A = np.asarray(A, dtype=float)
        n = A.shape[0]
        d = A[np.arange(n), np.arange(n)]
        off = A.copy()
        off[np.arange(n), np.arange(n)] = 0.0
        if ml.maxnorm(off) > 1e-12 or np.any(np.abs(d[:, 2:]) > 1e-12):
            raise PreconditionViolated("expected a diagonal matrix with complex entries")
        return "H", d[:, 0] + 1j * d[:, 1]
    A = np.asarray(A, dtype=np.complex128)
    if ml.maxnorm(A - np.diag(np.diag(A))) > 1e-12:
        raise PreconditionViolated("expected a diagonal matrix")
    return "C", np.diag(A).copy()


def _entry_type_h(theta_s: float, theta_t: float, tol: float) -> str:
    # b e^{i theta_t} = e^{-i theta_s} b
    if tol < theta_t < math.pi - tol:
        sol = solve_commutation(theta_t, -theta_s, tol)
        return {CommutationSolutionClass.ZERO_ONLY: "zero",
                CommutationSolutionClass.COMPLEX_LINE: "complex",
                CommutationSolutionClass.COMPLEX_J_LINE: "complex_j"}[sol]
    # real a_t = +-1: b commutes with a real scalar, so b != 0 needs a_s = a_t
    return "full" if abs(theta_s - theta_t) <= tol else "zero"


def reverser_space(A, v=None, constraints: SearchConstraints | None = None,
                   tol: float = 1e-8) -> ReverserSpace:
    f, d = _diag_entries(A)
    n = len(d)
    types = np.empty((n, n), dtype=object)
    if f == "C":
        for s in range(n):
            for t in range(n):
                types[s, t] = "complex" if abs(d[t] - np.conj(d[s])) <= tol else "zero"
    else:
        if np.any(d.imag < -tol):
            raise PreconditionViolated("quaternionic diagonal must use class angles in [0, pi]")
        theta = np.angle(d)
        theta = np.where(theta < 0, 0.0, theta)
        for s in range(n):
            for t in range(n):
                types[s, t] = _entry_type_h(theta[s], theta[t], tol)
    vv = None
    if v is not None and ml.maxnorm(v) > 1e-12:
        vv = ml.as_vec(v, f)
        if ml.maxnorm(ml.mat_vec(ml.diag_matrix(d, f), vv) - vv) > 1e-9:
            raise PreconditionViolated("translation must be fixed by the linear part")
    names = constraints.names() if constraints else ()
    if vv is not None:
        names = names + ("B(v)=-v",)
    return ReverserSpace(f, d, types, vv, names)


# ---------------------------------------------------------------------------
# determinant obstruction


@dataclass(frozen=True)
class ObstructionCertificate:
    forced_det: int
    trace: tuple[dict, ...]

    def replay(self) -> int:
        out = 1
        for step in self.trace:
            if "factor" not in step:
                continue
            if step["factor"] is None:
                raise ValueError("trace contains an unconstrained block")
            out *= int(step["factor"])
        return out

    def to_json(self) -> dict:
        return {"forced_det": self.forced_det, "trace": [dict(s) for s in self.trace]}


def det_obstruction(nf: NormalForm) -> ObstructionCertificate | None:
    """Certificate that every involutive reverser with ``B v = -v`` has det ``-1``.

    ``B`` maps the ``e^{i theta}`` eigenspace onto the ``e^{-i theta}`` one and
    preserves the ``+-1`` eigenspaces. An involution swapping two ``m``-dim
    spaces is ``[[0, P], [P^-1, 0]]`` with determinant ``(-1)^m``; a free ``+-1``
    eigenspace lets the sign be chosen; a fixed direction carrying ``v`` is
    pinned to ``-1``. Returns ``None`` when the forced value is ``+1`` or the
    sign is free.
    """
    if nf.tag.family != "su":
        raise PreconditionViolated("determinant obstruction applies to SU only")
    sp = nf.spectrum
    if not sp.is_self_dual():
        raise PreconditionViolated("spectrum is not self-dual")
    trace: list[dict] = [{
        "step": "block-form",
        "detail": "B swaps conjugate eigenspaces and preserves the +1 and -1 eigenspaces",
    }]
    for c in sp.rotations:
        if c.theta > 0:
            trace.append({"step": "pair", "theta": c.theta, "dim": c.multiplicity,
                          "factor": (-1) ** c.multiplicity})
    if sp.s:
        return None  # any sign pattern of size s is admissible on the -1 eigenspace
    pinned = nf.fixed_part_nonzero()
    if sp.t - (1 if pinned else 0) > 0:
        return None
    if pinned:
        trace.append({"step": "pin", "coordinate": nf.n - 1, "factor": -1,
                      "detail": "B v = -v on a one-dimensional fixed space forces alpha = -1"})
    forced = 1
    for step in trace:
        forced *= step.get("factor", 1)
    if forced == 1:
        return None
    return ObstructionCertificate(forced, tuple(trace))


# ---------------------------------------------------------------------------
# randomized reverser search


def _embedded_context(space: ReverserSpace):
    if space.field == "H":
        a = np.concatenate([space.diag, space.diag.conj()])
        Q = None
        if space.v is not None:
            vhat = space.v / math.sqrt(float(np.sum(space.v ** 2)))
            Q = ml.embed_vector(vhat)
        return a, Q
    Q = None
    if space.v is not None:
        Q = (space.v / np.linalg.norm(space.v))[:, None]
    return space.diag, Q


def _batch(space: ReverserSpace, cons: SearchConstraints, rng, size: int, tol: float):
    a, Q = _embedded_context(space)
    N = len(a)
    raw = space.sample(rng, size)
    M = ml.embed_complex(raw) if space.field == "H" else raw
    I = np.eye(N)
    if Q is not None:
        P = I - Q @ Q.conj().T
        fixed = Q @ Q.conj().T
    good = np.ones(size, dtype=bool)
    if cons.involution:
        H = 0.5 * (M + np.conj(np.swapaxes(M, -1, -2)))
        if Q is not None:
            H = P @ H @ P - fixed
        w, V = np.linalg.eigh(H)
        scale = np.abs(w).max(axis=-1)
        good &= np.abs(w).min(axis=-1) > 1e-9 * np.maximum(scale, 1e-300)
        S = (V * np.sign(w)[..., None, :]) @ np.conj(np.swapaxes(V, -1, -2))
    else:
        if Q is not None:
            M = P @ M @ P - fixed
        W, sv, Vh = np.linalg.svd(M)
        good &= sv.min(axis=-1) > 1e-9 * np.maximum(sv.max(axis=-1), 1e-300)
        S = W @ Vh
        if cons.needs_det and space.field == "C":
            dets = np.linalg.det(S)
            if Q is None:
                S = S * (dets ** (-1.0 / N))[:, None, None]
            elif N > 1:
                c = dets ** (-1.0 / (N - 1))
                S = c[:, None, None] * (P @ S @ P) - fixed
    Sh = np.conj(np.swapaxes(S, -1, -2))
    rev = np.abs(S * a[None, None, :] - np.conj(a)[None, :, None] * S).max(axis=(-1, -2))
    uni = np.abs(Sh @ S - I).max(axis=(-1, -2))
    ok = good & (rev <= tol) & (uni <= tol)
    if cons.involution:
        ok &= np.abs(S @ S - I).max(axis=(-1, -2)) <= tol
    if Q is not None:
        ok &= np.abs(S @ Q + Q).max(axis=(-1, -2)) <= tol
    if cons.needs_det:
        ok &= np.abs(np.linalg.det(S) - 1.0) <= tol
    ok &= np.all(np.isfinite(S), axis=(-1, -2))
    return ok, S


def _to_field(S: np.ndarray, field: str) -> np.ndarray:
    return ml.unembed_complex(S) if field == "H" else S


def iter_reverser_search(A, v=None, constraints: SearchConstraints | None = None,
                         trials: int = 10_000, seed: int = 0, batch: int = 1000,
                         workers: int = 1, tol: float = SEARCH_TOL) -> Iterator[tuple[int, np.ndarray]]:
    """Yield ``(trial_index, B)`` for every sampled ``B`` meeting all constraints.

    Batches get independent child seeds of ``seed``, so the output depends
    only on ``seed`` and not on ``workers``.
    """
    field_ = "H" if ml.is_quat_mat(A) else "C"
    cons = constraints or SearchConstraints("sp" if field_ == "H" else "u")
    space = reverser_space(A, v, cons)
    sizes = [min(batch, trials - k) for k in range(0, trials, batch)]
    seeds = np.random.SeedSequence(seed).spawn(len(sizes))

    def run(k):
        ok, S = _batch(space, cons, np.random.default_rng(seeds[k]), sizes[k], tol)
        return k, ok, S

    starts = np.cumsum([0] + sizes[:-1])
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = sorted(pool.map(run, range(len(sizes))), key=lambda x: x[0])
    else:
        results = (run(k) for k in range(len(sizes)))
    for k, ok, S in results:
        for i in np.flatnonzero(ok):
            yield int(starts[k] + i), _to_field(S[i], space.field)


def brute_reverser_search(A, v=None, constraints: SearchConstraints | None = None,
                          trials: int = 10_000, seed: int = 0, batch: int = 1000,
                          workers: int = 1, tol: float = SEARCH_TOL) -> ReverserWitness | None:
    """First sampled reverser meeting the constraints, or ``None`` after ``trials``."""
    cons = constraints or SearchConstraints("sp" if ml.is_quat_mat(A) else "u")
    for _, B in iter_reverser_search(A, v, cons, trials, seed, batch, workers, tol):
        n = ml.dim(B)
        affine = v is not None
        tag = GroupTag(cons.family, affine, n)
        g = Isometry(tag, A, v if affine else None)
        h = Isometry(tag, B, None if not affine else ml.zeros_vec(n, tag.field))
        w = verify_witness(g, h, tol)
        return ReverserWitness(h, w.is_involution, w.residual_conj, w.residual_inv, w.det_ok, B)
    return None


def search_normal_form(nf: NormalForm, involution: bool = True, trials: int = 10_000,
                       seed: int = 0, **kw) -> ReverserWitness | None:
    """Run the search on the diagonal model of ``nf``."""
    v = nf.v if nf.tag.affine and nf.fixed_part_nonzero() else None
    cons = SearchConstraints(nf.tag.family, involution)
    return brute_reverser_search(nf.diagonal, v, cons, trials, seed, **kw)


def spectrum_oracle_reversible(A, family: str) -> bool:
    """Reversibility of a linear element read off its spectrum alone."""
    if family == "sp":
        return True
    return ml.spectrum_self_dual(A)


# ---------------------------------------------------------------------------
# random elements


def random_unitary(n: int, field_: str, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary (complex) or quaternionic unitary matrix."""
    if field_ == "H":
        G = rng.standard_normal((n, n, 4))
        return ml.unembed_complex(ml.nearest_unitary(ml.embed_complex(G)))
    Z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    Qm, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Qm * (d / np.abs(d))[None, :]


def random_special_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    U = random_unitary(n, "C", rng)
    return U * np.linalg.det(U) ** (-1.0 / n)


def _random_linear(tag: GroupTag, rng) -> np.ndarray:
    if tag.family == "su":
        return random_special_unitary(tag.n, rng)
    return random_unitary(tag.n, tag.field, rng)


def _random_translation(tag: GroupTag, rng) -> np.ndarray:
    if tag.field == "H":
        return rng.standard_normal((tag.n, 4))
    return rng.standard_normal(tag.n) + 1j * rng.standard_normal(tag.n)


def random_group_element(tag: GroupTag, seed: int, planted: ml.Spectrum | None = None) -> Isometry:
    """Deterministic random element; ``planted`` fixes the spectrum of the linear part."""
    rng = np.random.default_rng(seed)
    if planted is None:
        A = _random_linear(tag, rng)
    else:
        if planted.n != tag.n or planted.field != tag.field:
            raise ValueError("planted spectrum does not match the group")
        D = planted.diagonal()
        if tag.family == "su" and abs(ml.det(D) - 1) > 1e-12:
            raise ValueError("planted spectrum has determinant != 1")
        U = random_unitary(tag.n, tag.field, rng)
        A = ml.mat_mul(ml.mat_mul(U, D), ml.adjoint(U))
    v = _random_translation(tag, rng) if tag.affine else None
    return Isometry(tag, A, v)


def planted_element(tag: GroupTag, angles, fixed_translation=None, seed: int = 0) -> Isometry:
    """A random conjugate of the normal element ``(diag(e^{i angles}), v)``.

    ``angles`` are listed in coordinate order; ``fixed_translation`` gives the
    entries of ``v`` on the coordinates with angle 0 (all zero if omitted).
    """
    rng = np.random.default_rng(seed)
    angles = np.asarray(angles, dtype=float)
    n = len(angles)
    vals = np.exp(1j * angles)
    vals[np.abs(angles) < 1e-15] = 1.0
    vals[np.abs(np.abs(angles) - math.pi) < 1e-15] = -1.0
    D = ml.diag_matrix(vals, tag.field)
    v = ml.zeros_vec(n, tag.field)
    if fixed_translation is not None:
        fixed = np.flatnonzero(np.abs(angles) < 1e-15)
        ft = ml.as_vec(fixed_translation, tag.field)
        if len(ft) != len(fixed):
            raise ValueError("fixed_translation length must match the number of fixed coordinates")
        v[fixed] = ft
    normal = Isometry(tag, D, v if tag.affine else None)
    h = Isometry(tag, _random_linear(tag, rng), _random_translation(tag, rng) if tag.affine else None)
    return conjugate(h, normal)


# ---------------------------------------------------------------------------
# planted spectra (angles in coordinate order)


def _fresh_angle(rng, used: list[float], lo: float = 0.1, hi: float = math.pi - 0.1) -> float:
    while True:
        a = float(rng.uniform(lo, hi))
        if all(abs(a - b) > 1e-3 for b in used):
            used.append(a)
            return a


def sp_angles(n: int, rng: np.random.Generator, parity: bool) -> list[float]:
    """Class angles for Sp(n); ``parity`` says whether every rotation class is even."""
    if not parity and n < 1:
        raise ValueError("need n >= 1 for an odd class")
    out: list[float] = []
    used: list[float] = []
    if not parity:
        m = int(rng.choice(range(1, n + 1, 2)))
        out += [_fresh_angle(rng, used)] * m
    while len(out) < n:
        rem = n - len(out)
        if rem >= 2 and rng.random() < 0.6:
            m = 2 * int(rng.integers(1, rem // 2 + 1))
            out += [_fresh_angle(rng, used)] * m
        else:
            out.append(math.pi if rng.random() < 0.5 else 0.0)
    return out


def self_dual_angles(n: int, rng: np.random.Generator, s: int | None = None,
                     t: int | None = None, special: bool = False, distinct: bool = False) -> list[float]:
    """Self-dual spectrum: conjugate pairs, then ``s`` copies of ``pi`` and ``t`` of 0.

    With ``special`` the ``-1`` count is kept even so that the determinant is 1.
    Pair angles repeat at random unless ``distinct``.
    """
    if s is None or t is None:
        while True:
            s_ = int(rng.integers(0, n + 1)) if s is None else s
            t_ = int(rng.integers(0, n - s_ + 1)) if t is None else t
            if (n - s_ - t_) % 2 == 0 and (not special or s_ % 2 == 0) and s_ + t_ <= n:
                s, t = s_, t_
                break
    if (n - s - t) % 2 or s + t > n or (special and s % 2):
        raise ValueError("infeasible self-dual signature")
    used: list[float] = []
    out: list[float] = []
    for _ in range((n - s - t) // 2):
        if used and not distinct and rng.random() < 0.3:
            a = used[int(rng.integers(len(used)))]
        else:
            a = _fresh_angle(rng, used)
        out += [a, -a]
    return out + [math.pi] * s + [0.0] * t


def non_self_dual_angles(n: int, rng: np.random.Generator, special: bool = False) -> list[float]:
    """A spectrum that is not closed under inversion (needs ``n >= 1``, or ``n >= 3`` with ``special``)."""
    while True:
        a = rng.uniform(-math.pi + 0.1, math.pi - 0.1, n)
        if special:
            a[-1] = -float(np.sum(a[:-1]))
            a[-1] = (a[-1] + math.pi) % (2 * math.pi) - math.pi
        sp = ml.Spectrum.from_angles("C", a)
        # keep clear of accidental pairing and of +-1
        gaps = [abs(x + y) for i, x in enumerate(a) for y in a[i:]]
        if (not sp.is_self_dual() and min(gaps) > 1e-3 and np.all(np.abs(a) > 1e-3)
                and np.all(np.abs(np.abs(a) - math.pi) > 1e-3)):
            return [float(x) for x in a]
