import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from isorev.errors import NonUnitScalar
from isorev.matlin import embed_complex
from isorev.scalar import (QI, QJ, QK, QONE, CommutationSolutionClass as CS, Quaternion, SimilarityClass,
                           canonical_rep, commutation_residual, q_join, q_mul, q_split, solve_commutation)

from strategies import quats, unit


def test_basis_products():
    assert q_mul(QI, QJ) == QK
    assert q_mul(QJ, QK) == QI
    assert q_mul(QK, QI) == QJ
    assert q_mul(QJ, QI) == -QK
    for b in (QI, QJ, QK):
        assert q_mul(b, b) == -QONE


def test_identity_product():
    q = Quaternion(1.5, -2, 0.25, 3)
    assert q_mul(QONE, q) == q and q_mul(q, QONE) == q


def test_split_examples():
    assert q_split(QJ) == (0, 1)
    assert q_split(QK) == (0, 1j)
    assert q_split(Quaternion(1, 2, 3, 4)) == (1 + 2j, 3 + 4j)
    assert q_join(1 + 2j, 3 + 4j) == Quaternion(1, 2, 3, 4)


def test_quaternion_ops():
    q = Quaternion(1, 2, 3, 4)
    assert q.conj() == Quaternion(1, -2, -3, -4)
    assert q.norm2() == 30
    assert (q * q.inverse()).isclose(QONE)
    assert (2 * q) == q * 2.0 == Quaternion(2, 4, 6, 8)
    assert (q - q) == Quaternion()
    assert (1j * QJ) == QK
    with pytest.raises(ValueError):
        Quaternion(math.nan)
    with pytest.raises(ZeroDivisionError):
        Quaternion().inverse()


def test_canonical_rep_examples():
    assert canonical_rep(QI) == pytest.approx(math.pi / 2)
    assert canonical_rep(-QONE) == pytest.approx(math.pi)
    # j: compare with the eigenvalues of its complex embedding
    lam = np.linalg.eigvals(embed_complex(np.array([[[0, 0, 1.0, 0]]])))
    assert canonical_rep(QJ) == pytest.approx(np.abs(np.angle(lam)).max())
    with pytest.raises(NonUnitScalar):
        canonical_rep(Quaternion(2.0))


def test_similarity_class():
    c = SimilarityClass(math.pi / 3, 2)
    assert c.representative.imag >= 0
    with pytest.raises(ValueError):
        SimilarityClass(-1.0)
    with pytest.raises(ValueError):
        SimilarityClass(1.0, 0)


def test_solve_commutation_examples():
    assert solve_commutation(math.pi / 3, math.pi / 4) is CS.ZERO_ONLY
    assert solve_commutation(math.pi / 3, math.pi / 3) is CS.COMPLEX_LINE
    assert solve_commutation(math.pi / 3, -math.pi / 3) is CS.COMPLEX_J_LINE
    with pytest.raises(ValueError):
        solve_commutation(0.0, 1.0)


@given(quats, quats)
def test_norm_multiplicative(p, q):
    pq = abs(q_mul(p, q))
    assert pq == pytest.approx(np.linalg.norm(p) * np.linalg.norm(q), rel=1e-12, abs=1e-12)


@given(quats, quats)
def test_conj_antihomomorphism(p, q):
    p, q = Quaternion.from_array(unit(p)), Quaternion.from_array(unit(q))
    assert q_mul(p, q).conj().isclose(q_mul(q.conj(), p.conj()), 1e-15)


@given(quats, quats, quats)
def test_associative(p, q, r):
    lhs = q_mul(q_mul(p, q), r).to_array()
    rhs = q_mul(p, q_mul(q, r)).to_array()
    assert np.allclose(lhs, rhs, atol=1e-9)


@given(quats, quats)
def test_canonical_rep_conjugation_invariant(mu, q):
    mu, q = Quaternion.from_array(unit(mu)), Quaternion.from_array(unit(q))
    conj = q_mul(q_mul(mu.inverse(), q), mu)
    assert abs(canonical_rep(conj) - canonical_rep(q)) <= 1e-6  # arccos amplifies near 0, pi
    assume(0.1 < canonical_rep(q) < math.pi - 0.1)
    assert abs(canonical_rep(conj) - canonical_rep(q)) <= 1e-10


@given(st.floats(0.05, math.pi - 0.05), st.sampled_from(["same", "neg", "other"]),
       st.floats(0.05, 1.0), quats)
def test_solve_commutation_brute_force(alpha, kind, shift, x):
    beta = {"same": alpha, "neg": -alpha, "other": alpha + shift}[kind]
    beta = (beta + math.pi) % (2 * math.pi) - math.pi
    sol = solve_commutation(alpha, beta)
    u, v = q_split(x)
    inside = {CS.ZERO_ONLY: QONE * 0.0, CS.COMPLEX_LINE: q_join(u, 0), CS.COMPLEX_J_LINE: q_join(0, v)}[sol]
    assert sol.contains(inside)
    assert commutation_residual(inside, alpha, beta) <= 1e-12 * (1 + abs(inside))
    if sol is CS.ZERO_ONLY:
        assume(np.linalg.norm(x) > 1e-3)
        assert commutation_residual(x, alpha, beta) > 1e-9
