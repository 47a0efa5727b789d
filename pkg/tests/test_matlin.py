import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from isorev import matlin as ml
from isorev.errors import DimensionMismatch, NotUnitary
from isorev.oracle import random_unitary
from isorev.scalar import Quaternion, q_mul

from strategies import seeds

J = np.array([[[0, 0, 1.0, 0]]])
I1 = np.array([[[0, 1.0, 0, 0]]])
K2 = np.array([[0, 1], [1, 0]], dtype=complex)


def quat_diag(*qs):
    out = np.zeros((len(qs), len(qs), 4))
    for k, q in enumerate(qs):
        out[k, k] = q
    return out


def test_adjoint_examples():
    assert ml.adjoint(np.array([[1j]]))[0, 0] == -1j
    assert np.array_equal(ml.adjoint(J), -J)
    assert np.array_equal(ml.adjoint(K2), K2)


def test_is_unitary_examples():
    assert ml.is_unitary(np.eye(3))
    assert ml.is_unitary(K2)
    assert not ml.is_unitary(np.array([[2.0 + 0j]]))


def test_hermitian_form_examples():
    e1, e2 = np.array([1, 0], complex), np.array([0, 1], complex)
    assert ml.hermitian_form(e1, e1) == 1
    assert ml.hermitian_form(e1, e2) == 0
    # (j, k): compare with the product of embedded 2x2 blocks
    got = ml.hermitian_form(np.array([[0, 0, 1.0, 0]]), np.array([[0, 0, 0, 1.0]]))
    ej = ml.embed_complex(J)
    ek = ml.embed_complex(np.array([[[0, 0, 0, 1.0]]]))
    expect = ml.unembed_complex(ej.conj().T @ ek)[0, 0]
    assert np.allclose(got.to_array(), expect) and got.isclose(Quaternion(0, -1, 0, 0))
    with pytest.raises(DimensionMismatch):
        ml.hermitian_form(e1, np.zeros(3, complex))
    assert ml.metric(e1, e2) == pytest.approx(math.sqrt(2))


def test_embed_examples():
    assert np.array_equal(ml.embed_complex(np.array([[[1.0, 0, 0, 0]]])), np.eye(2))
    ej = ml.embed_complex(J)
    assert np.array_equal(ej, [[0, 1], [-1, 0]])
    assert np.array_equal(ej @ ej, ml.embed_complex(np.array([[[-1.0, 0, 0, 0]]])))
    ei = ml.embed_complex(I1)
    assert np.array_equal(ei, np.diag([1j, -1j]))
    assert np.array_equal(ei @ ej, ml.embed_complex(np.array([[[0, 0, 0, 1.0]]])))


def test_eig_unitary_examples():
    lam, V = ml.eig_unitary(K2)
    assert np.allclose(sorted(lam.real), [-1, 1])
    assert np.allclose(K2 @ V, V * lam)
    lam, _ = ml.eig_unitary(np.eye(4))
    assert np.allclose(lam, 1)
    d = np.exp(1j * np.array([math.pi / 3, -math.pi / 3]))
    lam, V = ml.eig_unitary(np.diag(d))
    assert np.allclose(sorted(np.angle(lam)), sorted(np.angle(d)))
    assert np.allclose(np.abs(V) @ np.abs(V).T, np.eye(2))
    with pytest.raises(NotUnitary):
        ml.eig_unitary(np.diag([2.0 + 0j]))


def test_diagonalize_sp_examples():
    U, th = ml.diagonalize_sp(I1)
    assert np.allclose(th, [math.pi / 2])
    U, th = ml.diagonalize_sp(J)
    assert np.allclose(th, [math.pi / 2])
    conj = ml.mat_mul(ml.mat_mul(U, J), ml.adjoint(U))
    assert np.allclose(conj, I1, atol=1e-12)
    L = np.zeros((2, 2, 4))
    L[0, 1, 2], L[1, 0, 2] = 1, -1
    _, th = ml.diagonalize_sp(L)
    assert np.allclose(sorted(th), [0, math.pi])
    # L's embedding has eigenvalues +-1, one pair each
    assert np.allclose(sorted(np.linalg.eigvals(ml.embed_complex(L)).real), [-1, -1, 1, 1])


def test_eigenclasses_examples():
    sp = ml.eigenclasses(quat_diag([0, 1, 0, 0], [0, 1, 0, 0], [-1, 0, 0, 0]))
    assert [(round(c.theta, 9), c.multiplicity) for c in sp.classes] == [(round(math.pi / 2, 9), 2), (round(math.pi, 9), 1)]
    assert (sp.r, sp.s, sp.t) == (2, 1, 0)
    sp = ml.eigenclasses(quat_diag([0, 0, 1, 0], [0, 0, 0, 1]))
    assert len(sp.classes) == 1 and sp.classes[0].multiplicity == 2
    assert sp.classes[0].theta == pytest.approx(math.pi / 2)
    sp = ml.eigenclasses(np.diag(np.exp(1j * np.array([math.pi / 3, -math.pi / 3]))))
    assert sorted(c.theta for c in sp.classes) == pytest.approx([-math.pi / 3, math.pi / 3])


def test_self_dual_examples():
    e = lambda *a: np.diag(np.exp(1j * np.array(a)))
    assert ml.spectrum_self_dual(e(math.pi / 3, -math.pi / 3))
    assert not ml.spectrum_self_dual(e(math.pi / 3, math.pi / 3))
    assert ml.spectrum_self_dual(np.diag([-1, -1, 1]).astype(complex))


def test_spectrum_layout_and_json():
    sp = ml.Spectrum.from_angles("C", [0.5, -0.5, 0.5, -0.5, math.pi, 0.0])
    assert sp.layout() == pytest.approx([0.5, -0.5, 0.5, -0.5, math.pi, 0.0])
    assert sp.to_json() == {"rotations": [[-0.5, 2], [0.5, 2]], "s": 1, "t": 1}
    assert sp.pairs == 2 and sp.n == 6


@given(seeds, st.integers(1, 4))
def test_embed_is_star_homomorphism(seed, n):
    rng = np.random.default_rng(seed)
    M, N = rng.standard_normal((n, n, 4)), rng.standard_normal((n, n, 4))
    lhs = ml.embed_complex(ml.mat_mul(M, N))
    assert ml.maxnorm(lhs - ml.embed_complex(M) @ ml.embed_complex(N)) <= 1e-11
    assert ml.maxnorm(ml.embed_complex(ml.adjoint(M)) - ml.embed_complex(M).conj().T) == 0


@given(seeds, st.integers(1, 6))
def test_sp_eigen_folding(seed, n):
    A = random_unitary(n, "H", np.random.default_rng(seed))
    lam = np.linalg.eigvals(ml.embed_complex(A))
    folded = np.sort(np.abs(np.angle(lam)))
    U, th = ml.diagonalize_sp(A)
    assert np.allclose(folded, np.sort(np.repeat(th, 2)), atol=1e-8)
    D = ml.mat_mul(ml.mat_mul(U, A), ml.adjoint(U))
    assert ml.maxnorm(D - ml.diag_matrix(np.exp(1j * th), "H")) <= 1e-8 * n
    assert ml.is_unitary(U, 1e-9 * n)


@given(seeds, st.integers(1, 6))
def test_spectral_reconstruction(seed, n):
    A = random_unitary(n, "C", np.random.default_rng(seed))
    lam, V = ml.eig_unitary(A)
    assert ml.maxnorm(V @ np.diag(lam) @ V.conj().T - A) <= 1e-8 * n
    assert ml.is_unitary(V, 1e-9 * n)
    assert np.allclose(np.abs(lam), 1, atol=1e-9)


@given(seeds, st.integers(1, 5), st.booleans())
def test_self_duality_invariance(seed, n, planted):
    rng = np.random.default_rng(seed)
    if planted:
        a = rng.uniform(0.1, 3.0, n // 2)
        ang = list(a) + list(-a) + [0.0] * (n % 2)
    else:
        ang = rng.uniform(-3, 3, n)
    A = np.diag(np.exp(1j * np.array(ang)))
    U = random_unitary(n, "C", rng)
    B = U @ A @ U.conj().T
    sd = ml.spectrum_self_dual(A)
    assert sd == ml.spectrum_self_dual(A.conj().T) == ml.spectrum_self_dual(B)
    if planted:
        assert sd
