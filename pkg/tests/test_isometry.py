import numpy as np
import pytest
from hypothesis import given, strategies as st

from isorev import matlin as ml
from isorev.errors import TagMismatch
from isorev.isometry import (GroupTag, Isometry, compose, conjugate, identity, inverse, is_involution,
                             linear_part, membership_check, power)
from isorev.oracle import random_group_element

from strategies import seeds

U2 = GroupTag("u", True, 2)
K = np.array([[0, 1], [1, 0]], dtype=complex)


def test_tag_validation():
    with pytest.raises(ValueError):
        GroupTag("so", False, 2)
    with pytest.raises(ValueError):
        GroupTag("u", False, 0)
    assert GroupTag("sp", True, 3).field == "H"
    assert str(GroupTag("su", True, 5)) == "SU(5) x| C^5"


def test_isometry_validation():
    with pytest.raises(ValueError):
        Isometry(GroupTag("u", False, 2), K, [1, 0])
    with pytest.raises(ValueError):
        Isometry(U2, np.eye(3))
    with pytest.raises(ValueError):
        Isometry(U2, K, [np.nan, 0])
    g = Isometry(U2, K, [1, 2j])
    assert np.allclose(g([0, 0]), [1, 2j])


def test_compose_examples():
    I = np.eye(2)
    a = Isometry(U2, I, [1, 2])
    b = Isometry(U2, I, [3j, -1])
    assert np.allclose(compose(a, b).translation, [1 + 3j, 1])
    A = np.diag(np.exp(1j * np.array([0.3, 1.1])))
    g = Isometry(U2, A, [1, 1j])
    assert compose(Isometry(U2, A), Isometry(U2, A.conj().T)).distance(identity(U2)) <= 1e-15
    assert compose(g, inverse(g)).distance(identity(U2)) <= 1e-15
    with pytest.raises(TagMismatch):
        compose(g, identity(GroupTag("u", True, 3)))


def test_inverse_examples():
    assert np.allclose(inverse(Isometry(U2, np.eye(2), [1, 2])).translation, [-1, -2])
    A = np.diag(np.exp(1j * np.array([0.3, 1.1])))
    assert np.allclose(inverse(Isometry(U2, A)).linear, A.conj().T)
    t1 = GroupTag("u", True, 1)
    g = Isometry(t1, [[-1]], [2])
    gi = inverse(g)
    assert np.allclose(gi.linear, [[-1]]) and np.allclose(gi.translation, [2])
    assert compose(g, gi).distance(identity(t1)) == 0


def test_conjugate_examples():
    A = np.diag(np.exp(1j * np.array([0.3, 1.1])))
    u, w = np.array([1 + 1j, -2]), np.array([0.5, 3j])
    g = Isometry(U2, A, w)
    got = conjugate(Isometry(U2, np.eye(2), u), g)
    assert np.allclose(got.translation, w - (A - np.eye(2)) @ u)
    got = conjugate(Isometry(U2, K), Isometry(U2, A))
    assert np.allclose(got.linear, K @ A @ K)
    assert conjugate(g, g).distance(g) <= 1e-15


def test_involution_examples():
    assert is_involution(identity(U2))
    assert is_involution(Isometry(U2, -np.eye(2)))
    assert not is_involution(Isometry(GroupTag("u", True, 1), [[1]], [1]))
    assert power(Isometry(GroupTag("u", True, 1), [[1]], [1]), 3).translation[0] == 3


def test_membership_examples():
    assert membership_check(Isometry(U2, K))
    assert not membership_check(Isometry(GroupTag("su", True, 2), K))
    Bj = np.zeros((2, 2, 4))
    Bj[0, 0, 2] = Bj[1, 1, 2] = 1
    assert membership_check(Isometry(GroupTag("sp", False, 2), Bj))
    assert not membership_check(Isometry(U2, 2 * K))


groups = st.sampled_from(["sp", "u", "su"])


@given(groups, st.integers(1, 5), seeds)
def test_group_axioms(fam, n, seed):
    tag = GroupTag(fam, True, n)
    g1, g2, g3 = (random_group_element(tag, seed + k) for k in range(3))
    assert compose(compose(g1, g2), g3).distance(compose(g1, compose(g2, g3))) <= 1e-10
    assert compose(g1, inverse(g1)).distance(identity(tag)) <= 1e-10
    lhs = conjugate(compose(g1, g2), g3)
    rhs = conjugate(g1, conjugate(g2, g3))
    assert lhs.distance(rhs) <= 1e-10
    # the linear-part projection is a homomorphism
    prod = linear_part(compose(g1, g2))
    assert ml.maxnorm(prod.linear - ml.mat_mul(g1.linear, g2.linear)) <= 1e-12
    assert membership_check(g1)


@given(st.integers(1, 5), seeds)
def test_linear_part_of_involution(n, seed):
    from isorev.classify import classify
    from isorev.oracle import planted_element, self_dual_angles

    rng = np.random.default_rng(seed)
    g = planted_element(GroupTag("u", True, n), self_dual_angles(n, rng), seed=seed)
    h = classify(g).witness
    assert is_involution(h, 1e-9 * n)
    assert is_involution(linear_part(h), 1e-9 * n)
