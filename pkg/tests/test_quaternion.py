import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import conjugation_witness, qmat, unmat
from quatcongruence.quaternion import (
    I,
    J,
    K,
    ONE,
    ComplexRep,
    Quaternion,
    complex_rep,
    conjugator_to_complex,
    from_complex_matrix,
    mul,
    qinv,
    qmatmul,
    qmul,
    qrank,
    qsolve,
    similar,
    to_complex_matrix,
)

coef = st.floats(-10, 10, allow_nan=False)
quats = st.builds(Quaternion, coef, coef, coef, coef)
nonzero = quats.filter(lambda q: abs(q) > 1e-3)


def close(a, b, tol=1e-12):
    return abs(Quaternion.coerce(a) - Quaternion.coerce(b)) <= tol * max(1.0, abs(Quaternion.coerce(b)))


def test_basis_products():
    assert mul(I, J) == K
    assert mul(J, K) == I
    assert mul(K, I) == J
    assert mul(J, I) == -K
    for u in (I, J, K):
        assert mul(u, u) == -ONE


def test_worked_products():
    assert (Quaternion(1, 1) * Quaternion(1, 0, 1)) == Quaternion(1, 1, 1, 1)
    a = Quaternion(0.3, -1.2, 2.0, 0.7)
    assert ONE * a == a


@given(quats, quats)
def test_product_matches_matrix_model(a, b):
    expected = unmat(qmat(a.to_array()) @ qmat(b.to_array()))
    assert np.allclose((a * b).to_array(), expected, atol=1e-9)


@given(quats, quats)
def test_conjugation_identities(a, b):
    assert a.conj().conj() == a
    assert close((a * b).conj(), b.conj() * a.conj(), 1e-12)
    p = a * a.conj()
    assert math.isclose(p.real, a.norm2(), rel_tol=1e-12, abs_tol=1e-12)
    assert p.imag_abs() <= 1e-12 * max(1.0, a.norm2())


@given(nonzero)
def test_inverse(a):
    assert close(a * a.inverse(), ONE, 1e-12)
    assert close(a.inverse(), a.conj() / a.norm2(), 1e-12)


@given(quats, quats)
def test_real_part_is_a_trace(a, b):
    assert math.isclose((a * b).real, (b * a).real, rel_tol=1e-12, abs_tol=1e-9)


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        Quaternion().inverse()


def test_similar_examples():
    a = Quaternion(1.0, 2.0, -0.5, 3.0)
    assert similar(a, a, 0.0)
    assert similar(J, I, 1e-12)
    assert not similar(I, 2 * I, 1e-9)
    with pytest.raises(ValueError):
        similar(I, J, -1.0)


def test_similarity_witness_found_by_search():
    residual, lam = conjugation_witness(J.to_array(), I.to_array(), steps=4)
    assert residual < 1e-12
    lam = Quaternion.from_array(lam)
    assert close(lam * J * lam.inverse(), I, 1e-12)


def test_complex_rep_examples():
    assert complex_rep(Quaternion(1, 0, 2, 0)) == ComplexRep(1.0, 2.0)
    assert complex_rep(3) == ComplexRep(3.0, 0.0)
    assert complex_rep(I) == ComplexRep(0.0, 1.0)
    with pytest.raises(ValueError):
        ComplexRep(0.0, -1.0)


def test_conjugator_examples():
    assert conjugator_to_complex(I) == ONE
    assert conjugator_to_complex(Quaternion(5.0)) == ONE
    lam = conjugator_to_complex(-I)
    assert close(lam, J, 1e-15)
    assert close(J.inverse() * -I * J, I, 1e-15)
    a = Quaternion(1, 0, 2, 0)
    lam = conjugator_to_complex(a)
    assert close(lam.inverse() * a * lam, Quaternion(1, 2), 1e-12)


@settings(max_examples=300)
@given(quats)
def test_conjugator_reaches_complex_rep(a):
    lam = conjugator_to_complex(a)
    assert math.isclose(abs(lam), 1.0, rel_tol=1e-12)
    assert close(lam.inverse() * a * lam, complex_rep(a).to_quaternion(), 1e-12)


@given(quats, nonzero)
def test_complex_rep_is_a_class_invariant(a, u):
    lam = u.unit()
    b = lam.inverse() * a * lam
    ra, rb = complex_rep(a), complex_rep(b)
    scale = max(1.0, abs(a))
    assert abs(ra.re - rb.re) <= 1e-12 * scale
    assert abs(ra.im - rb.im) <= 1e-12 * scale
    assert math.isclose(ra.re ** 2 + ra.im ** 2, a.norm2(), rel_tol=1e-12, abs_tol=1e-12)


@given(nonzero)
def test_unit_imaginary_squares_to_minus_one(a):
    if a.imag_abs() < 1e-3:
        return
    u = a.imag / a.imag_abs()
    assert close(u * u, -ONE, 1e-12)


def test_complex_adjoint_is_multiplicative(rng):
    a = rng.normal(size=(3, 2, 4))
    b = rng.normal(size=(2, 4, 4))
    lhs = to_complex_matrix(qmatmul(a, b))
    rhs = to_complex_matrix(a) @ to_complex_matrix(b)
    assert np.allclose(lhs, rhs, atol=1e-12)
    assert np.allclose(from_complex_matrix(to_complex_matrix(a)), a)


def test_solve_and_inverse(rng):
    a = rng.normal(size=(4, 4, 4))
    x = rng.normal(size=(4, 2, 4))
    b = qmatmul(a, x)
    assert np.allclose(qsolve(a, b), x, atol=1e-10)
    eye = qmatmul(a, qinv(a))
    assert np.allclose(eye[..., 0], np.eye(4), atol=1e-10)
    assert np.abs(eye[..., 1:]).max() < 1e-10


def test_right_rank(rng):
    v = rng.normal(size=(3, 4))
    lam = rng.normal(size=4)
    w = rng.normal(size=(3, 4))
    assert qrank(np.stack([v, qmul(v, lam)])) == 1
    assert qrank(np.stack([v, w])) == 2
    # left multiples are not right multiples in general
    assert qrank(np.stack([v, qmul(lam, v)])) == 2
