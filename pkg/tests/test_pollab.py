from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from qmsurf import linalg
from qmsurf.pollab import (HomologyRep, PolarizationError, check_alternating,
                           frobenius_type, pfaffian, principal_search,
                           q_polarizability, quaternionic_form, rosati_image,
                           twist_form)
from qmsurf.quatalg import QuatAlgebra, QuatOrder

# genus-two homology representation of the discriminant-6 algebra (6, -3)
M_I = [[0, -2, 0, -2], [-1, 0, 1, 0], [0, 4, 0, -2], [-2, 0, -1, 0]]
M_J = [[-1, 0, -2, 0], [0, -1, 0, 2], [2, 0, 1, 0], [0, -2, 0, 1]]
E_FORM = [[0, 0, 1, 0], [0, 0, 0, 2], [-1, 0, 0, 0], [0, -2, 0, 0]]
E_GAMMA = [[0, -1, 1, 1], [1, 0, 1, 2], [-1, -1, 0, 0], [-1, -2, 0, 0]]
M_STD = [[0, 1, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 1], [0, -1, 0, -1]]

COORDS = st.fractions(min_value=-8, max_value=8, max_denominator=6)
QUAT = st.tuples(COORDS, COORDS, COORDS, COORDS)


@pytest.fixture(scope="module")
def rep():
    return HomologyRep(QuatAlgebra(Fraction(6), Fraction(-3)), M_I, M_J)


@pytest.fixture(scope="module")
def order():
    alg = QuatAlgebra(Fraction(6), Fraction(-3))
    return QuatOrder([
        alg.element(1),
        alg.element(0, Fraction(1, 2), 0, Fraction(1, 6)),
        alg.element(Fraction(1, 2), 0, Fraction(1, 2)),
        alg.element(0, 0, 0, Fraction(1, 3)),
    ])


def test_pfaffian_standard():
    J = [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]
    assert pfaffian(linalg.mat(J)) == -1
    check_alternating(linalg.mat(J))  # raises on a non-alternating form


def test_frobenius_types():
    assert frobenius_type(linalg.mat(E_FORM))[0] == (1, 2)
    assert frobenius_type(linalg.mat(E_GAMMA))[0] == (1, 1)


@given(x=QUAT, y=QUAT)
@settings(max_examples=120, deadline=None)
def test_rep_homomorphism(rep, x, y):
    alg = rep.algebra
    p, q = alg.element(*x), alg.element(*y)
    assert linalg.mat_eq(rep.matrix(p * q),
                         linalg.mat_mul(rep.matrix(p), rep.matrix(q)))


@given(x=QUAT)
@settings(max_examples=120, deadline=None)
def test_det_is_norm_squared(rep, x):
    p = rep.algebra.element(*x)
    assert linalg.det(rep.matrix(p)) == p.nrd() ** 2


@given(x=QUAT, y=QUAT)
@settings(max_examples=120, deadline=None)
def test_rosati_antihomomorphism(rep, x, y):
    """Rosati with respect to E is an involutive anti-homomorphism."""
    E = linalg.mat(E_FORM)
    p, q = rep.algebra.element(*x), rep.algebra.element(*y)
    assume(p.nrd() and q.nrd())
    mp_, mq = rep.matrix(p), rep.matrix(q)
    left = rosati_image(linalg.mat_mul(mp_, mq), E)
    right = linalg.mat_mul(rosati_image(mq, E), rosati_image(mp_, E))
    assert linalg.mat_eq(left, right)
    assert linalg.mat_eq(rosati_image(rosati_image(mp_, E), E), mp_)


@given(x=QUAT)
@settings(max_examples=120, deadline=None)
def test_rosati_is_j_twisted_conjugation(rep, x):
    """Rosati of E sends M(q) to M(j^-1 q~ j) with q~ the main involution."""
    E = linalg.mat(E_FORM)
    p = rep.algebra.element(*x)
    j = rep.algebra.element(0, 0, 1)
    expect = j.inverse() * p.conj() * j
    assert linalg.mat_eq(rosati_image(rep.matrix(p), E), rep.matrix(expect))


def test_rosati_j_sign(rep):
    assert rep.rosati_j_sign(linalg.mat(E_FORM)) == -1


def test_quaternionic_form_recovers_E(rep):
    got = quaternionic_form(rep)
    assert linalg.mat_eq(got, linalg.mat(E_FORM)) or \
        linalg.mat_eq(got, linalg.mat_scale(linalg.mat(E_FORM), -1))


def test_twist_rejects_nonsymmetric(rep):
    with pytest.raises(PolarizationError):
        twist_form(linalg.mat(E_FORM), rep.matrix(rep.algebra.element(0, 0, 1)))


def test_principal_search_disc6(rep, order):
    cands = principal_search(order, -1, linalg.mat(E_FORM), rep)
    assert len(cands) == 1
    gamma = rep.algebra.element(2, Fraction(1, 2), 0, Fraction(-1, 6))
    assert any(g == gamma for g in cands[0].cls)
    assert frobenius_type(cands[0].form)[0] == (1, 1)
    # twisting by the golden gamma gives the golden principal form entrywise
    twisted = linalg.mat_mul(linalg.mat(E_FORM), rep.matrix(gamma.inverse()))
    assert linalg.mat_eq(twisted, linalg.mat(E_GAMMA))


def test_principal_basis_change_standardizes(rep, order):
    cands = principal_search(order, -1, linalg.mat(E_FORM), rep)
    U = cands[0].basis_change
    std = linalg.mat_mul(linalg.mat_mul(linalg.transpose(U), cands[0].form), U)
    J = [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]
    assert linalg.mat_eq(std, linalg.mat(J))
    assert abs(linalg.det(U)) == 1


def test_q_polarizability():
    assert q_polarizability(6, 5)
    assert q_polarizability(10, 5)
    assert not q_polarizability(6, -3)
    assert not q_polarizability(6, 1)
