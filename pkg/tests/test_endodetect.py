from fractions import Fraction

from qmsurf import linalg
from qmsurf.endodetect import (AnalyticAction, analytic_to_homology,
                               is_integral_endomorphism)
from qmsurf.exactfield import QuadExt
from qmsurf.pollab import quaternionic_form

M_T6 = [[-2, -2, 1, 0], [-2, 2, -1, -1], [-2, 0, 0, -2], [2, 2, -4, 0]]
M_TM3 = [[3, -2, -2, 2], [2, -3, 0, 2], [4, -4, -1, 2], [0, -4, 2, 1]]


def q3(a, b=0):
    return QuadExt(Fraction(a), Fraction(b), -3)


def test_homology_matrices_match_golden(disc6_scan):
    assert [[int(x) for x in row] for row in disc6_scan.m_i] == M_T6
    assert [[int(x) for x in row] for row in disc6_scan.m_j] == M_TM3


def test_order_is_maximal_disc6(disc6_scan):
    assert disc6_scan.order.discriminant() == 6
    assert disc6_scan.order.is_maximal()
    assert disc6_scan.algebra.a == 6
    assert disc6_scan.algebra.b == -3


def test_analytic_round_trip(disc6_period_matrix):
    # T with T^2 = 6 acting as [[0,1],[6,0]] on the tangent space
    T6 = AnalyticAction([[q3(0), q3(1)], [q3(6), q3(0)]])
    M = analytic_to_homology(disc6_period_matrix, T6)
    assert is_integral_endomorphism(M)
    assert [[int(x) for x in row] for row in M] == M_T6
    sq = linalg.mat_mul(M, M)
    assert linalg.mat_eq(sq, linalg.mat_scale(linalg.identity(4), 6))


def test_non_endomorphism_rejected(disc6_period_matrix):
    bogus = AnalyticAction([[q3(1), q3(1)], [q3(0), q3(2)]])
    M = analytic_to_homology(disc6_period_matrix, bogus)
    assert not is_integral_endomorphism(M)


def test_compatible_form_type(disc6_scan):
    from qmsurf.pollab import frobenius_type
    form = quaternionic_form(disc6_scan.rep)
    assert frobenius_type(form)[0] == (1, 2)
