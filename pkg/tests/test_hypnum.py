from fractions import Fraction

import pytest
from mpmath import mp

from qmsurf.exactfield import QuadExt
from qmsurf.hypnum import (ALL_CHARS, EVEN_CHARS, ODD_CHARS, CurveModel,
                           build_period_matrix, even_theta_constants,
                           load_curve, parity, rosenhain_reconstruct,
                           small_period_matrix, theta_constant,
                           theta_gradient, validate_riemann)
from qmsurf.igusa import absolute_invariants_numeric, igusa_clebsch


def test_characteristic_parity_split():
    assert len(ALL_CHARS) == 16
    assert len(EVEN_CHARS) == 10
    assert len(ODD_CHARS) == 6
    assert all(parity(c) == 0 for c in EVEN_CHARS)
    assert all(parity(c) == 1 for c in ODD_CHARS)


@pytest.fixture(scope="module")
def disc6_tau(disc6_period_matrix):
    return small_period_matrix(disc6_period_matrix)


def test_riemann_relations(disc6_period_matrix):
    pm = disc6_period_matrix
    residual, eig = validate_riemann(pm.entries, pm.basis.intersection, 60)
    scale = pm.scale_norm() ** 2
    assert residual < mp.mpf(10) ** -45 * scale
    assert eig > 0


def test_tau_in_siegel_space(disc6_tau):
    tau = disc6_tau
    with mp.workdps(60):
        assert abs(tau[0, 1] - tau[1, 0]) < mp.mpf(10) ** -45
        det = (tau[0, 0].imag * tau[1, 1].imag
               - tau[0, 1].imag * tau[1, 0].imag)
        assert tau[0, 0].imag > 0 and det > 0


def test_odd_theta_constants_vanish(disc6_tau):
    with mp.workdps(60):
        for char in ODD_CHARS:
            assert abs(theta_constant(char, disc6_tau, 60)) < mp.mpf(10) ** -50


def test_even_theta_constants_nonzero(disc6_tau):
    values = even_theta_constants(disc6_tau, 60)
    assert len(values) == 10
    with mp.workdps(60):
        scale = max(abs(v) for v in values)
        assert all(abs(v) > scale * mp.mpf(10) ** -30 for v in values)


def test_odd_gradients_nonzero(disc6_tau):
    with mp.workdps(60):
        for char in ODD_CHARS:
            g1, g2 = theta_gradient(char, disc6_tau, 60)
            assert max(abs(g1), abs(g2)) > mp.mpf(10) ** -30


def test_precision_stability(qm_disc6_curve):
    pm40 = build_period_matrix(qm_disc6_curve, precision=40,
                               loops=[(2, 0), (3, 4), (0, 1), (4, 5)],
                               signs=[-1, -1, -1, 1])
    pm60 = build_period_matrix(qm_disc6_curve, precision=60,
                               loops=[(2, 0), (3, 4), (0, 1), (4, 5)],
                               signs=[-1, -1, -1, 1])
    with mp.workdps(60):
        scale = pm60.scale_norm()
        for r in range(2):
            for c in range(4):
                diff = abs(pm40.entries[r][c] - pm60.entries[r][c])
                assert diff < mp.mpf(10) ** -35 * scale


def test_rosenhain_round_trip(qm_disc6_curve, disc6_tau):
    model = rosenhain_reconstruct(disc6_tau, 60)
    with mp.workdps(70):
        got = absolute_invariants_numeric(
            [mp.mpc(0), mp.mpc(1)] + [mp.mpc(v) for v in model.lambdas],
            precision=60)
        expect = igusa_clebsch(qm_disc6_curve, 60).absolute_numeric
        for x, y in zip(expect, got):
            assert abs(x - y) < mp.mpf(10) ** -30 * max(abs(x), 1)


def test_displayed_period_digits(disc6_period_matrix):
    displayed = [
        [(35.97, -7.80), (-22.45, 0.0), (-12.37, 21.43), (11.23, -7.80)],
        [(3.36, -7.14), (-15.73, 0.0), (2.25, 3.90), (7.87, -7.14)],
    ]
    with mp.workdps(60):
        for r in range(2):
            for c in range(4):
                z = mp.mpc(*displayed[r][c])
                got = disc6_period_matrix.entries[r][c]
                assert abs(got - z) < mp.mpf("5e-3") * max(abs(z), 1)
