from fractions import Fraction

import pytest
from mpmath import mp

from qmsurf.exactfield import QuadExt
from qmsurf.igusa import igusa_clebsch, same_invariants
from qmsurf.richelot import (RichelotError, enumerate_groupings,
                             richelot_step, verify_isogeny_periods)

GOLDEN_PAIRS = ((0, 2), (1, 5), (3, 4))


def q3(a, b=0):
    return QuadExt(Fraction(a), Fraction(b), -3)


GOLDEN_G = [
    q3(Fraction(-3, 243), Fraction(2, 243)),
    q3(Fraction(8, 27)),
    q3(Fraction(-36, 27), Fraction(-20, 27)),
    q3(Fraction(28, 27), Fraction(92, 27)),
    q3(Fraction(10, 3), Fraction(-18, 3)),
    q3(Fraction(-18, 3), Fraction(14, 3)),
    q3(Fraction(8, 3), Fraction(-4, 3)),
]

GOLDEN_PAIRING = [
    ((0, 2), (1, 2), Fraction(2)),
    ((1, 5), (2, 3), Fraction(2)),
    ((3, 4), (3, 4), Fraction(2)),
    ((0, 1), (0, 2), Fraction(1)),
    ((2, 4), (1, 4), Fraction(1)),
    ((4, 5), (3, 5), Fraction(1)),
]


@pytest.fixture(scope="module")
def golden_image(qm_disc6_curve):
    for grouping in enumerate_groupings(qm_disc6_curve, 60):
        if grouping.pairs == GOLDEN_PAIRS:
            return richelot_step(grouping, label="disc6_image")
    raise AssertionError("golden grouping missing")


def test_fifteen_groupings(qm_disc6_curve):
    groupings = enumerate_groupings(qm_disc6_curve, 60)
    assert len(groupings) == 15
    assert len({g.pairs for g in groupings}) == 15


def test_golden_grouping_exact_image(golden_image):
    assert golden_image.exact
    assert golden_image.delta_value == q3(Fraction(2, 3))
    got = [golden_image.curve.poly[k] for k in range(7)]
    assert got == GOLDEN_G


def test_image_has_same_invariants(qm_disc6_curve, golden_image):
    assert same_invariants(qm_disc6_curve, golden_image.curve, 60)


def test_image_invariants_recognized(golden_image):
    inv = igusa_clebsch(golden_image.curve, 60)
    assert inv.recognized


def test_period_identities(qm_disc6_curve, golden_image):
    residuals = verify_isogeny_periods(
        qm_disc6_curve, golden_image.curve,
        pairing=GOLDEN_PAIRING, precision=60)
    assert len(residuals) == 6
    assert max(residuals) < mp.mpf(10) ** -45


def test_period_identities_autodiscovered(qm_disc6_curve, golden_image):
    found = verify_isogeny_periods(
        qm_disc6_curve, golden_image.curve, precision=60)
    assert len(found) >= 6
    assert max(entry[3] for entry in found) < mp.mpf(10) ** -40
    golden = {(s1, s2): m for (s1, s2, m) in GOLDEN_PAIRING}
    discovered = {(s1, s2): m for (s1, s2, m, _res) in found}
    for key, mult in golden.items():
        assert discovered.get(key) == mult


def test_quintic_rejected(qm_disc6_curve):
    from qmsurf.exactfield import Poly
    from qmsurf.hypnum import CurveModel
    quintic = CurveModel(Poly([q3(k + 1) for k in range(6)], -3))
    with pytest.raises(RichelotError):
        enumerate_groupings(quintic, 60)
