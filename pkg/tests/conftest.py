import os
from fractions import Fraction

import pytest

from qmsurf.exactfield import Poly, QuadExt
from qmsurf.hypnum import CurveModel, load_curve

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES, name)


@pytest.fixture(scope="session")
def qm_disc6_curve() -> CurveModel:
    return load_curve(fixture_path("qm_disc6_curve.json"))


@pytest.fixture(scope="session")
def qm_disc14_gauss_curve() -> CurveModel:
    return load_curve(fixture_path("qm_disc14_gauss_curve.json"))


@pytest.fixture(scope="session")
def disc6_period_matrix(qm_disc6_curve):
    from qmsurf.hypnum import build_period_matrix
    return build_period_matrix(qm_disc6_curve, precision=60,
                               loops=[(2, 0), (3, 4), (0, 1), (4, 5)],
                               signs=[-1, -1, -1, 1])


@pytest.fixture(scope="session")
def disc6_scan(disc6_period_matrix):
    from qmsurf.endodetect import AnalyticAction, scan_order

    def q(a, b=0):
        return QuadExt(Fraction(a), Fraction(b), -3)

    i_act = AnalyticAction([[q(0), q(1)], [q(6), q(0)]])
    j_act = AnalyticAction([[q(0, 1), q(0)], [q(0), q(0, -1)]])
    return scan_order(disc6_period_matrix, i_act, j_act)
