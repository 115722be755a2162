"""Endomorphism detection from period matrices.

A candidate analytic action T (2x2 over a quadratic field, acting on the
differentials) is an endomorphism of the abelian surface exactly when the
solution M of  t(T) . Omega = Omega . M  is an integer matrix. M is solved
for in floats, reconstructed entrywise into rationals, and the defining
relation re-verified; the full endomorphism order is then recovered by a
finite denominator scan over quaternion coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence, Tuple

from mpmath import mp

from . import linalg, pollab, quatalg
from .exactfield import QuadExt, rational_reconstruct
from .linalg import Matrix
from .quatalg import QuatAlgebra, QuatOrder


class DetectionError(RuntimeError):
    pass


@dataclass
class AnalyticAction:
    """2x2 matrix over Q(sqrt(delta)) acting on the differential basis."""
    entries: List[List[QuadExt]]

    def __post_init__(self):
        deltas = {e.delta for row in self.entries for e in row}
        if len(deltas) != 1:
            raise ValueError("entries must share one quadratic field")

    @property
    def delta(self) -> int:
        return self.entries[0][0].delta

    def square_scalar(self) -> Optional[QuadExt]:
        """c with T^2 = c*Id, if T squares to a scalar (exact)."""
        e = self.entries
        sq = [[sum((e[i][k] * e[k][j] for k in range(2)),
                   QuadExt(0, 0, self.delta)) for j in range(2)]
              for i in range(2)]
        if sq[0][1] or sq[1][0] or sq[0][0] != sq[1][1]:
            return None
        return sq[0][0]

    def embed_t(self, precision: int) -> mp.matrix:
        """The transpose, embedded to complex floats."""
        m = mp.matrix(2, 2)
        for i in range(2):
            for j in range(2):
                m[j, i] = self.entries[i][j].embed(precision)
        return m


def analytic_to_homology(pm, T: AnalyticAction,
                         max_denominator: int = 10**8) -> Optional[Matrix]:
    """Rational 4x4 matrix M with t(T).Omega = Omega.M, or None.

    The linear system is solved in floats (real and imaginary parts stacked),
    each entry is rationally reconstructed, and the relation is re-verified
    at tolerance 10^(-P/2) with the exact M substituted back. None means
    "not a (fractional) endomorphism at this precision".
    """
    P = pm.precision
    with mp.workdps(P + 10):
        Om = mp.matrix(pm.entries)
        L = T.embed_t(P + 10) * Om
        S = mp.matrix(4, 4)
        R = mp.matrix(4, 4)
        for j in range(4):
            for i in range(2):
                S[i, j] = Om[i, j].real
                S[i + 2, j] = Om[i, j].imag
                R[i, j] = L[i, j].real
                R[i + 2, j] = L[i, j].imag
        try:
            cols = [mp.lu_solve(S, R[:, c]) for c in range(4)]
        except ZeroDivisionError:
            raise DetectionError("stacked period matrix is singular")
        tol = mp.mpf(10) ** (-P // 2)
        M: Matrix = [[Fraction(0)] * 4 for _ in range(4)]
        for c in range(4):
            for r in range(4):
                val = rational_reconstruct(cols[c][r], max_denominator, tol)
                if val is None:
                    return None
                M[r][c] = val
        # exact M back into the defining relation
        Mf = mp.matrix(4, 4)
        for r in range(4):
            for c in range(4):
                Mf[r, c] = mp.mpf(M[r][c].numerator) / M[r][c].denominator
        res = mp.mnorm(L - Om * Mf, 1)
        scale = max(abs(Om[i, j]) for i in range(2) for j in range(4))
        if res > tol * scale:
            return None
        return M


def is_integral_endomorphism(M: Optional[Matrix]) -> bool:
    return M is not None and linalg.is_integral(M)


def rosati(M: Matrix, M_E: Matrix) -> Matrix:
    """Rosati involution M -> (M_E . M . M_E^-1)^t."""
    return pollab.rosati_image(M, M_E)


@dataclass
class ScanResult:
    order: QuatOrder
    rep: pollab.HomologyRep
    m_i: Matrix
    m_j: Matrix
    algebra: QuatAlgebra


def scan_order(pm, i_action: AnalyticAction, j_action: AnalyticAction,
               denominator_bound: Optional[int] = None,
               max_denominator: int = 10**8) -> ScanResult:
    """The order of all quaternions acting integrally on homology.

    The generators must square to rational scalars a, b < 0 disallowed only
    jointly (indefinite algebra not required here). Candidates are
    (x0 + x1 i + x2 j + x3 k)/n over divisors n of the denominator bound;
    by linearity their homology matrices are rational combinations of the
    generators' matrices, so integrality is a pure integer test.
    """
    a = i_action.square_scalar()
    b = j_action.square_scalar()
    if a is None or not a.is_rational() or b is None or not b.is_rational():
        raise DetectionError("generators must square to rational scalars")
    a, b = a.a, b.a
    alg = QuatAlgebra(a, b)
    m_i = analytic_to_homology(pm, i_action, max_denominator)
    m_j = analytic_to_homology(pm, j_action, max_denominator)
    if not (is_integral_endomorphism(m_i) and is_integral_endomorphism(m_j)):
        raise DetectionError("generators are not integral endomorphisms")
    rep = pollab.HomologyRep(alg, m_i, m_j)
    if denominator_bound is None:
        denom = lcm(*(int(x.denominator) for M in (m_i, m_j)
                      for row in M for x in row), 1)
        denominator_bound = 2 * alg.discriminant() * denom
    mats = (linalg.identity(4), rep.m_i, rep.m_j, rep.m_k)
    found: List[Tuple[Fraction, ...]] = [
        (Fraction(1), Fraction(0), Fraction(0), Fraction(0)),
        (Fraction(0), Fraction(1), Fraction(0), Fraction(0)),
        (Fraction(0), Fraction(0), Fraction(1), Fraction(0)),
        (Fraction(0), Fraction(0), Fraction(0), Fraction(1)),
    ]
    # the generator matrices are integral, so (sum x_t M_t)/n is integral
    # exactly when the integer combination vanishes entrywise mod n
    flat = [[int(mats[t][r][c]) for r in range(4) for c in range(4)]
            for t in range(4)]
    divisors = [n for n in range(2, denominator_bound + 1)
                if denominator_bound % n == 0]
    from math import gcd
    for n in divisors:
        rows_mod = [[x % n for x in row] for row in flat]
        for x0 in range(n):
            for x1 in range(n):
                for x2 in range(n):
                    for x3 in range(n):
                        if gcd(x0, x1, x2, x3, n) != 1:
                            continue
                        xs = (x0, x1, x2, x3)
                        if all((x0 * rows_mod[0][e] + x1 * rows_mod[1][e]
                                + x2 * rows_mod[2][e]
                                + x3 * rows_mod[3][e]) % n == 0
                               for e in range(16)):
                            found.append(tuple(Fraction(x, n) for x in xs))
    # close the passing coordinate vectors into a lattice (HNF basis)
    den = lcm(*(f.denominator for v in found for f in v))
    rows = [[int(f * den) for f in v] for v in found]
    h = linalg.hnf(rows)
    basis = [alg.element(*(Fraction(x, den) for x in row)) for row in h]
    return ScanResult(QuatOrder(basis), rep, m_i, m_j, alg)
