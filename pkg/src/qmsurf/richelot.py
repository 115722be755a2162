"""Richelot (2,2)-isogenies between genus-two Jacobians.

A sextic F factors into three quadratics P*Q*R in 15 ways (pairings of the
six roots).  Each grouping determines an isogenous curve

    C': Y'^2 = G(X') = [Q,R]*[R,P]*[P,Q] / Delta,

where [A,B] := A'*B - A*B' and Delta is the determinant of the coefficient
matrix of (P, Q, R) in the basis 1, X, X^2.  The full leading coefficient of
F is attached to P.  Groupings whose quadratics land in the curve's base
field are carried exactly; the rest are kept numerically.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from mpmath import mp

from .exactfield import DEFAULT_PRECISION, Poly, QuadExt, recognize_qf
from .hypnum.curves import BranchPoints, CurveModel
from .hypnum.periods import PeriodError, integrate_period


class RichelotError(ValueError):
    pass


class DegenerateGroupingError(RichelotError):
    """Delta = 0: the grouping does not define a (2,2)-isogeny."""


PairTriple = Tuple[Tuple[int, int], Tuple[int, int], Tuple[int, int]]


@dataclass(frozen=True)
class QuadraticGrouping:
    """One of the 15 factorizations F = P*Q*R into quadratics."""

    pairs: PairTriple
    exact: bool
    polys: Optional[Tuple[Poly, Poly, Poly]]
    numeric: Tuple[Tuple[mp.mpc, ...], ...]   # ascending coeffs of P, Q, R
    delta: int
    precision: int


def _pair_triples() -> List[PairTriple]:
    out = []
    idx = list(range(6))

    def rec(rem, cur):
        if not rem:
            out.append(tuple(cur))
            return
        a = rem[0]
        for k in range(1, len(rem)):
            rec([r for r in rem[1:] if r != rem[k]], cur + [(a, rem[k])])

    rec(idx, [])
    return out


_PAIR_TRIPLES = _pair_triples()


def _numeric_quadratic(branch: BranchPoints, pair: Tuple[int, int],
                       lead) -> Tuple[mp.mpc, ...]:
    r1, r2 = branch.roots[pair[0]], branch.roots[pair[1]]
    return (lead * r1 * r2, -lead * (r1 + r2), mp.mpc(lead))


def _recognize_poly(coeffs, delta: int, precision: int) -> Optional[Poly]:
    tol = mp.mpf(10) ** (-(precision // 2))
    exact = []
    for c in coeffs:
        r = recognize_qf(c, delta, tolerance=tol)
        if r is None:
            return None
        exact.append(r)
    return Poly(exact, delta)


def enumerate_groupings(curve: CurveModel,
                        precision: int = DEFAULT_PRECISION
                        ) -> List[QuadraticGrouping]:
    """All 15 groupings; sextic curves only (a quintic has no 15 pairings
    of finite roots; callers should pass a sextic model)."""
    if curve.degree != 6:
        raise RichelotError("Richelot groupings require a sextic model")
    work = precision + 20
    branch = curve.branch_points(work)
    out = []
    with mp.workdps(work + 10):
        one = mp.mpc(1)
        for pairs in _PAIR_TRIPLES:
            numeric = (_numeric_quadratic(branch, pairs[0], branch.lead),
                       _numeric_quadratic(branch, pairs[1], one),
                       _numeric_quadratic(branch, pairs[2], one))
            polys = tuple(_recognize_poly(c, curve.delta, precision)
                          for c in numeric)
            exact = all(p is not None for p in polys)
            if exact:
                prod = polys[0] * polys[1] * polys[2]
                if prod != curve.poly:
                    exact = False
            out.append(QuadraticGrouping(
                pairs=pairs, exact=exact,
                polys=polys if exact else None,
                numeric=numeric, delta=curve.delta, precision=precision))
    return out


def _exact_delta(P: Poly, Q: Poly, R: Poly) -> QuadExt:
    m = [[P[k], Q[k], R[k]] for k in range(3)]
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _bracket(A: Poly, B: Poly) -> Poly:
    return A.deriv() * B - A * B.deriv()


def _numeric_bracket(a, b):
    # ascending quadratic coefficient triples
    da = (a[1], 2 * a[2])
    db = (b[1], 2 * b[2])

    def polymul(u, v):
        out = [mp.mpc(0)] * (len(u) + len(v) - 1)
        for i, x in enumerate(u):
            for j, y in enumerate(v):
                out[i + j] += x * y
        return out

    t1 = polymul(da, b)
    t2 = polymul(list(a), db)
    n = max(len(t1), len(t2))
    t1 += [mp.mpc(0)] * (n - len(t1))
    t2 += [mp.mpc(0)] * (n - len(t2))
    return [x - y for x, y in zip(t1, t2)]


@dataclass(frozen=True)
class RichelotImage:
    """Result of one Richelot step."""

    grouping: QuadraticGrouping
    delta_value: object               # QuadExt when exact, mp.mpc otherwise
    curve: Optional[CurveModel]       # exact image when available
    coefficients: Tuple[mp.mpc, ...]  # ascending numeric sextic coefficients

    @property
    def exact(self) -> bool:
        return self.curve is not None

    def branch_values(self, precision: int) -> List[mp.mpc]:
        if self.curve is not None:
            return list(self.curve.branch_points(precision).roots)
        with mp.workdps(precision + 10):
            return mp.polyroots([mp.mpc(c) for c in
                                 reversed(self.coefficients)],
                                maxsteps=200, extraprec=2 * precision)


def richelot_step(grouping: QuadraticGrouping,
                  label: str = "richelot_image") -> RichelotImage:
    """Delta and the isogenous sextic G = [Q,R][R,P][P,Q]/Delta."""
    precision = grouping.precision
    with mp.workdps(precision + 20):
        a, b, c = (list(q) for q in grouping.numeric)
        det = (a[0] * (b[1] * c[2] - b[2] * c[1])
               - b[0] * (a[1] * c[2] - a[2] * c[1])
               + c[0] * (a[1] * b[2] - a[2] * b[1]))
        scale = max(max(abs(x) for x in q) for q in (a, b, c)) ** 3
        if abs(det) < scale * mp.mpf(10) ** (-(precision // 2)):
            raise DegenerateGroupingError("Delta = 0 for this grouping")
        U = _numeric_bracket(b, c)
        V = _numeric_bracket(c, a)
        W = _numeric_bracket(a, b)

        def polymul(u, v):
            out = [mp.mpc(0)] * (len(u) + len(v) - 1)
            for i, x in enumerate(u):
                for j, y in enumerate(v):
                    out[i + j] += x * y
            return out

        G_num = [g / det for g in polymul(polymul(U, V), W)]
        G_num += [mp.mpc(0)] * (7 - len(G_num))
        if grouping.exact:
            P, Q, R = grouping.polys
            delta_val = _exact_delta(P, Q, R)
            if not delta_val:
                raise DegenerateGroupingError("Delta = 0 for this grouping")
            G = (_bracket(Q, R) * _bracket(R, P)
                 * _bracket(P, Q)).scale(delta_val.inverse())
            return RichelotImage(grouping=grouping, delta_value=delta_val,
                                 curve=CurveModel(G, label),
                                 coefficients=tuple(G_num))
        # the quadratics themselves need not live in K; the image often does
        tol = mp.mpf(10) ** (-(precision // 2))
        delta_rec = recognize_qf(det, grouping.delta, tolerance=tol)
        coeff_rec = [recognize_qf(c, grouping.delta, tolerance=tol)
                     for c in G_num]
        if delta_rec is not None and all(c is not None for c in coeff_rec):
            G = Poly(coeff_rec, grouping.delta)
            return RichelotImage(grouping=grouping, delta_value=delta_rec,
                                 curve=CurveModel(G, label),
                                 coefficients=tuple(G_num))
    return RichelotImage(grouping=grouping, delta_value=det, curve=None,
                         coefficients=tuple(G_num))


SegmentIdentity = Tuple[Tuple[int, int], Tuple[int, int], Fraction]


def _segment_vector(branch: BranchPoints, seg: Tuple[int, int],
                    precision: int):
    return [integrate_period(branch, seg[0], seg[1], p, precision)
            for p in (0, 1)]


def verify_isogeny_periods(curve: CurveModel, image: CurveModel,
                           pairing: Optional[Sequence[SegmentIdentity]] = None,
                           precision: int = DEFAULT_PRECISION):
    """Residuals of segment-integral identities between C and C'.

    Each identity ((i,j), (k,l), m) claims
        int_{x_i}^{x_j} X^p dX/Y  =  +/- m * int_{x'_k}^{x'_l} X'^p dX'/Y'
    for both differentials p = 0, 1 with one common sign.  When no pairing is
    supplied the matching is discovered exhaustively; at least six consistent
    identities must exist.
    """
    work = precision + 20
    b1 = curve.branch_points(work)
    b2 = image.branch_points(work)
    with mp.workdps(work):
        if pairing is not None:
            residuals = []
            for (seg1, seg2, mult) in pairing:
                v = _segment_vector(b1, seg1, precision)
                w = _segment_vector(b2, seg2, precision)
                m = mp.mpf(mult.numerator) / mult.denominator \
                    if isinstance(mult, Fraction) else mp.mpf(mult)
                res = min(max(abs(v[p] - s * m * w[p]) for p in (0, 1))
                          for s in (1, -1))
                residuals.append(res)
            return residuals
        # auto-discovery; skip segments the quadrature cannot certify
        vec1 = {}
        for s in itertools.combinations(range(len(b1)), 2):
            try:
                vec1[s] = _segment_vector(b1, s, precision)
            except PeriodError:
                continue
        vec2 = {}
        for s in itertools.combinations(range(len(b2)), 2):
            try:
                vec2[s] = _segment_vector(b2, s, precision)
            except PeriodError:
                continue
        tol = mp.mpf(10) ** (-precision + 15)
        scale = max(max(abs(x) for x in v) for v in vec1.values())
        found = []
        for s1, v in vec1.items():
            for s2, w in vec2.items():
                for mult in (Fraction(1), Fraction(2), Fraction(1, 2)):
                    m = mp.mpf(mult.numerator) / mult.denominator
                    res = min(max(abs(v[p] - s * m * w[p]) for p in (0, 1))
                              for s in (1, -1))
                    if res < tol * scale:
                        found.append((s1, s2, mult, res))
        if len(found) < 6:
            raise RichelotError(
                "no consistent period matching found at this precision")
        return found
