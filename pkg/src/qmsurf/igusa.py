"""Igusa-Clebsch invariants of genus-two curves and isomorphism testing.

The classical invariants are computed symmetrically from the branch points:
with F = a * prod (X - x_i) and (ij) := x_i - x_j,

    I2  = a^2  * sum over the 15 pair partitions of (12)^2 (34)^2 (56)^2
    I4  = a^4  * sum over the 10 triple partitions of (12)^2(13)^2(23)^2 * ...
    I6  = a^6  * sum over the 60 partition/bijection pairs (cross terms added)
    I10 = a^10 * prod_{i<j} (ij)^2

A quintic model has one branch point at infinity; the degenerate limit sets
every difference involving it to 1 while keeping the quintic's leading
coefficient, which is the exact limit of the sextic formulas.

The absolute invariants (i1, i2, i3) = (I2^5/I10, I2^3 I4/I10, I2^2 I6/I10)
depend only on the curve up to isomorphism and quadratic twist.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from mpmath import mp

from .exactfield import (DEFAULT_PRECISION, Poly, QuadExt, recognize_qf)
from .hypnum.curves import CurveModel

# Denominators of recognized invariants can be as large as the twelfth power
# of a small prime, so the continued-fraction cutoff must sit well above 1e8.
RECOGNITION_MAX_DENOMINATOR = 10 ** 12


class IgusaError(ValueError):
    pass


def _pair_partitions() -> List[Tuple[Tuple[int, int], ...]]:
    out = []

    def rec(rem, cur):
        if not rem:
            out.append(tuple(cur))
            return
        a = rem[0]
        for k in range(1, len(rem)):
            rec([r for r in rem[1:] if r != rem[k]], cur + [(a, rem[k])])

    rec(list(range(6)), [])
    return out


def _triple_partitions() -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    out = []
    for comb in itertools.combinations(range(6), 3):
        if 0 in comb:
            out.append((comb, tuple(i for i in range(6) if i not in comb)))
    return out


_PAIRINGS = _pair_partitions()
_TRIPLES = _triple_partitions()


def igusa_clebsch_numeric(roots: Sequence[Optional[mp.mpc]], lead,
                          precision: int = DEFAULT_PRECISION):
    """(I2, I4, I6, I10) from six branch values, None encoding infinity."""
    if len(roots) == 5:
        roots = list(roots) + [None]
    if len(roots) != 6:
        raise IgusaError("expected five or six branch values")
    with mp.workdps(precision + 10):
        lead = mp.mpc(lead)

        def d(i: int, j: int):
            if roots[i] is None or roots[j] is None:
                return mp.mpc(1)
            return mp.mpc(roots[i]) - mp.mpc(roots[j])

        I2 = mp.fsum(mp.fprod(d(a, b) ** 2 for a, b in P)
                     for P in _PAIRINGS) * lead ** 2

        def tri(T):
            a, b, c = T
            return (d(a, b) * d(b, c) * d(a, c)) ** 2

        I4 = mp.fsum(tri(T1) * tri(T2) for T1, T2 in _TRIPLES) * lead ** 4
        I6 = mp.fsum(tri(T1) * tri(T2)
                     * mp.fprod(d(T1[k], s[k]) ** 2 for k in range(3))
                     for T1, T2 in _TRIPLES
                     for s in itertools.permutations(T2)) * lead ** 6
        I10 = mp.fprod(d(i, j) ** 2
                       for i in range(6) for j in range(i + 1, 6)) * lead ** 10
        return I2, I4, I6, I10


def absolute_invariants_numeric(roots: Sequence[Optional[mp.mpc]],
                                precision: int = DEFAULT_PRECISION,
                                lead=1):
    """(i1, i2, i3) from branch values; leading coefficient cancels out."""
    if len(roots) == 5:
        roots = list(roots) + [None]
    with mp.workdps(precision + 10):
        finite = [mp.mpc(r) for r in roots if r is not None]
        sep = min(abs(a - b) for i, a in enumerate(finite)
                  for b in finite[i + 1:])
        if sep < mp.mpf(10) ** (-(precision // 2)):
            raise IgusaError("I10 vanishes: singular model")
    I2, I4, I6, I10 = igusa_clebsch_numeric(roots, lead, precision)
    with mp.workdps(precision + 10):
        return I2 ** 5 / I10, I2 ** 3 * I4 / I10, I2 ** 2 * I6 / I10


@dataclass(frozen=True)
class InvariantTuple:
    """Igusa-Clebsch invariants, exact when recognition succeeded."""

    numeric: Tuple[mp.mpc, mp.mpc, mp.mpc, mp.mpc]          # I2, I4, I6, I10
    absolute_numeric: Tuple[mp.mpc, mp.mpc, mp.mpc]          # i1, i2, i3
    exact: Optional[Tuple[QuadExt, QuadExt, QuadExt, QuadExt]]
    absolute_exact: Optional[Tuple[QuadExt, QuadExt, QuadExt]]
    precision: int

    @property
    def recognized(self) -> bool:
        return self.exact is not None


def _recognize_tuple(values, delta: int, precision: int,
                     max_denominator: float):
    out = []
    for v in values:
        r = recognize_qf(v, delta, max_denominator=max_denominator,
                         tolerance=mp.mpf(10) ** (-(precision // 2)))
        if r is None:
            return None
        out.append(r)
    return tuple(out)


def igusa_clebsch(curve: CurveModel,
                  precision: int = DEFAULT_PRECISION,
                  max_denominator: float = RECOGNITION_MAX_DENOMINATOR
                  ) -> InvariantTuple:
    """Invariants of an exact curve, recognized into its quadratic field.

    Recognition failure is not an error: the tuple is returned with
    exact=None and carries the high-precision numeric values.
    """
    work = precision + 3 * curve.degree
    branch = curve.branch_points(work)
    roots: List[Optional[mp.mpc]] = list(branch.roots)
    nums = igusa_clebsch_numeric(roots, branch.lead, work)
    with mp.workdps(work + 10):
        I2, I4, I6, I10 = nums
        scale = max(abs(I2) ** 5, abs(I2) ** 3 * abs(I4),
                    abs(I2) ** 2 * abs(I6), mp.mpf(1))
        if abs(I10) < scale * mp.mpf(10) ** (-precision):
            raise IgusaError("I10 vanishes: singular model")
        absolute = (I2 ** 5 / I10, I2 ** 3 * I4 / I10, I2 ** 2 * I6 / I10)
        exact = _recognize_tuple(nums, curve.delta, precision,
                                 max_denominator)
        absolute_exact = _recognize_tuple(absolute, curve.delta, precision,
                                          max_denominator)
    return InvariantTuple(numeric=nums, absolute_numeric=absolute,
                          exact=exact, absolute_exact=absolute_exact,
                          precision=precision)


def conjugate_curve(curve: CurveModel) -> CurveModel:
    """Coefficient-wise Galois conjugate model."""
    return curve.conj()


def same_invariants(curve1: CurveModel, curve2: CurveModel,
                    precision: int = DEFAULT_PRECISION) -> bool:
    """Isomorphism test over the complex numbers via absolute invariants.

    Exact comparison when both tuples are recognized, numeric agreement to
    10^(-P/2) otherwise.
    """
    t1 = igusa_clebsch(curve1, precision)
    t2 = igusa_clebsch(curve2, precision)
    if t1.absolute_exact is not None and t2.absolute_exact is not None:
        if curve1.delta == curve2.delta:
            return t1.absolute_exact == t2.absolute_exact
        # different ambient fields: both must be rational to compare exactly
        if all(v.is_rational() for v in t1.absolute_exact) \
                and all(v.is_rational() for v in t2.absolute_exact):
            return all(a.a == b.a for a, b in zip(t1.absolute_exact,
                                                  t2.absolute_exact))
    with mp.workdps(precision + 10):
        tol = mp.mpf(10) ** (-(precision // 2))
        return all(abs(a - b) <= tol * (1 + abs(a) + abs(b))
                   for a, b in zip(t1.absolute_numeric, t2.absolute_numeric))
