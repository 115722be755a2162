"""Polarization calculus on H_1 of an abelian surface.

Alternating Riemann forms as 4x4 integer matrices, twisting by symmetric
endomorphisms, Frobenius (symplectic) normal form with its unimodular basis
change, the principal-polarization search over a quaternion order, and the
rationality test for polarizations over Q.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from mpmath import mp
from sympy import factorint

from . import linalg, quatalg
from .linalg import Matrix
from .quatalg import QuatOrder, Quaternion


class PolarizationError(ValueError):
    pass


def check_alternating(E: Matrix):
    if not linalg.is_alternating(E):
        raise PolarizationError("form is not alternating")


def pfaffian(E: Matrix) -> Fraction:
    """Pfaffian of a 4x4 alternating matrix."""
    return (E[0][1] * E[2][3] - E[0][2] * E[1][3] + E[0][3] * E[1][2])


# ---------------------------------------------------------------------------
# homology representation of a quaternion algebra
# ---------------------------------------------------------------------------

class HomologyRep:
    """Quaternion -> 4x4 rational matrix, linear over the basis 1, i, j, k.

    Multiplicative: M(xy) = M(x) M(y), so the k-generator maps to M_i * M_j.
    """

    def __init__(self, algebra: quatalg.QuatAlgebra, m_i: Matrix, m_j: Matrix):
        self.algebra = algebra
        self.m_1 = linalg.identity(4)
        self.m_i = linalg.mat(m_i)
        self.m_j = linalg.mat(m_j)
        self.m_k = linalg.mat_mul(self.m_i, self.m_j)
        a, b = algebra.a, algebra.b
        if not linalg.mat_eq(linalg.mat_mul(self.m_i, self.m_i),
                             linalg.mat_scale(self.m_1, a)):
            raise PolarizationError("M_i^2 != a . Id")
        if not linalg.mat_eq(linalg.mat_mul(self.m_j, self.m_j),
                             linalg.mat_scale(self.m_1, b)):
            raise PolarizationError("M_j^2 != b . Id")
        anti = linalg.mat_add(linalg.mat_mul(self.m_i, self.m_j),
                              linalg.mat_mul(self.m_j, self.m_i))
        if any(x != 0 for row in anti for x in row):
            raise PolarizationError("generators do not anticommute")

    def matrix(self, q: Quaternion) -> Matrix:
        out = linalg.zeros(4, 4)
        for coeff, m in zip(q.coords, (self.m_1, self.m_i, self.m_j, self.m_k)):
            if coeff:
                out = linalg.mat_add(out, linalg.mat_scale(m, coeff))
        return out

    def rosati_j_sign(self, E: Matrix) -> int:
        """Determine whether the Rosati involution of E sends j to +j or -j."""
        r = rosati_image(self.m_j, E)
        if linalg.mat_eq(r, self.m_j):
            return 1
        if linalg.mat_eq(r, linalg.mat_scale(self.m_j, -1)):
            return -1
        raise PolarizationError("Rosati image of j is not +-j")


def rosati_image(M: Matrix, E: Matrix) -> Matrix:
    """M -> (E . M . E^-1)^t, the Rosati involution on homology matrices."""
    E = linalg.mat(E)
    return linalg.transpose(
        linalg.mat_mul(linalg.mat_mul(E, linalg.mat(M)), linalg.mat_inv(E)))


# ---------------------------------------------------------------------------
# twisting and normal forms
# ---------------------------------------------------------------------------

def twist_form(E: Matrix, M_t: Matrix) -> Matrix:
    """E_t = E . M_t for a symmetric endomorphism matrix M_t.

    Verifies both defining expressions E(x, ty) = E(tx, y) by checking the
    alternating property of the product; requires an integral result.
    """
    E = linalg.mat(E)
    M_t = linalg.mat(M_t)
    out = linalg.mat_mul(E, M_t)
    if not linalg.is_alternating(out):
        raise PolarizationError("twist by a non-symmetric endomorphism")
    other = linalg.mat_mul(linalg.transpose(M_t), E)
    if not linalg.mat_eq(out, other):
        raise PolarizationError("twist expressions disagree")
    return out


def frobenius_type(E: Matrix) -> Tuple[Tuple[int, int], Matrix]:
    """Symplectic (Frobenius) normal form of an integral alternating 4x4 form.

    Returns ((d1, d2), U) with d1 | d2, U unimodular and
    U^t . E . U = [[0, D], [-D, 0]] for D = diag(d1, d2).
    """
    E = linalg.mat(E)
    check_alternating(E)
    if not linalg.is_integral(E):
        raise PolarizationError("form must be integral")
    if linalg.det(E) == 0:
        raise PolarizationError("degenerate form")
    n = 4
    A = [[int(x) for x in row] for row in E]
    U = [[int(i == j) for j in range(n)] for i in range(n)]

    def col_op(dst, src, c):
        # col_dst += c * col_src, congruently on rows
        for r in range(n):
            A[r][dst] += c * A[r][src]
        for r in range(n):
            A[dst][r] += c * A[src][r]
        for r in range(n):
            U[r][dst] += c * U[r][src]

    def col_swap(i, j):
        for r in range(n):
            A[r][i], A[r][j] = A[r][j], A[r][i]
        A[i], A[j] = A[j], A[i]
        for r in range(n):
            U[r][i], U[r][j] = U[r][j], U[r][i]

    pairs: List[Tuple[int, int, int]] = []  # (row, col, d) pivot blocks
    active = list(range(n))
    while active:
        # minimal nonzero entry in the active block
        best = None
        for i in active:
            for j in active:
                if i < j and A[i][j] != 0:
                    if best is None or abs(A[i][j]) < abs(A[best[0]][best[1]]):
                        best = (i, j)
        if best is None:
            raise PolarizationError("degenerate block")
        i0, j0 = best
        # clear row i0 and column j0 against the pivot
        dirty = False
        for j in active:
            if j not in (i0, j0) and A[i0][j] != 0:
                q = A[i0][j] // A[i0][j0]
                col_op(j, j0, -q)
                if A[i0][j] != 0:
                    dirty = True
        for i in active:
            if i not in (i0, j0) and A[i][j0] != 0:
                q = A[i][j0] // A[i0][j0]
                col_op(i, i0, -q)
                if A[i][j0] != 0:
                    dirty = True
        if dirty:
            continue
        d = A[i0][j0]
        rest = [x for x in active if x not in (i0, j0)]
        # divisibility: the pivot must divide the complementary block
        bad = None
        for r in rest:
            for s in rest:
                if r < s and A[r][s] % d != 0:
                    bad = (r, s)
        if bad is not None:
            col_op(i0, bad[0], 1)
            continue
        pairs.append((i0, j0, d))
        active = rest
    # orient pivots positive and sort by divisibility
    for idx, (i0, j0, d) in enumerate(pairs):
        if d < 0:
            col_swap(i0, j0)
            pairs[idx] = (i0, j0, -d)
    pairs.sort(key=lambda t: t[2])
    (a1, b1, d1), (a2, b2, d2) = pairs
    if d2 % d1 != 0:
        raise PolarizationError("Frobenius reduction failed divisibility")
    # permute columns into (a1, a2, b1, b2) big-block layout
    perm = [a1, a2, b1, b2]
    P = [[int(perm[c] == r) for c in range(n)] for r in range(n)]
    U_final = linalg.mat_mul(linalg.mat(U), linalg.mat(P))
    # exact post-condition
    target = standard_form(d1, d2)
    got = linalg.mat_mul(linalg.mat_mul(linalg.transpose(U_final), E), U_final)
    if not linalg.mat_eq(got, linalg.mat(target)):
        raise PolarizationError("normal-form post-condition failed")
    if abs(linalg.det(U_final)) != 1:
        raise PolarizationError("basis change is not unimodular")
    return (d1, d2), U_final


def standard_form(d1: int = 1, d2: int = 1) -> List[List[int]]:
    return [[0, 0, d1, 0],
            [0, 0, 0, d2],
            [-d1, 0, 0, 0],
            [0, -d2, 0, 0]]


# ---------------------------------------------------------------------------
# principal polarization search
# ---------------------------------------------------------------------------

@dataclass
class PrincipalCandidate:
    gamma: Quaternion
    form: Matrix            # the twisted principal form E . M(gamma^-1)
    basis_change: Matrix    # unimodular U with U^t . form . U standard
    cls: List[Quaternion]   # full equivalence class of gamma


def principal_search(
    order: QuatOrder,
    j_sign: int,
    E: Matrix,
    rep: HomologyRep,
    coeff_bound: Optional[int] = None,
    expected_classes: Optional[int] = None,
) -> List[PrincipalCandidate]:
    """Principal polarizations obtained by twisting E by gamma^-1.

    Enumerates totally positive symmetric gamma of reduced norm d = d1*d2
    (the type of E), keeps those whose twisted form is integral, and returns
    one representative per unit-equivalence class with its symplectic basis
    change. An empty list is the legitimate "no principal polarization"
    outcome.
    """
    (d1, d2), _ = frobenius_type(E)
    d = d1 * d2
    groups = quatalg.enumerate_positive_norm(
        order, j_sign, d, coeff_bound=coeff_bound,
        expected_classes=expected_classes)
    out = []
    for group in groups:
        chosen = None
        for gamma in sorted(group, key=lambda q: (q.trd(), [-c for c in q.coords])):
            m_inv = rep.matrix(gamma.inverse())
            twisted = linalg.mat_mul(linalg.mat(E), m_inv)
            if not linalg.is_integral(twisted):
                continue
            if not linalg.is_alternating(twisted):
                continue
            ptype, U = frobenius_type(twisted)
            if ptype != (1, 1):
                continue
            chosen = PrincipalCandidate(gamma, twisted, U, group)
            break
        if chosen is not None:
            out.append(chosen)
    return out


def is_polarization(E: Matrix, pm, precision: Optional[int] = None) -> bool:
    """Whether the alternating form E is a polarization for the period
    matrix: Omega.E^-1.Omega^t vanishes and the associated hermitian form is
    positive definite (both at tolerance 10^(-P/2) scaled)."""
    from .hypnum.periods import validate_riemann
    E = linalg.mat(E)
    check_alternating(E)
    if linalg.det(E) == 0:
        return False
    precision = precision or pm.precision
    residual, eig_min = validate_riemann(pm, E, precision)
    scale = pm.scale_norm() ** 2
    tol = mp.mpf(10) ** (-precision // 2) * scale
    return residual < tol and eig_min > tol


def rebase_period_matrix(pm, basis_change: Sequence[Sequence[int]],
                         validate: bool = True):
    """Period matrix over the new homology basis (columns of basis_change,
    which must be unimodular)."""
    U = linalg.mat(basis_change)
    if abs(linalg.det(U)) != 1:
        raise PolarizationError("basis change must be unimodular")
    out = pm.rebased(basis_change)
    if validate:
        from .hypnum.periods import validate_riemann
        residual, _ = validate_riemann(out, out.basis.intersection,
                                       out.precision)
        if residual > mp.mpf(10) ** (-out.precision + 15) * pm.scale_norm() ** 2:
            raise PolarizationError("rebased matrix fails Riemann relations")
    return out


def q_polarizability(D: int, m: int, d: int = 1) -> bool:
    """Whether a degree-d polarization can be defined over Q: the algebra
    (-D*d, m) must ramify exactly at the primes dividing D."""
    if D < 1 or d < 1:
        raise ValueError("D and d must be positive")
    ram = quatalg.ramified_primes(Fraction(-D * d), Fraction(m))
    return ram == set(factorint(D).keys())


def quaternionic_form(rep: HomologyRep) -> Matrix:
    """Primitive integral alternating form whose Rosati involution fixes
    the i-generator and sends the j-generator to a sign multiple of itself.

    Solves the linear system M_i^t E = E M_i, M_j^t E = s E M_j over the
    six entries of an alternating 4x4 matrix, trying s = -1 first.  Raises
    when the compatible space is not one-dimensional.
    """
    import sympy

    M_i = sympy.Matrix([[sympy.Rational(x) for x in row] for row in rep.m_i])
    M_j = sympy.Matrix([[sympy.Rational(x) for x in row] for row in rep.m_j])
    params = sympy.symbols("e0:6")
    for j_sign in (-1, 1):
        E = sympy.zeros(4, 4)
        it = iter(params)
        for r in range(4):
            for c in range(r + 1, 4):
                s = next(it)
                E[r, c], E[c, r] = s, -s
        eqs = list(M_i.T * E - E * M_i) + list(M_j.T * E - j_sign * E * M_j)
        basis = sympy.Matrix([eq for eq in eqs]).jacobian(params).nullspace()
        if len(basis) != 1:
            continue
        vec = basis[0]
        denom = sympy.lcm([sympy.fraction(v)[1] for v in vec])
        vec = [sympy.nsimplify(v * denom) for v in vec]
        gcd = sympy.gcd([v for v in vec if v != 0])
        vec = [Fraction(int(v / gcd)) for v in vec]
        out = linalg.zeros(4, 4)
        it = iter(vec)
        for r in range(4):
            for c in range(r + 1, 4):
                v = next(it)
                out[r][c], out[c][r] = v, -v
        try:
            frobenius_type(out)
        except PolarizationError:
            out = linalg.mat_scale(out, -1)
            frobenius_type(out)
        return out
    raise PolarizationError("no one-dimensional compatible form space")
