"""Period matrices of genus-two curves.

Periods are integrals of dX/Y and X dX/Y over loops that each enclose a
straight segment joining two branch points. The endpoint square-root
singularities are removed by X = midpoint + halflength*sin(theta), after
which Gauss-Legendre quadrature converges spectrally.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import product
from typing import List, Optional, Sequence, Tuple

from mpmath import mp

from .. import linalg, pollab
from ..exactfield import DEFAULT_PRECISION
from .curves import BranchPoints, CurveModel


class PeriodError(RuntimeError):
    pass


@dataclass
class HomologyBasis:
    """Loops (as pairs of branch-point indices), per-loop orientation signs,
    and the integer intersection matrix of the loop basis."""
    loops: Optional[List[Tuple[int, int]]]
    signs: Optional[List[int]]
    intersection: List[List[int]]


@dataclass
class PeriodMatrix:
    entries: List[List[mp.mpc]]   # 2 rows (dX/Y, X dX/Y) x 4 loop columns
    basis: HomologyBasis
    precision: int
    branch: Optional[BranchPoints] = None

    def scale_norm(self) -> mp.mpf:
        return max(abs(z) for row in self.entries for z in row)

    def with_column_signs(self, signs: Sequence[int]) -> "PeriodMatrix":
        """Flip loop orientations; the intersection matrix transforms by
        conjugation with diag(signs)."""
        if any(s not in (1, -1) for s in signs):
            raise ValueError("signs must be +-1")
        ent = [[signs[c] * self.entries[r][c] for c in range(4)]
               for r in range(2)]
        J = [[signs[i] * signs[j] * self.basis.intersection[i][j]
              for j in range(4)] for i in range(4)]
        old = self.basis.signs or [1, 1, 1, 1]
        basis = HomologyBasis(self.basis.loops,
                              [o * s for o, s in zip(old, signs)], J)
        return replace(self, entries=ent, basis=basis)

    def rebased(self, U: Sequence[Sequence[int]]) -> "PeriodMatrix":
        """Period matrix over the new loop basis (columns of U)."""
        with mp.workdps(self.precision + 10):
            ent = [[mp.fsum(self.entries[r][m] * U[m][c] for m in range(4))
                    for c in range(4)] for r in range(2)]
        J = linalg.mat_mul(
            linalg.mat_mul(linalg.transpose(linalg.mat(U)),
                           linalg.mat(self.basis.intersection)),
            linalg.mat(U))
        Jint = [[int(x) for x in row] for row in J]
        return replace(self, entries=ent,
                       basis=HomologyBasis(None, None, Jint))


def integrate_period(branch: BranchPoints, from_idx: int, to_idx: int,
                     differential: int, precision: Optional[int] = None) -> mp.mpc:
    """Integral of X^differential dX/Y along the straight segment between two
    branch points, with a fixed determination of Y per segment (reversing the
    endpoints negates the value)."""
    if from_idx == to_idx:
        raise ValueError("segment endpoints must differ")
    if differential not in (0, 1):
        raise ValueError("differential index must be 0 or 1")
    precision = precision or branch.precision
    sign = 1 if from_idx < to_idx else -1
    ia, ib = min(from_idx, to_idx), max(from_idx, to_idx)
    return sign * _segment_core(branch, ia, ib, differential, precision)


def _segment_core(branch: BranchPoints, ia: int, ib: int, p: int,
                  precision: int) -> mp.mpc:
    wp = precision + 15
    with mp.workdps(wp):
        roots = [mp.mpc(r) for r in branch.roots]
        xa, xb = roots[ia], roots[ib]
        c = (xa + xb) / 2
        h = (xb - xa) / 2
        others = [roots[k] for k in range(len(roots)) if k not in (ia, ib)]
        _check_clearance(xa, xb, others, precision)
        # Y = h cos(theta) * sqrt0 * prod sqrt((x - r)/(c - r)); the
        # normalized factors stay in the right half-plane along the segment,
        # so the principal branch is continuous.
        base = -branch.lead
        for r in others:
            base *= (c - r)
        sqrt0 = mp.sqrt(base)

        def f(theta):
            x = c + h * mp.sin(theta)
            g = sqrt0
            for r in others:
                g *= mp.sqrt((x - r) / (c - r))
            return (x ** p if p else 1) / g

        # Branch points close to (but clear of) the segment stall the node
        # doubling; splitting the interval at their projections restores
        # geometric convergence.
        marks = []
        for r in others:
            u = (r - c) / h
            if abs(u.real) < 1 and abs(u.imag) < mp.mpf("0.5"):
                marks.append(mp.asin(u.real))
        points = [-mp.pi / 2] + sorted(marks) + [mp.pi / 2]
        val, err = mp.quad(f, points,
                           method="gauss-legendre", maxdegree=10, error=True)
        tol = mp.mpf(10) ** (-precision + 5) * (abs(val) + 1)
        if err > tol:
            raise PeriodError(
                "quadrature did not converge on segment (%d,%d): "
                "error estimate %s" % (ia, ib, mp.nstr(err, 5)))
        return +val


def _check_clearance(xa, xb, others, precision):
    """A third branch point too close to the segment breaks branch tracking."""
    tol = mp.mpf(10) ** (-precision // 2)
    d = xb - xa
    dd = abs(d) ** 2
    for r in others:
        t = ((r - xa) * mp.conj(d)).real / dd
        t = min(max(t, mp.mpf(0)), mp.mpf(1))
        if abs(r - (xa + t * d)) < tol:
            raise PeriodError("branch point within %s of an integration "
                              "segment; re-path required" % mp.nstr(tol, 3))


def _conj_t(M: mp.matrix) -> mp.matrix:
    out = mp.matrix(M.cols, M.rows)
    for i in range(M.rows):
        for j in range(M.cols):
            out[j, i] = mp.conj(M[i, j])
    return out


def validate_riemann(entries, J, precision: int = DEFAULT_PRECISION):
    """Riemann bilinear relations for a 2x4 period matrix and an integral
    alternating form J: returns (||Omega J^-1 Omega^t||, lambda_min of
    i Omega J^-1 conj(Omega)^t). A genuine polarization gives a tiny first
    value and a strictly positive second one. The orientation (sign of the
    hermitian form) follows the classical modular-symbols convention, under
    which a loop basis of segment-enclosing cycles on a hyperelliptic curve
    gets the standard symplectic intersection matrix."""
    if hasattr(entries, "entries"):
        entries = entries.entries
    Jinv = linalg.mat_inv(linalg.mat(J))
    with mp.workdps(precision + 10):
        Om = mp.matrix(entries)
        Ji = mp.matrix(4, 4)
        for i in range(4):
            for j in range(4):
                Ji[i, j] = mp.mpf(Jinv[i][j].numerator) / Jinv[i][j].denominator
        R = Om * Ji * Om.T
        residual = max(abs(R[i, j]) for i in range(2) for j in range(2))
        H = -1j * Om * Ji * _conj_t(Om)
        # hermitian 2x2: closed-form eigenvalues
        t = (H[0, 0] + H[1, 1]).real
        det = (H[0, 0] * H[1, 1] - H[0, 1] * H[1, 0]).real
        disc = mp.sqrt(max(t * t - 4 * det, mp.mpf(0)))
        eig_min = (t - disc) / 2
        return residual, eig_min


def _auto_loops(n_roots: int) -> List[Tuple[int, int]]:
    # consecutive pairings on the sorted roots: non-crossing, and every loop
    # shares an endpoint with at least one other, so J is nondegenerate
    return [(0, 1), (2, 3), (1, 2), (3, 4)]


def _intersection_support(loops) -> List[List[int]]:
    n = len(loops)
    a = [[0] * n for _ in range(n)]
    for k in range(n):
        for l in range(k + 1, n):
            shared = len(set(loops[k]) & set(loops[l]))
            if shared == 2:
                raise PeriodError("duplicate loop in homology basis")
            a[k][l] = 1 if shared == 1 else 0
    return a


def _resolve_intersection(loops, entries, precision) -> List[List[int]]:
    """Intersection numbers: magnitudes come from endpoint sharing of the
    enclosed segments; the signs (a finite set) are fixed by requiring the
    Riemann relations to vanish and the positivity condition to hold."""
    support = _intersection_support(loops)
    positions = [(k, l) for k in range(4) for l in range(k + 1, 4)
                 if support[k][l]]
    scale = max(abs(z) for row in entries for z in row)
    tol = mp.mpf(10) ** (-precision + 15) * scale ** 2
    best = None
    for bits in product((1, -1), repeat=len(positions)):
        J = [[0] * 4 for _ in range(4)]
        for (k, l), s in zip(positions, bits):
            J[k][l] = s
            J[l][k] = -s
        if linalg.det(linalg.mat(J)) == 0:
            continue
        residual, eig_min = validate_riemann(entries, J, precision)
        if residual < tol and eig_min > tol:
            if best is None or residual < best[0]:
                best = (residual, J)
    if best is None:
        raise PeriodError("no sign assignment satisfies the Riemann "
                          "relations; bad loop choice or branch tracking")
    return best[1]


def build_period_matrix(curve: CurveModel,
                        basis: Optional[HomologyBasis] = None,
                        precision: int = DEFAULT_PRECISION,
                        loops: Optional[List[Tuple[int, int]]] = None,
                        signs: Optional[List[int]] = None) -> PeriodMatrix:
    """2x4 period matrix over four loops, each enclosing one segment between
    branch points. With basis/loops omitted, a deterministic non-crossing
    pairing of the sorted roots is used; the intersection matrix is derived
    from segment adjacency and checked against the Riemann relations."""
    branch = curve.branch_points(precision)
    if basis is not None:
        loops = basis.loops
        signs = signs or basis.signs
    if loops is None:
        loops = _auto_loops(len(branch))
    if len(loops) != 4:
        raise PeriodError("need exactly 4 loops")
    signs = signs or [1] * 4
    with mp.workdps(precision + 10):
        # a loop enclosing a segment picks up the segment integral twice
        entries = [[2 * signs[l] * integrate_period(branch, loops[l][0],
                                                    loops[l][1], p, precision)
                    for l in range(4)] for p in (0, 1)]
        if basis is not None and basis.intersection is not None:
            J = basis.intersection
            scale = max(abs(z) for row in entries for z in row)
            residual, eig_min = validate_riemann(entries, J, precision)
            tol = mp.mpf(10) ** (-precision + 15) * scale ** 2
            if residual > tol or eig_min < tol:
                raise PeriodError("supplied intersection matrix fails the "
                                  "Riemann relations (residual %s)"
                                  % mp.nstr(residual, 5))
        else:
            J = _resolve_intersection(loops, entries, precision)
        return PeriodMatrix(entries, HomologyBasis(list(loops), list(signs), J),
                            precision, branch)


def small_period_matrix(pm: PeriodMatrix,
                        basis_change: Optional[Sequence[Sequence[int]]] = None
                        ) -> mp.matrix:
    """Normalized 2x2 period matrix tau (symmetric, Im tau > 0) from a
    principally polarized period matrix. basis_change may supply a symplectic
    basis; otherwise one is computed by Frobenius reduction of J."""
    J = pm.basis.intersection
    if basis_change is None:
        ptype, U = pollab.frobenius_type(J)
        if ptype != (1, 1):
            raise PeriodError("intersection form has type %s, not principal"
                              % (ptype,))
        U = [[int(x) for x in row] for row in U]
    else:
        U = [[int(x) for x in row] for row in basis_change]
    rb = pm.rebased(U)
    with mp.workdps(pm.precision + 10):
        Om = mp.matrix(rb.entries)
        A = Om[:, 0:2]
        B = Om[:, 2:4]
        tau = None
        for cand in (A ** -1 * B, B ** -1 * A):
            im = mp.matrix([[cand[i, j].imag for j in range(2)]
                            for i in range(2)])
            im[0, 1] = im[1, 0] = (im[0, 1] + im[1, 0]) / 2
            if min(mp.eigsy(im, eigvals_only=True)) > 0:
                tau = cand
                break
        if tau is None:
            raise PeriodError("no block ordering gives Im tau > 0; "
                              "basis is not symplectic for a polarization")
        asym = abs(tau[0, 1] - tau[1, 0])
        if asym > mp.mpf(10) ** (-pm.precision + 15) * (1 + abs(tau[0, 1])):
            raise PeriodError("tau not symmetric (asymmetry %s); basis is "
                              "not symplectic" % mp.nstr(asym, 5))
        tau[0, 1] = tau[1, 0] = (tau[0, 1] + tau[1, 0]) / 2
        return tau
