"""Quaternion algebras (a,b/Q): arithmetic, ramification, orders, class numbers.

Covers the exact-arithmetic side of the polarization machinery: reduced
norm/trace, Hilbert symbols and ramified primes, order discriminants and
maximality verification, class numbers of negative discriminants, the
principal-polarization count, and enumeration of totally positive symmetric
elements of a given reduced norm grouped into unit-equivalence classes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

from sympy import factorint, isprime

from . import linalg
from .linalg import Matrix


class AlgebraMismatch(ValueError):
    """Raised when quaternions from distinct algebras are combined."""


@dataclass(frozen=True)
class QuatAlgebra:
    """(a,b/Q) with relations i^2 = a, j^2 = b, ij = -ji = k."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.a == 0 or self.b == 0:
            raise ValueError("algebra parameters must be nonzero")

    def one(self) -> "Quaternion":
        return Quaternion(1, 0, 0, 0, self)

    def gen(self, idx: int) -> "Quaternion":
        coords = [0, 0, 0, 0]
        coords[idx] = 1
        return Quaternion(*coords, self)

    def element(self, x0, x1=0, x2=0, x3=0) -> "Quaternion":
        return Quaternion(x0, x1, x2, x3, self)

    def is_definite(self) -> bool:
        return self.a < 0 and self.b < 0

    def ramified_primes(self) -> Set[int]:
        return ramified_primes(self.a, self.b)

    def discriminant(self) -> int:
        """Reduced discriminant: product of the finite ramified primes."""
        return math.prod(sorted(self.ramified_primes()))

    def is_isomorphic(self, other: "QuatAlgebra") -> bool:
        """Same ramification set, including the infinite place."""
        return (self.ramified_primes() == other.ramified_primes()
                and self.is_definite() == other.is_definite())


@dataclass(frozen=True)
class Quaternion:
    x0: Fraction
    x1: Fraction
    x2: Fraction
    x3: Fraction
    algebra: QuatAlgebra

    def __post_init__(self):
        for f in ("x0", "x1", "x2", "x3"):
            object.__setattr__(self, f, Fraction(getattr(self, f)))

    @property
    def coords(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.x0, self.x1, self.x2, self.x3)

    def _check(self, other: "Quaternion"):
        if self.algebra != other.algebra:
            raise AlgebraMismatch("quaternions from different algebras")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.algebra.element(other)
        self._check(other)
        return Quaternion(*(x + y for x, y in zip(self.coords, other.coords)),
                          self.algebra)

    __radd__ = __add__

    def __neg__(self):
        return Quaternion(*(-x for x in self.coords), self.algebra)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.algebra.element(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Quaternion(*(x * other for x in self.coords), self.algebra)
        self._check(other)
        a, b = self.algebra.a, self.algebra.b
        p0, p1, p2, p3 = self.coords
        q0, q1, q2, q3 = other.coords
        return Quaternion(
            p0 * q0 + a * p1 * q1 + b * p2 * q2 - a * b * p3 * q3,
            p0 * q1 + p1 * q0 - b * p2 * q3 + b * p3 * q2,
            p0 * q2 + p2 * q0 + a * p1 * q3 - a * p3 * q1,
            p0 * q3 + p3 * q0 + p1 * q2 - p2 * q1,
            self.algebra,
        )

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def conj(self) -> "Quaternion":
        return Quaternion(self.x0, -self.x1, -self.x2, -self.x3, self.algebra)

    def nrd(self) -> Fraction:
        a, b = self.algebra.a, self.algebra.b
        return (self.x0 ** 2 - a * self.x1 ** 2 - b * self.x2 ** 2
                + a * b * self.x3 ** 2)

    def trd(self) -> Fraction:
        return 2 * self.x0

    def inverse(self) -> "Quaternion":
        n = self.nrd()
        if n == 0:
            raise ZeroDivisionError("non-invertible quaternion")
        return self.conj() * Fraction(1, 1) * (Fraction(1) / n)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.algebra.element(other)
        return (isinstance(other, Quaternion)
                and self.algebra == other.algebra
                and self.coords == other.coords)

    def __hash__(self):
        return hash((self.coords, self.algebra))

    def __bool__(self):
        return any(self.coords)

    def __repr__(self):
        names = ["", "i", "j", "k"]
        terms = [f"{x}{n}" for x, n in zip(self.coords, names) if x]
        return " + ".join(terms) if terms else "0"

    def to_json(self) -> list:
        return [str(x) for x in self.coords]


def is_totally_positive_symmetric(x: Quaternion) -> bool:
    """Both real eigenvalues positive: trd > 0 and nrd > 0 (and real spectrum)."""
    return x.trd() > 0 and x.nrd() > 0 and x.trd() ** 2 >= 4 * x.nrd()


# ---------------------------------------------------------------------------
# Hilbert symbols and ramification
# ---------------------------------------------------------------------------

def _square_free_part(n: int) -> int:
    s = 1
    for p, e in factorint(abs(n)).items():
        if e % 2:
            s *= p
    return s if n > 0 else -s


def _legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    t = pow(a, (p - 1) // 2, p)
    return 1 if t == 1 else -1


def hilbert_symbol(a, b, p: Optional[int]) -> int:
    """(a,b)_p for a prime p, or the real place when p is None."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol requires nonzero arguments")
    # squares do not matter: clear denominators and square parts
    ai = _square_free_part(a.numerator * a.denominator)
    bi = _square_free_part(b.numerator * b.denominator)
    if p is None:
        return -1 if ai < 0 and bi < 0 else 1
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    alpha, u = 0, ai
    while u % p == 0:
        u //= p
        alpha += 1
    beta, v = 0, bi
    while v % p == 0:
        v //= p
        beta += 1
    alpha, beta = alpha % 2, beta % 2
    if p != 2:
        eps = (p - 1) // 2
        s = (-1) ** (alpha * beta * eps)
        if beta:
            s *= _legendre(u, p)
        if alpha:
            s *= _legendre(v, p)
        return s
    # p = 2 (u, v odd)
    def eps2(n):  # (n-1)/2 mod 2
        return ((n - 1) // 2) % 2
    def omega(n):  # (n^2-1)/8 mod 2
        return ((n * n - 1) // 8) % 2
    e = eps2(u) * eps2(v) + alpha * omega(v) + beta * omega(u)
    return (-1) ** (e % 2)


def ramified_primes(a, b) -> Set[int]:
    """Finite primes where (a,b/Q) ramifies."""
    a, b = Fraction(a), Fraction(b)
    candidates = {2}
    for n in (a.numerator, a.denominator, b.numerator, b.denominator):
        candidates.update(factorint(abs(n)).keys())
    candidates.discard(1)
    return {p for p in candidates if hilbert_symbol(a, b, p) == -1}


# ---------------------------------------------------------------------------
# binary quadratic forms and class numbers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BQForm:
    """Positive binary quadratic form a x^2 + b xy + c y^2."""

    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_reduced(self) -> bool:
        if not (abs(self.b) <= self.a <= self.c):
            return False
        if self.b < 0 and (abs(self.b) == self.a or self.a == self.c):
            return False
        return True

    def is_primitive(self) -> bool:
        return math.gcd(math.gcd(self.a, self.b), self.c) == 1


def reduced_forms(disc: int) -> List[BQForm]:
    """All reduced primitive forms of the given negative discriminant."""
    if disc >= 0 or disc % 4 not in (0, 1):
        raise ValueError("discriminant must be negative and = 0, 1 mod 4")
    out = []
    bmax = math.isqrt(-disc // 3)
    for b in range(disc % 2, bmax + 1, 2):
        m = (b * b - disc) // 4
        a = max(b, 1)
        while a * a <= m:
            if m % a == 0:
                c = m // a
                for bb in ({b, -b} if 0 < b < a < c else {b}):
                    f = BQForm(a, bb, c)
                    if f.is_reduced() and f.is_primitive():
                        out.append(f)
            a += 1
    return sorted(out, key=lambda f: (f.a, f.b, f.c))


def class_number(disc: int) -> int:
    return len(reduced_forms(disc))


def class_number_bruteforce(disc: int) -> int:
    """Independent oracle: scan the whole (a,b,c) box for reduced forms."""
    if disc >= 0 or disc % 4 not in (0, 1):
        raise ValueError("discriminant must be negative and = 0, 1 mod 4")
    count = 0
    amax = math.isqrt(-disc // 3)
    for a in range(1, amax + 1):
        for b in range(-a, a + 1):
            num = b * b - disc
            if num % (4 * a):
                continue
            c = num // (4 * a)
            f = BQForm(a, b, c)
            if f.disc == disc and f.is_reduced() and f.is_primitive():
                count += 1
    return count


def pi_principal_count(D: int) -> int:
    """Number of principal-polarization classes for a maximal order of disc D."""
    primes = factorint(D)
    if any(e > 1 for e in primes.values()) or len(primes) % 2:
        raise ValueError(f"{D} is not an indefinite quaternion discriminant")
    if D % 4 == 3:
        total = class_number(-4 * D) + class_number(-D)
    else:
        total = class_number(-4 * D)
    if total % 2:
        raise ArithmeticError(f"non-integral polarization count for D={D}")
    return total // 2


# ---------------------------------------------------------------------------
# orders
# ---------------------------------------------------------------------------

class QuatOrder:
    """Rank-4 Z-lattice in (a,b/Q) closed under multiplication with 1 in it."""

    def __init__(self, basis: Sequence[Quaternion], validate: bool = True):
        if len(basis) != 4:
            raise ValueError("an order needs 4 basis elements")
        self.algebra = basis[0].algebra
        self.basis = list(basis)
        self._mat: Matrix = [list(q.coords) for q in self.basis]
        if linalg.det(self._mat) == 0:
            raise ValueError("basis is not of full rank")
        self._inv = linalg.mat_inv(self._mat)
        if validate:
            self.validate()

    def coordinates(self, x: Quaternion) -> List[Fraction]:
        """Coordinates of x in the order basis (rational in general)."""
        return linalg.mat_vec(linalg.transpose(self._inv), list(x.coords))

    def contains(self, x: Quaternion) -> bool:
        return all(c.denominator == 1 for c in self.coordinates(x))

    def validate(self):
        if not self.contains(self.algebra.one()):
            raise ValueError("1 is not in the lattice")
        for bi in self.basis:
            for bj in self.basis:
                if not self.contains(bi * bj):
                    raise ValueError("lattice is not closed under multiplication")

    def discriminant(self) -> int:
        """Reduced discriminant: sqrt(|det trd(b_i * conj(b_j))|)."""
        gram = [[(bi * bj.conj()).trd() for bj in self.basis] for bi in self.basis]
        d = abs(linalg.det(gram))
        if d.denominator != 1:
            raise ArithmeticError("non-integral Gram determinant: not an order")
        r = math.isqrt(d.numerator)
        if r * r != d.numerator:
            raise ArithmeticError("Gram determinant is not a perfect square")
        return r

    def is_maximal(self) -> bool:
        return self.discriminant() == self.algebra.discriminant()

    def to_json(self) -> dict:
        return {
            "algebra": [str(self.algebra.a), str(self.algebra.b)],
            "basis": [q.to_json() for q in self.basis],
        }

    def __repr__(self):
        return f"QuatOrder<{', '.join(map(repr, self.basis))}>"


def symmetric_sublattice(order: QuatOrder, j_sign: int) -> List[Quaternion]:
    """Basis of the rank-3 sublattice fixed by the involution 1,i fixed,
    j -> j_sign*j, k -> -j_sign*k.

    For j_sign = -1 the fixed space is span{1, i, k}; for +1 it is
    span{1, i, j}. Intersecting with the order is one integer-kernel step.
    """
    if j_sign not in (-1, 1):
        raise ValueError("j_sign must be +1 or -1")
    kill = 2 if j_sign == -1 else 3  # coordinate forced to vanish
    # linear form c -> coefficient `kill` of sum c_m b_m, cleared to integers
    col = [q.coords[kill] for q in order.basis]
    lcm = math.lcm(*[c.denominator for c in col])
    form = [int(c * lcm) for c in col]
    kernel = linalg.integer_kernel(form)
    if len(kernel) != 3:
        raise ArithmeticError("symmetric sublattice does not have rank 3")
    out = []
    for coeffs in kernel:
        q = order.algebra.element(0)
        for c, b in zip(coeffs, order.basis):
            q = q + b * c
        out.append(q)
    return out


def apply_involution(x: Quaternion, j_sign: int) -> Quaternion:
    """The Rosati-type involution fixing 1, i, with j -> j_sign*j."""
    return Quaternion(x.x0, x.x1, j_sign * x.x2, -j_sign * x.x3, x.algebra)


def _units_up_to(order: QuatOrder, height: int) -> List[Quaternion]:
    """Units of reduced norm +-1 with basis coefficients bounded by height."""
    units = []
    rng = range(-height, height + 1)
    b0, b1, b2, b3 = order.basis
    for c0 in rng:
        for c1 in rng:
            partial01 = b0 * c0 + b1 * c1
            for c2 in rng:
                partial012 = partial01 + b2 * c2
                for c3 in rng:
                    q = partial012 + b3 * c3
                    if abs(q.nrd()) == 1:
                        units.append(q)
    return units


def enumerate_positive_norm(
    order: QuatOrder,
    j_sign: int,
    d: int,
    coeff_bound: Optional[int] = None,
    unit_height: int = 3,
    expected_classes: Optional[int] = None,
) -> List[List[Quaternion]]:
    """All totally positive symmetric x in the order with nrd(x) = d,
    grouped into classes under x ~ beta* x beta for units beta.

    Requires the standard indefinite presentation a > 0, b < 0 so the search
    region in the non-scalar coordinates is an ellipse for each trace value.
    When `expected_classes` is given (the class-count certificate), the unit
    search height is doubled until the grouping is at least that fine.
    """
    if d <= 0:
        raise ValueError("d must be positive")
    alg = order.algebra
    a, b = alg.a, alg.b
    if not (a > 0 and b < 0):
        raise NotImplementedError("enumeration assumes a > 0 > b")
    sym = symmetric_sublattice(order, j_sign)
    denoms = [c.denominator for q in order.basis for c in q.coords]
    n = math.lcm(*denoms)
    if coeff_bound is None:
        coeff_bound = 4 * d * max(denoms)
    # scaled integer coordinates X = n*x; the two non-scalar coordinates
    # satisfy a positive definite equation for each fixed X0
    if j_sign == -1:
        idx1, idx2 = 1, 3            # x = x0 + x1 i + x3 k
        c1, c2 = Fraction(a), Fraction(-a * b)   # both positive for b < 0
    else:
        idx1, idx2 = 1, 2            # x = x0 + x1 i + x2 j
        c1, c2 = Fraction(a), Fraction(b)        # c2 < 0: Pell-type slice
    found: List[Quaternion] = []
    target_scale = n * n * d
    box = n * coeff_bound
    for X0 in range(1, box + 1):
        rhs = Fraction(X0 * X0 - target_scale)
        # solve c1 X1^2 + c2 X2^2 = rhs in integers (X1, X2)
        if c2 > 0:
            if rhs < 0:
                continue
            lim1 = math.isqrt(int(rhs / c1))
        else:
            lim1 = box
        for X1 in range(-lim1, lim1 + 1):
            rem = rhs - c1 * X1 * X1
            q2 = rem / c2
            if q2 < 0 or q2.denominator != 1:
                continue
            X2 = math.isqrt(q2.numerator)
            if X2 * X2 != q2.numerator:
                continue
            for s2 in ({X2, -X2} if X2 else {0}):
                coords = [Fraction(0)] * 4
                coords[0] = Fraction(X0, n)
                coords[idx1] = Fraction(X1, n)
                coords[idx2] = Fraction(s2, n)
                q = Quaternion(*coords, alg)
                if max(abs(c) for c in q.coords) > coeff_bound:
                    continue
                if order.contains(q) and is_totally_positive_symmetric(q):
                    if q.nrd() == d:
                        found.append(q)
    groups = _group_by_units(order, found, j_sign, unit_height)
    if expected_classes is not None:
        height = unit_height
        while len(groups) > expected_classes and height <= 64:
            height *= 2
            groups = _group_by_units(order, found, j_sign, height)
        if len(groups) != expected_classes:
            raise ArithmeticError(
                f"grouped {len(groups)} classes, certificate says {expected_classes}"
            )
    return groups


def _group_by_units(order, elements, j_sign, height) -> List[List[Quaternion]]:
    if not elements:
        return []
    units = _units_up_to(order, height)
    index = {q: i for i, q in enumerate(elements)}
    parent = list(range(len(elements)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri

    for i, q in enumerate(elements):
        for u in units:
            img = apply_involution(u, j_sign) * q * u
            jdx = index.get(img)
            if jdx is not None:
                union(i, jdx)
    groups: Dict[int, List[Quaternion]] = {}
    for i, q in enumerate(elements):
        groups.setdefault(find(i), []).append(q)
    ordered = sorted(groups.values(), key=lambda g: min(q.coords for q in g))
    return ordered
