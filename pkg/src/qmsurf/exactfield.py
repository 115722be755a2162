"""Exact arithmetic over Q and quadratic fields Q(sqrt(delta)).

Elements a + b*sqrt(delta) with rational a, b, plus polynomials over them,
embeddings into mpmath complex numbers at a chosen decimal precision, and
recognition of exact values back from high-precision floats.

The embedding convention is fixed once: sqrt(delta) maps to +i*sqrt(|delta|)
for delta < 0 and to the positive real root for delta > 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import mpmath as mp

RationalLike = Union[int, Fraction]

DEFAULT_PRECISION = 60
DEFAULT_MAX_DENOMINATOR = 10**8


class DeltaMismatch(ValueError):
    """Raised when elements of distinct quadratic fields are combined."""


def _sqfree(delta: int) -> int:
    if delta in (0, 1):
        raise ValueError(f"delta must be square-free and != 0, 1, got {delta}")
    n = abs(delta)
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            raise ValueError(f"delta must be square-free, got {delta}")
        d += 1
    return delta


@dataclass(frozen=True)
class QuadExt:
    """Element a + b*sqrt(delta) of Q(sqrt(delta)), exact coordinates."""

    a: Fraction
    b: Fraction
    delta: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        _sqfree(self.delta)

    # -- coercion ---------------------------------------------------------

    def _coerce(self, other) -> "QuadExt":
        if isinstance(other, QuadExt):
            if other.delta != self.delta and other.b != 0 and self.b != 0:
                raise DeltaMismatch(f"delta {self.delta} vs {other.delta}")
            if other.delta != self.delta:
                # one of them is rational; re-tag it
                if other.b == 0:
                    return QuadExt(other.a, 0, self.delta)
                raise DeltaMismatch(f"delta {self.delta} vs {other.delta}")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(Fraction(other), Fraction(0), self.delta)
        return NotImplemented

    # -- field operations --------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        s = self if self.delta == o.delta else QuadExt(self.a, 0, o.delta)
        return QuadExt(s.a + o.a, s.b + o.b, o.delta)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.delta)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        s = self if self.delta == o.delta else QuadExt(self.a, 0, o.delta)
        return QuadExt(
            s.a * o.a + s.b * o.b * o.delta,
            s.a * o.b + s.b * o.a,
            o.delta,
        )

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.delta

    def conj(self) -> "QuadExt":
        """Galois conjugate a - b*sqrt(delta)."""
        return QuadExt(self.a, -self.b, self.delta)

    def inverse(self) -> "QuadExt":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(delta))")
        return QuadExt(self.a / n, -self.b / n, self.delta)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadExt):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return (self.a, self.b, self.delta) == (other.a, other.b, other.delta)
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.delta))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def is_rational(self) -> bool:
        return self.b == 0

    # -- embedding ---------------------------------------------------------

    def embed(self, precision: int = DEFAULT_PRECISION) -> mp.mpc:
        """Image under the fixed embedding at `precision` decimal digits."""
        if precision < 30:
            raise ValueError("precision must be >= 30 digits")
        with mp.workdps(precision + 10):
            a = mp.mpf(self.a.numerator) / self.a.denominator
            b = mp.mpf(self.b.numerator) / self.b.denominator
            if self.delta < 0:
                return mp.mpc(a, b * mp.sqrt(-self.delta))
            return mp.mpc(a + b * mp.sqrt(self.delta), 0)

    def __repr__(self):
        if self.b == 0:
            return f"{self.a}"
        return f"({self.a} + {self.b}*sqrt({self.delta}))"

    def to_json(self) -> list:
        return [str(self.a), str(self.b), self.delta]

    @classmethod
    def from_json(cls, data: Sequence) -> "QuadExt":
        return cls(Fraction(data[0]), Fraction(data[1]), int(data[2]))

    @classmethod
    def rational(cls, x: RationalLike, delta: int) -> "QuadExt":
        return cls(Fraction(x), Fraction(0), delta)

    @classmethod
    def root(cls, delta: int) -> "QuadExt":
        """sqrt(delta) itself."""
        return cls(Fraction(0), Fraction(1), delta)


# ---------------------------------------------------------------------------
# recognition of exact values from floats
# ---------------------------------------------------------------------------

def rational_reconstruct(
    x,
    max_denominator: int = DEFAULT_MAX_DENOMINATOR,
    tolerance=1e-30,
) -> Optional[Fraction]:
    """Best continued-fraction convergent p/q with q <= max_denominator.

    Returns None when no convergent approximates x within `tolerance`;
    that is the legitimate "not rational at this precision" outcome.
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    with mp.workdps(mp.mp.dps + 10):
        xm = mp.mpf(x)
        # convergent recursion p_k = a_k p_{k-1} + p_{k-2}
        p0, q0, p1, q1 = 0, 1, 1, 0
        r = xm
        for _ in range(200):
            a = mp.floor(r)
            if abs(a) > 10**40:
                break
            ai = int(a)
            p0, q0, p1, q1 = p1, q1, ai * p1 + p0, ai * q1 + q0
            if q1 > max_denominator:
                break
            if abs(xm - mp.mpf(p1) / q1) < tolerance:
                return Fraction(p1, q1)
            frac = r - a
            if frac == 0:
                break
            r = 1 / frac
    return None


def recognize_qf(
    x,
    delta: int,
    max_denominator: int = DEFAULT_MAX_DENOMINATOR,
    tolerance=1e-30,
) -> Optional[QuadExt]:
    """Invert the embedding: solve x ~ a + b*embed(sqrt(delta)) exactly.

    For delta < 0 the two real coordinates split as (Re x, Im x / sqrt(|delta|))
    and are reconstructed independently. For delta > 0 only rational values
    (b = 0) are recognized; x must then be (numerically) real.
    """
    with mp.workdps(mp.mp.dps + 10):
        z = mp.mpc(x)
        if delta < 0:
            a = rational_reconstruct(z.real, max_denominator, tolerance)
            b = rational_reconstruct(
                z.imag / mp.sqrt(-delta), max_denominator, tolerance
            )
            if a is None or b is None:
                return None
            return QuadExt(a, b, delta)
        if abs(z.imag) > tolerance:
            return None
        a = rational_reconstruct(z.real, max_denominator, tolerance)
        if a is None:
            return None
        return QuadExt(a, 0, delta)


# ---------------------------------------------------------------------------
# polynomials over Q(sqrt(delta))
# ---------------------------------------------------------------------------

class Poly:
    """Dense polynomial over one quadratic field, coefficients low to high."""

    __slots__ = ("coeffs", "delta")

    def __init__(self, coeffs: Iterable, delta: int):
        cs = []
        for c in coeffs:
            if isinstance(c, QuadExt):
                if c.delta != delta and c.b != 0:
                    raise DeltaMismatch("polynomial coefficients share one delta")
                cs.append(QuadExt(c.a, c.b, delta) if c.delta == delta else QuadExt(c.a, 0, delta))
            else:
                cs.append(QuadExt(Fraction(c), 0, delta))
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.delta = delta

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, k: int) -> QuadExt:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return QuadExt(0, 0, self.delta)

    def leading(self) -> QuadExt:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[k] + other[k] for k in range(n)], self.delta)

    def __sub__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[k] - other[k] for k in range(n)], self.delta)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs], self.delta)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction, QuadExt)):
            return Poly([c * other for c in self.coeffs], self.delta)
        out = [QuadExt(0, 0, self.delta)] * (len(self.coeffs) + len(other.coeffs) - 1) \
            if self.coeffs and other.coeffs else []
        for i, ci in enumerate(self.coeffs):
            for j, cj in enumerate(other.coeffs):
                out[i + j] = out[i + j] + ci * cj
        return Poly(out, self.delta)

    __rmul__ = __mul__

    def scale(self, s) -> "Poly":
        return self * s

    def deriv(self) -> "Poly":
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:], self.delta)

    def __call__(self, x):
        """Evaluate; exact for QuadExt/Fraction input, numeric for mpc."""
        if not self.coeffs:
            return QuadExt(0, 0, self.delta) if not isinstance(x, (mp.mpc, mp.mpf, complex, float)) else mp.mpc(0)
        acc = None
        for c in reversed(self.coeffs):
            cv = c
            if isinstance(x, (mp.mpc, mp.mpf, complex, float)):
                cv = c.embed(mp.mp.dps)
            acc = cv if acc is None else acc * x + cv
        return acc

    def eval_complex(self, z, precision: int) -> mp.mpc:
        with mp.workdps(precision + 10):
            acc = mp.mpc(0)
            for c in reversed(self.coeffs):
                acc = acc * z + c.embed(precision)
            return acc

    def conj(self) -> "Poly":
        return Poly([c.conj() for c in self.coeffs], self.delta)

    def embed_coeffs(self, precision: int) -> list:
        return [c.embed(precision) for c in self.coeffs]

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        terms = [f"({c})*X^{k}" for k, c in enumerate(self.coeffs) if c]
        return " + ".join(terms)

    @classmethod
    def from_root_pair(cls, lead: QuadExt, r1: QuadExt, r2: QuadExt) -> "Poly":
        """lead * (X - r1) * (X - r2), exact."""
        return cls([r1 * r2 * lead, -(r1 + r2) * lead, lead], lead.delta)

    def to_json(self) -> dict:
        return {"delta": self.delta,
                "coefficients": [[str(c.a), str(c.b)] for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "Poly":
        delta = int(data["delta"])
        return cls([QuadExt(Fraction(a), Fraction(b), delta)
                    for a, b in data["coefficients"]], delta)


def resultant(f: Poly, g: Poly) -> QuadExt:
    """Resultant via exact fraction-free elimination of the Sylvester matrix."""
    m, n = f.degree, g.degree
    if m < 0 or n < 0:
        return QuadExt(0, 0, f.delta)
    size = m + n
    zero = QuadExt(0, 0, f.delta)
    rows = []
    for i in range(n):
        row = [zero] * size
        for k in range(m + 1):
            row[i + k] = f.coeffs[m - k]
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k in range(n + 1):
            row[i + k] = g.coeffs[n - k]
        rows.append(row)
    # ordinary Gaussian elimination over the field, tracking the determinant
    det = QuadExt(1, 0, f.delta)
    for col in range(size):
        piv = next((r for r in range(col, size) if rows[r][col]), None)
        if piv is None:
            return zero
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det = det * rows[col][col]
        inv = rows[col][col].inverse()
        for r in range(col + 1, size):
            if rows[r][col]:
                factor = rows[r][col] * inv
                rows[r] = [rows[r][k] - factor * rows[col][k] for k in range(size)]
    return det


def poly_discriminant(f: Poly) -> QuadExt:
    """disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f)."""
    d = f.degree
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return resultant(f, f.deriv()) * sign * f.leading().inverse()
