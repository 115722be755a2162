"""Small exact linear algebra over Fraction: just what 4x4 lattice work needs."""
from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

Matrix = List[List[Fraction]]


def mat(rows) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(n: int, m: int) -> Matrix:
    return [[Fraction(0)] * m for _ in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    out = zeros(n, m)
    for i in range(n):
        ai = a[i]
        for j in range(m):
            out[i][j] = sum(ai[t] * b[t][j] for t in range(k))
    return out


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Matrix, s) -> Matrix:
    return [[x * s for x in row] for row in a]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def det(a: Matrix) -> Fraction:
    n = len(a)
    m = [row[:] for row in a]
    d = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            d = -d
        d *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] * inv
                m[r] = [m[r][k] - f * m[col][k] for k in range(n)]
    return d


def mat_inv(a: Matrix) -> Matrix:
    n = len(a)
    m = [row[:] + identity(n)[i] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def mat_vec(a: Matrix, v: Sequence[Fraction]) -> List[Fraction]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def is_integral(a: Matrix) -> bool:
    return all(x.denominator == 1 for row in a for x in row)


def is_alternating(a: Matrix) -> bool:
    n = len(a)
    return all(a[i][j] == -a[j][i] for i in range(n) for j in range(n))


def denominator_lcm(a: Matrix) -> int:
    from math import lcm
    return lcm(*[x.denominator for row in a for x in row]) if a else 1


# ---------------------------------------------------------------------------
# integer lattice utilities
# ---------------------------------------------------------------------------

def hnf(rows: List[List[int]]) -> List[List[int]]:
    """Row-style Hermite normal form; returns a basis of the row lattice.

    Positive pivots, entries above each pivot reduced into [0, pivot).
    Zero rows are dropped.
    """
    m = [list(map(int, r)) for r in rows if any(r)]
    if not m:
        return []
    ncols = len(m[0])
    basis: List[List[int]] = []
    row_idx = 0
    for col in range(ncols):
        # gather rows with nonzero entry in this column
        while True:
            nz = [r for r in range(row_idx, len(m)) if m[r][col] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda r: abs(m[r][col]))
            r0 = nz[0]
            for r in nz[1:]:
                q = m[r][col] // m[r0][col]
                m[r] = [x - q * y for x, y in zip(m[r], m[r0])]
        nz = [r for r in range(row_idx, len(m)) if m[r][col] != 0]
        if not nz:
            continue
        r0 = nz[0]
        m[row_idx], m[r0] = m[r0], m[row_idx]
        if m[row_idx][col] < 0:
            m[row_idx] = [-x for x in m[row_idx]]
        # reduce rows above
        for r in range(row_idx):
            q = m[r][col] // m[row_idx][col]
            if q:
                m[r] = [x - q * y for x, y in zip(m[r], m[row_idx])]
        row_idx += 1
    return [r for r in m[:row_idx] if any(r)]


def lattice_eq(rows_a: List[List[int]], rows_b: List[List[int]]) -> bool:
    return hnf(rows_a) == hnf(rows_b)


def integer_kernel(row: Sequence[int]) -> List[List[int]]:
    """Basis of {c in Z^n : sum c_i row_i = 0} for one integer linear form."""
    import math

    n = len(row)
    u = [[int(i == j) for j in range(n)] for i in range(n)]  # u[i] tracks e_i
    v = list(map(int, row))
    # column-style gcd elimination: combine coordinates pairwise
    while True:
        nz = [i for i in range(n) if v[i] != 0]
        if len(nz) <= 1:
            break
        nz.sort(key=lambda i: abs(v[i]))
        i0 = nz[0]
        for i in nz[1:]:
            q = v[i] // v[i0]
            v[i] -= q * v[i0]
            u[i] = [x - q * y for x, y in zip(u[i], u[i0])]
    kernel = [u[i] for i in range(n) if v[i] == 0]
    return kernel
