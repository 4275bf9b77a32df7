"""Small exact linear algebra over the rationals.

Matrices are plain lists of rows holding :class:`fractions.Fraction`.  The
sizes that occur in this package are tiny (g x g with g <= 2, occasionally
2g x 2g), so clarity wins over asymptotics here.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[Fraction]]

__all__ = [
    "Matrix",
    "as_matrix",
    "identity",
    "mat_mul",
    "mat_vec",
    "vec_mat",
    "transpose",
    "determinant",
    "inverse",
    "solve",
    "integer_hnf",
    "rational_hnf",
    "lcm_denominator",
]


def as_matrix(rows: Sequence[Sequence[object]]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def mat_vec(a: Matrix, v: Sequence[Fraction]) -> list[Fraction]:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def vec_mat(v: Sequence[Fraction], a: Matrix) -> list[Fraction]:
    """Row vector times matrix."""
    n = len(a[0])
    return [sum((v[i] * a[i][j] for i in range(len(v))), Fraction(0)) for j in range(n)]


def determinant(a: Matrix) -> Fraction:
    n = len(a)
    m = [row[:] for row in a]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    m = [row[:] + identity(n)[i] for i, row in enumerate(a)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[c], m[piv] = m[piv], m[c]
        p = m[c][c]
        m[c] = [x / p for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


def solve(a: Matrix, b: Sequence[Fraction]) -> list[Fraction]:
    """Solve ``a x = b`` exactly."""
    return mat_vec(inverse(a), [Fraction(x) for x in b])


def lcm_denominator(rows: Sequence[Sequence[Fraction]]) -> int:
    den = 1
    for row in rows:
        for x in row:
            d = Fraction(x).denominator
            den = den * d // gcd(den, d)
    return den


def integer_hnf(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    The result is upper triangular with positive pivots and entries above
    each pivot reduced into ``[0, pivot)``.  Zero rows are dropped, so the
    output has as many rows as the rank.
    """
    m = [list(map(int, r)) for r in rows]
    if not m:
        return []
    ncols = len(m[0])
    out: list[list[int]] = []
    col = 0
    while m and col < ncols:
        nz = [r for r in m if r[col] != 0]
        zero = [r for r in m if r[col] == 0]
        if not nz:
            col += 1
            continue
        # Euclid on column `col` across the nonzero rows.
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            rest = []
            for r in nz[1:]:
                q = r[col] // p[col]
                r = [x - q * y for x, y in zip(r, p)]
                (rest if r[col] != 0 else zero).append(r)
            nz = [p] + rest
        p = nz[0]
        if p[col] < 0:
            p = [-x for x in p]
        out.append(p)
        m = [r for r in zero if any(r)]
        col += 1
    # reduce entries above the pivots
    for i in range(len(out)):
        pc = next(c for c in range(ncols) if out[i][c] != 0)
        for j in range(i):
            q = out[j][pc] // out[i][pc]
            if q:
                out[j] = [x - q * y for x, y in zip(out[j], out[i])]
    return out


def rational_hnf(rows: Sequence[Sequence[Fraction]]) -> Matrix:
    """Hermite normal form of a full-rank rational lattice (unique per lattice)."""
    den = lcm_denominator(rows)
    ints = [[int(Fraction(x) * den) for x in row] for row in rows]
    h = integer_hnf(ints)
    return [[Fraction(x, den) for x in row] for row in h]
