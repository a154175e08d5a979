"""Exact integer linear algebra on small dense matrices.

Everything here works over Python ints or :class:`fractions.Fraction`;
nothing touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import NamedTuple, Sequence

Matrix = Sequence[Sequence[int]]


class SingularMatrixError(ArithmeticError):
    pass


class Inertia(NamedTuple):
    n_positive: int
    n_zero: int
    n_negative: int


def det_cofactor(a: Matrix) -> int:
    """Laplace expansion along successive rows, memoised on the set of
    unused columns (O(n 2^n) instead of O(n!)). Zero entries are skipped,
    so sparse tree matrices expand quickly."""
    n = len(a)
    if n == 0:
        return 1
    rows = [[(c, int(x)) for c, x in enumerate(row) if x] for row in a]
    full = (1 << n) - 1

    @lru_cache(maxsize=None)
    def expand(mask: int) -> int:
        if mask == 0:
            return 1
        r = n - bin(mask).count("1")
        total = 0
        for c, x in rows[r]:
            bit = 1 << c
            if not mask & bit:
                continue
            # sign = parity of unused columns to the left of c
            sign = -1 if bin(mask & (bit - 1)).count("1") & 1 else 1
            total += sign * x * expand(mask ^ bit)
        return total

    return expand(full)


def det_bareiss(a: Matrix) -> int:
    """Fraction-free Gaussian elimination (Bareiss); exact for integer input."""
    m = [list(map(int, row)) for row in a]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def solve(a: Matrix, rhs: Sequence[int]) -> list[Fraction]:
    """Solve ``a x = rhs`` exactly for an integer matrix.

    Forward elimination stays in the integers (row := pivot*row - factor*pivot_row,
    then divided by its content); only back-substitution uses Fractions. Rows
    with a zero in the pivot column are left untouched, which keeps sparse
    tree matrices cheap.
    """
    n = len(a)
    rows = [[int(x) for x in row] + [int(rhs[i])] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError(f"matrix is singular (column {col})")
        rows[col], rows[piv] = rows[piv], rows[col]
        top = rows[col]
        p = top[col]
        for r in range(col + 1, n):
            f = rows[r][col]
            if f == 0:
                continue
            row = [p * x - f * y for x, y in zip(rows[r], top)]
            g = 0
            for x in row:
                g = gcd(g, x)
            if g > 1:
                row = [x // g for x in row]
            rows[r] = row
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        row = rows[i]
        acc = Fraction(row[n])
        for j in range(i + 1, n):
            if row[j]:
                acc -= row[j] * x[j]
        x[i] = acc / row[i]
    return x


def _content(m: list[list[int]]) -> int:
    g = 0
    for row in m:
        for x in row:
            g = gcd(g, x)
            if g == 1:
                return 1
    return g


def inertia(a: Matrix) -> Inertia:
    """Sylvester inertia of a symmetric integer matrix.

    Symmetric elimination by congruence, kept fraction-free: each Schur
    complement is scaled by the pivot (1x1) or by the squared off-diagonal
    entry (2x2 block ``[[0, b], [b, 0]]`` used when the whole diagonal is
    zero). A negative 1x1 pivot flips the sign of the scaled remainder;
    that flip is tracked instead of being divided out.
    """
    m = [list(map(int, row)) for row in a]
    n = len(m)
    for i in range(n):
        for j in range(i):
            if m[i][j] != m[j][i]:
                raise ValueError("matrix is not symmetric")
    pos = neg = zero = 0
    flipped = False
    while m:
        size = len(m)
        k = next((i for i in range(size) if m[i][i] != 0), None)
        if k is not None:
            p = m[k][k]
            if (p > 0) != flipped:
                pos += 1
            else:
                neg += 1
            keep = [i for i in range(size) if i != k]
            m = [[p * m[i][j] - m[i][k] * m[k][j] for j in keep] for i in keep]
            if p < 0:
                flipped = not flipped
        else:
            pair = next(
                ((i, j) for i in range(size) for j in range(i + 1, size) if m[i][j] != 0),
                None,
            )
            if pair is None:
                zero += size
                break
            i0, j0 = pair
            b = m[i0][j0]
            pos += 1
            neg += 1
            keep = [i for i in range(size) if i not in pair]
            m = [
                [
                    b * b * m[x][y] - b * (m[x][i0] * m[j0][y] + m[x][j0] * m[i0][y])
                    for y in keep
                ]
                for x in keep
            ]
        g = _content(m)
        if g > 1:
            m = [[x // g for x in row] for row in m]
    return Inertia(pos, zero, neg)
