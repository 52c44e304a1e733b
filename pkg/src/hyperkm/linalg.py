"""Exact integer and rational matrix helpers (no floating point)."""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = Sequence[Sequence[int]]


def det(mat: Matrix) -> int:
    """Determinant of an integer matrix by Bareiss fraction-free elimination."""
    n = len(mat)
    if n == 0:
        return 1
    a = [list(row) for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def submatrix(mat: Matrix, keep: Sequence[int]) -> list[list[int]]:
    return [[mat[i][j] for j in keep] for i in keep]


def delete_index(mat: Matrix, idx: int) -> list[list[int]]:
    keep = [i for i in range(len(mat)) if i != idx]
    return submatrix(mat, keep)


def primitive(vec: Sequence[Fraction | int]) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers, first nonzero entry positive."""
    den = 1
    for x in vec:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    ints = [x // g for x in ints]
    for x in ints:
        if x != 0:
            if x < 0:
                ints = [-y for y in ints]
            break
    return tuple(ints)


def nullspace(mat: Sequence[Sequence[Fraction | int]], ncols: int | None = None) -> list[tuple[int, ...]]:
    """Basis of the right kernel of ``mat`` as primitive integer vectors."""
    rows = [[Fraction(x) for x in row] for row in mat]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(primitive(v))
    return basis


def rank(mat: Sequence[Sequence[Fraction | int]]) -> int:
    if not mat:
        return 0
    return len(mat[0]) - len(nullspace(mat))


def matmul(a: Matrix, b: Matrix) -> list[list[int]]:
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))]


def transpose(a: Matrix) -> list[list[int]]:
    return [list(col) for col in zip(*a)]
