"""Exact linear algebra over the rationals.

Rank and determinant use fraction-free (Bareiss) elimination on integer
matrices; rational input is cleared of denominators row by row first, which
changes neither rank nor the vanishing of the determinant.  Kernels are
computed by reduced row echelon form over :class:`fractions.Fraction`.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Matrix = Sequence[Sequence[Fraction | int]]


def integer_rows(matrix: Matrix) -> list[list[int]]:
    """Scale every row by the lcm of its denominators."""
    out = []
    for row in matrix:
        den = 1
        for x in row:
            den = lcm(den, Fraction(x).denominator)
        out.append([int(Fraction(x) * den) for x in row])
    return out


def _bareiss(m: list[list[int]], ncols: int) -> tuple[int, int]:
    """Eliminate in place; return (rank, sign * last pivot).

    For a square full-rank matrix the second value is the determinant.
    """
    nrows = len(m)
    sign = 1
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
            sign = -sign
        pr = m[r]
        p = pr[c]
        for i in range(r + 1, nrows):
            row = m[i]
            f = row[c]
            if f == 0:
                if p != 1 or prev != 1:
                    for j in range(c + 1, ncols):
                        row[j] = (row[j] * p) // prev
            else:
                for j in range(c + 1, ncols):
                    row[j] = (row[j] * p - f * pr[j]) // prev
            row[c] = 0
        prev = p
        r += 1
    return r, sign * prev


def rank(matrix: Matrix, ncols: int | None = None) -> int:
    rows = integer_rows(matrix)
    if not rows:
        return 0
    n = len(rows[0]) if ncols is None else ncols
    r, _ = _bareiss(rows, n)
    return r


def determinant(matrix: Matrix) -> Fraction:
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant of a non-square matrix")
    scale = Fraction(1)
    rows = []
    for row in matrix:
        den = 1
        for x in row:
            den = lcm(den, Fraction(x).denominator)
        scale /= den
        rows.append([int(Fraction(x) * den) for x in row])
    r, d = _bareiss(rows, n)
    if r < n:
        return Fraction(0)
    return d * scale


def rref(matrix: Matrix, ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the pivot columns."""
    m = [[Fraction(x) for x in row] for row in matrix]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(matrix: Matrix, ncols: int) -> list[list[Fraction]]:
    """Basis of the right kernel, one vector per free column."""
    reduced, pivots = rref(matrix, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(matrix: Matrix, rhs: Sequence[Fraction | int]) -> list[Fraction] | None:
    """One solution of ``matrix @ x = rhs``, or None if inconsistent."""
    ncols = len(matrix[0]) if matrix else 0
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    reduced, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(reduced, pivots):
        x[pc] = row[ncols]
    return x
