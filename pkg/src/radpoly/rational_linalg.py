"""Exact linear algebra over the rationals.

Matrices are lists of lists of ``Fraction``.  Pivoting always takes the
first nonzero candidate: with exact arithmetic there is no stability reason
to prefer large pivots, and determinism matters more.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import SingularMatrixError

Matrix = list[list[Fraction]]
Vector = list[Fraction]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(matrix: Sequence[Sequence[Fraction]]) -> Matrix:
    return [list(col) for col in zip(*matrix)]


def mat_vec(matrix: Sequence[Sequence[Fraction]], vector: Sequence[Fraction]) -> Vector:
    return [sum((a * v for a, v in zip(row, vector)), Fraction(0)) for row in matrix]


def mat_mul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def solve(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Vector:
    """Solve a square system exactly by Gaussian elimination.

    Raises SingularMatrixError when no unique solution exists.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix) or len(rhs) != n:
        raise ValueError("solve needs a square matrix and a matching vector")
    a = [list(row) for row in matrix]
    b = list(rhs)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError(f"no pivot in column {col}")
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            b[col], b[pivot] = b[pivot], b[col]
        for r in range(col + 1, n):
            factor = a[r][col] / a[col][col]
            if factor:
                b[r] -= factor * b[col]
                for c in range(col, n):
                    a[r][c] -= factor * a[col][c]
    x: Vector = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        acc = b[r]
        for c in range(r + 1, n):
            acc -= a[r][c] * x[c]
        x[r] = acc / a[r][r]
    return x


def invert(matrix: Sequence[Sequence[Fraction]]) -> Matrix:
    n = len(matrix)
    cols = []
    for j in range(n):
        e = [Fraction(int(i == j)) for i in range(n)]
        cols.append(solve(matrix, e))
    return transpose(cols)


def determinant(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant needs a square matrix")
    a = [list(row) for row in matrix]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            factor = a[r][col] / a[col][col]
            if factor:
                for c in range(col, n):
                    a[r][c] -= factor * a[col][c]
    return det


def rank(matrix: Sequence[Sequence[Fraction]]) -> int:
    if not matrix:
        return 0
    a = [list(row) for row in matrix]
    n_rows, n_cols = len(a), len(a[0])
    r = 0
    for col in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        for i in range(r + 1, n_rows):
            factor = a[i][col] / a[r][col]
            if factor:
                for c in range(col, n_cols):
                    a[i][c] -= factor * a[r][c]
        r += 1
        if r == n_rows:
            break
    return r


def rref(matrix: Sequence[Sequence[Fraction]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form with zero rows dropped, plus pivot columns.

    The result is a canonical representative of the row space, so two
    matrices have equal row spaces iff their rref outputs are equal.
    """
    if not matrix:
        return [], []
    a = [list(row) for row in matrix]
    n_rows, n_cols = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for col in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        scale = a[r][col]
        a[r] = [v / scale for v in a[r]]
        for i in range(n_rows):
            if i != r and a[i][col]:
                factor = a[i][col]
                a[i] = [v - factor * w for v, w in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
        if r == n_rows:
            break
    return a[:r], pivots


def nullspace(matrix: Sequence[Sequence[Fraction]]) -> list[Vector]:
    """Basis of the right nullspace, one vector per free column."""
    if not matrix:
        return []
    reduced, pivots = rref(matrix)
    n_cols = len(matrix[0])
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve_block_upper(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction],
                      blocks: Sequence[Sequence[int]]) -> Vector:
    """Solve a block upper triangular system by block back-substitution.

    ``blocks`` lists index groups in order; entries of ``matrix`` below the
    block diagonal are assumed zero.  Each diagonal block is solved densely.
    """
    n = len(rhs)
    x: list[Fraction | None] = [None] * n
    for bi in range(len(blocks) - 1, -1, -1):
        idx = list(blocks[bi])
        reduced = []
        for i in idx:
            acc = rhs[i]
            for bj in range(bi + 1, len(blocks)):
                for j in blocks[bj]:
                    if matrix[i][j]:
                        acc -= matrix[i][j] * x[j]
            reduced.append(acc)
        diag = [[matrix[i][j] for j in idx] for i in idx]
        for i, value in zip(idx, solve(diag, reduced)):
            x[i] = value
    return [v if v is not None else Fraction(0) for v in x]
