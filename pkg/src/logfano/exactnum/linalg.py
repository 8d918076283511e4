"""Small dense linear algebra over the rationals (Gaussian elimination)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class SingularMatrixError(ArithmeticError):
    pass


def solve(M: Sequence[Sequence], rhs: Sequence[Sequence]) -> list[list[Fraction]]:
    """Solve ``M X = RHS`` for a square nonsingular ``M``.

    ``rhs`` is a list of right-hand-side columns; one solution column is
    returned per input column.
    """
    n = len(M)
    k = len(rhs)
    A = [[Fraction(M[i][j]) for j in range(n)] + [Fraction(rhs[c][i]) for c in range(k)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        A[col], A[piv] = A[piv], A[col]
        p = A[col][col]
        row = [v / p for v in A[col]]
        A[col] = row
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], row)]
    return [[A[i][n + c] for i in range(n)] for c in range(k)]


def is_negative_definite(M: Sequence[Sequence]) -> bool:
    """Exact test via the pivots of a symmetric elimination of ``-M``."""
    n = len(M)
    A = [[-Fraction(M[i][j]) for j in range(n)] for i in range(n)]
    for col in range(n):
        p = A[col][col]
        if p <= 0:
            return False
        for r in range(col + 1, n):
            f = A[r][col] / p
            if f:
                for c in range(col, n):
                    A[r][c] -= f * A[col][c]
    return True


def det(M: Sequence[Sequence]) -> Fraction:
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    d = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            d = -d
        p = A[col][col]
        d *= p
        for r in range(col + 1, n):
            f = A[r][col] / p
            if f:
                for c in range(col, n):
                    A[r][c] -= f * A[col][c]
    return d
