"""Exact rational linear algebra: fraction-free elimination, rank, minors.

All routines take lists of lists of Fractions and never touch floating
point.  Forward elimination is Bareiss-style on integer-scaled rows, so
intermediate entries stay integral and every division is exact.  Pivots
are chosen by largest bit length of the (integer) entry, ties broken by
lowest row index, which makes the elimination order deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm


class LinearSystemUnderdetermined(ValueError):
    """The system has fewer independent equations than unknowns."""

    def __init__(self, nullspace_dim: int, rank: int):
        self.nullspace_dim = nullspace_dim
        self.rank = rank
        super().__init__(
            f"system is underdetermined: rank {rank}, nullspace dimension {nullspace_dim}"
        )


class LinearSystemInconsistent(ValueError):
    """The system admits no solution."""


def _bit_score(value: int) -> int:
    return abs(value).bit_length()


def _integer_rows(matrix, rhs=None):
    """Scale each row (with its rhs entry) by the lcm of denominators."""
    rows = []
    for i, row in enumerate(matrix):
        entries = [Fraction(x) for x in row]
        tail = [] if rhs is None else [Fraction(rhs[i])]
        scale = lcm(*(x.denominator for x in entries + tail)) if entries or tail else 1
        ints = [int(x * scale) for x in entries]
        tail_int = [int(x * scale) for x in tail]
        rows.append((ints, tail_int))
    return rows


def _bareiss_forward(matrix, rhs=None):
    """Fraction-free forward elimination.

    Returns (rows, tails, pivot_cols) where rows/tails are the reduced
    integer rows and pivot_cols[k] is the column of the k-th pivot.
    """
    scaled = _integer_rows(matrix, rhs)
    rows = [r for r, _ in scaled]
    tails = [t for _, t in scaled]
    n_rows = len(rows)
    n_cols = len(rows[0]) if n_rows else 0

    pivot_cols: list[int] = []
    prev = 1
    r = 0
    for c in range(n_cols):
        if r >= n_rows:
            break
        best = -1
        best_score = -1
        for i in range(r, n_rows):
            if rows[i][c] != 0 and _bit_score(rows[i][c]) > best_score:
                best = i
                best_score = _bit_score(rows[i][c])
        if best < 0:
            continue
        if best != r:
            rows[r], rows[best] = rows[best], rows[r]
            tails[r], tails[best] = tails[best], tails[r]
        pivot = rows[r][c]
        for i in range(r + 1, n_rows):
            factor = rows[i][c]
            for j in range(c, n_cols):
                rows[i][j] = (pivot * rows[i][j] - factor * rows[r][j]) // prev
            for j in range(len(tails[i])):
                tails[i][j] = (pivot * tails[i][j] - factor * tails[r][j]) // prev
        prev = pivot
        pivot_cols.append(c)
        r += 1
    return rows, tails, pivot_cols


def matrix_rank(matrix) -> int:
    if not matrix:
        return 0
    _, _, pivot_cols = _bareiss_forward(matrix)
    return len(pivot_cols)


def solve_unique(matrix, rhs) -> list[Fraction]:
    """Solve M x = b exactly, requiring a unique solution.

    Raises LinearSystemUnderdetermined when rank < number of unknowns and
    LinearSystemInconsistent when no solution exists.
    """
    if not matrix:
        raise LinearSystemUnderdetermined(nullspace_dim=0, rank=0)
    n_cols = len(matrix[0])
    rows, tails, pivot_cols = _bareiss_forward(matrix, rhs)
    rank = len(pivot_cols)

    for i in range(rank, len(rows)):
        if all(v == 0 for v in rows[i]) and tails[i][0] != 0:
            raise LinearSystemInconsistent(
                "no exact solution: the data is inconsistent"
            )
    if rank < n_cols:
        raise LinearSystemUnderdetermined(nullspace_dim=n_cols - rank, rank=rank)

    solution = [Fraction(0)] * n_cols
    for k in range(rank - 1, -1, -1):
        c = pivot_cols[k]
        acc = Fraction(tails[k][0])
        for j in range(c + 1, n_cols):
            acc -= rows[k][j] * solution[j]
        solution[c] = acc / rows[k][c]
    return solution


def determinant(matrix) -> Fraction:
    """Exact determinant of a square matrix."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant requires a square matrix")
    rows = [[Fraction(x) for x in row] for row in matrix]
    det = Fraction(1)
    for c in range(n):
        pivot_row = None
        for i in range(c, n):
            if rows[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != c:
            rows[c], rows[pivot_row] = rows[pivot_row], rows[c]
            det = -det
        pivot = rows[c][c]
        det *= pivot
        for i in range(c + 1, n):
            factor = rows[i][c] / pivot
            if factor == 0:
                continue
            for j in range(c, n):
                rows[i][j] -= factor * rows[c][j]
    return det


def leading_principal_minors(matrix) -> list[Fraction]:
    """Determinants of the top-left k-by-k blocks, k = 1..n."""
    n = len(matrix)
    return [determinant([row[:k] for row in matrix[:k]]) for k in range(1, n + 1)]


def is_negative_definite(matrix) -> bool:
    """Sylvester test: leading principal minors alternate starting negative."""
    minors = leading_principal_minors(matrix)
    return all((-1) ** k * m > 0 for k, m in enumerate(minors, start=1))
