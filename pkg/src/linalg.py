"""Exact dense linear algebra over any field element type.

Matrices are lists of rows. Entries may be ints, Fractions or
QuadScalars; the only requirements are the field operations and a
truthiness that means "nonzero". Nothing here rounds.
"""

import logging
from collections.abc import Sequence
from typing import Any

logger = logging.getLogger(__name__)

Matrix = list[list[Any]]


def identity(order: int, one: Any = 1, zero: Any = 0) -> Matrix:
    return [[one if i == j else zero for j in range(order)] for i in range(order)]


def transpose(m: Sequence[Sequence[Any]]) -> Matrix:
    if not m:
        return []
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence[Any]], b: Sequence[Sequence[Any]]) -> Matrix:
    if a and len(a[0]) != len(b):
        raise ValueError(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0]) if b else 0}")
    cols = transpose(b)
    out: Matrix = []
    for row in a:
        out_row = []
        for col in cols:
            acc: Any = 0
            for x, y in zip(row, col):
                if x and y:
                    acc = acc + x * y
            out_row.append(acc)
        out.append(out_row)
    return out


def scale(m: Sequence[Sequence[Any]], factor: Any) -> Matrix:
    return [[factor * x for x in row] for row in m]


def equal(a: Sequence[Sequence[Any]], b: Sequence[Sequence[Any]]) -> bool:
    if len(a) != len(b):
        return False
    return all(len(ra) == len(rb) and all(x == y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def row_echelon(m: Sequence[Sequence[Any]]) -> tuple[Matrix, list[int]]:
    """Gaussian elimination to reduced row echelon form.

    Returns the reduced copy and the list of pivot columns. The input is
    not modified.
    """
    work = [list(row) for row in m]
    n_rows = len(work)
    if n_rows == 0:
        return work, []
    n_cols = len(work[0])
    pivots: list[int] = []
    piv_r = 0
    for piv_c in range(n_cols):
        if piv_r == n_rows:
            break
        for i_row in range(piv_r, n_rows):
            if work[i_row][piv_c]:
                break
        else:
            continue
        if i_row != piv_r:
            work[piv_r], work[i_row] = work[i_row], work[piv_r]
        fp = work[piv_r][piv_c]
        work[piv_r] = [x / fp for x in work[piv_r]]
        for r in range(n_rows):
            if r == piv_r:
                continue
            fr = work[r][piv_c]
            if not fr:
                continue
            work[r] = [x - fr * y for x, y in zip(work[r], work[piv_r])]
        pivots.append(piv_c)
        piv_r += 1
    return work, pivots


def rank(m: Sequence[Sequence[Any]]) -> int:
    return len(row_echelon(m)[1])


def det(m: Sequence[Sequence[Any]]) -> Any:
    """Determinant by forward elimination with row swaps."""
    work = [list(row) for row in m]
    order = len(work)
    if any(len(row) != order for row in work):
        raise ValueError("determinant of a non-square matrix")
    result: Any = 1
    for c in range(order):
        for r in range(c, order):
            if work[r][c]:
                break
        else:
            return 0 * result
        if r != c:
            work[c], work[r] = work[r], work[c]
            result = -result
        pivot = work[c][c]
        result = result * pivot
        for r2 in range(c + 1, order):
            f = work[r2][c]
            if not f:
                continue
            q = f / pivot
            work[r2] = [x - q * y for x, y in zip(work[r2], work[c])]
    return result


def leading_minors(m: Sequence[Sequence[Any]]) -> list[Any]:
    """Determinants of the leading principal submatrices, orders 1..n."""
    return [det([row[:k] for row in m[:k]]) for k in range(1, len(m) + 1)]


def nullspace(m: Sequence[Sequence[Any]]) -> list[list[Any]]:
    """Basis of {x : m x = 0}, one vector per free column."""
    if not m:
        return []
    n_cols = len(m[0])
    reduced, pivots = row_echelon(m)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for fc in free:
        vec: list[Any] = [0] * n_cols
        vec[fc] = 1
        for r, pc in enumerate(pivots):
            coeff = reduced[r][fc]
            if coeff:
                vec[pc] = -coeff
        basis.append(vec)
    return basis


def independent_rows(rows: Sequence[Sequence[Any]]) -> list[int]:
    """Indices of a maximal linearly independent subset, greedy in order."""
    chosen: list[int] = []
    current = 0
    for i in range(len(rows)):
        trial = [rows[j] for j in chosen] + [rows[i]]
        r = rank(trial)
        if r > current:
            chosen.append(i)
            current = r
    return chosen


def is_symmetric(m: Sequence[Sequence[Any]]) -> bool:
    return all(m[i][j] == m[j][i] for i in range(len(m)) for j in range(i + 1, len(m)))
