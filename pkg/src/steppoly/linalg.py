"""Small exact dense matrix helpers (lists of lists of rationals)."""

from __future__ import annotations

from .errors import SingularMatrix
from .rational import ZERO, as_rat, rat


def zeros(rows: int, cols: int) -> list[list]:
    return [[rat(0) for _ in range(cols)] for _ in range(rows)]


def identity(n: int) -> list[list]:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = rat(1)
    return out


def transpose(a: list[list]) -> list[list]:
    return [list(col) for col in zip(*a)]


def matmul(a: list[list], b: list[list]) -> list[list]:
    if a and b and len(a[0]) != len(b):
        raise ValueError(f"inner dimensions differ: {len(a[0])} vs {len(b)}")
    bt = transpose(b)
    out = []
    for row in a:
        out.append([sum((x * y for x, y in zip(row, col)), ZERO) for col in bt])
    return out


def mat_eq(a: list[list], b: list[list]) -> bool:
    if len(a) != len(b) or any(len(r) != len(s) for r, s in zip(a, b)):
        return False
    return all(x == y for r, s in zip(a, b) for x, y in zip(r, s))


def corner(a: list[list], n: int) -> list[list]:
    """Leading principal n x n submatrix."""
    return [row[:n] for row in a[:n]]


def gauss_jordan_inverse(a: list[list]) -> list[list]:
    """Exact inverse by Gauss-Jordan elimination with partial pivoting.

    Pivoting is fine here: this routine backs independent oracles (the ABC
    identity and linear-solve cross-checks), not the normalized factorization.
    """
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("inverse needs a square matrix")
    work = [[as_rat(x) for x in row] + [rat(1) if i == j else rat(0) for j in range(n)]
            for i, row in enumerate(a)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot_row is None:
            raise SingularMatrix(f"singular at column {col}")
        if pivot_row != col:
            work[col], work[pivot_row] = work[pivot_row], work[col]
        inv = 1 / work[col][col]
        work[col] = [v * inv for v in work[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                f = work[r][col]
                work[r] = [v - f * w for v, w in zip(work[r], work[col])]
    return [row[n:] for row in work]


def solve(a: list[list], rhs: list) -> list:
    """Exact solve of a square system via the Gauss-Jordan inverse."""
    inv = gauss_jordan_inverse(a)
    return [sum((x * y for x, y in zip(row, rhs)), ZERO) for row in inv]
