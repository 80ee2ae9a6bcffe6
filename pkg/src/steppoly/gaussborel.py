"""Normalized Gauss-Borel factorization M = S^-1 H Sbar^-T on truncations.

S and Sbar are lower unitriangular, H is diagonal and nonzero.  The
factorization exists iff every leading principal minor of the truncation is
nonzero; elimination never pivots, because pivoting would destroy the
unitriangular normalization that defines the polynomial families.  A zero
pivot raises Breakdown and leaves nothing behind.
"""

from __future__ import annotations

from .errors import Breakdown
from .linalg import identity, matmul, transpose
from .moments import MomentTruncation
from .rational import as_rat, rat


def invert_unitriangular(T: list[list]) -> list[list]:
    """Exact inverse of a lower unitriangular matrix by forward substitution."""
    n = len(T)
    for i, row in enumerate(T):
        if len(row) != n or row[i] != 1:
            raise ValueError("matrix is not lower unitriangular")
    inv = identity(n)
    for j in range(n):
        for i in range(j + 1, n):
            acc = rat(0)
            for m in range(j, i):
                if T[i][m] != 0 and inv[m][j] != 0:
                    acc += T[i][m] * inv[m][j]
            inv[i][j] = -acc
    return inv


class Factorization:
    """Factors of one truncation: S, Sbar (unit lower) and the diagonal H."""

    __slots__ = ("depth", "S", "Sbar", "H", "_S_inv", "_Sbar_inv")

    def __init__(self, depth: int, S: list[list], Sbar: list[list], H: list):
        self.depth = depth
        self.S = S
        self.Sbar = Sbar
        self.H = H
        self._S_inv = None
        self._Sbar_inv = None

    @property
    def S_inv(self) -> list[list]:
        if self._S_inv is None:
            self._S_inv = invert_unitriangular(self.S)
        return self._S_inv

    @property
    def Sbar_inv(self) -> list[list]:
        if self._Sbar_inv is None:
            self._Sbar_inv = invert_unitriangular(self.Sbar)
        return self._Sbar_inv

    def reconstruct(self) -> list[list]:
        """S^-1 diag(H) Sbar^-T, for comparison against the source truncation."""
        hsbar_t = [
            [self.H[i] * v for v in row] for i, row in enumerate(transpose(self.Sbar_inv))
        ]
        return matmul(self.S_inv, hsbar_t)

    def corner(self, d: int) -> "Factorization":
        return Factorization(
            d,
            [row[:d] for row in self.S[:d]],
            [row[:d] for row in self.Sbar[:d]],
            self.H[:d],
        )


def factorize(M: MomentTruncation | list[list]) -> Factorization:
    """Doolittle elimination without pivoting; Breakdown on a zero pivot."""
    data = M.data if isinstance(M, MomentTruncation) else M
    D = len(data)
    if any(len(row) != D for row in data):
        raise ValueError("factorize needs a square truncation")
    U = [[as_rat(v) for v in row] for row in data]
    L = identity(D)
    for col in range(D):
        pivot = U[col][col]
        if pivot == 0:
            raise Breakdown(col)
        for r in range(col + 1, D):
            if U[r][col] == 0:
                continue
            f = U[r][col] / pivot
            L[r][col] = f
            row_r, row_c = U[r], U[col]
            for c in range(col, D):
                row_r[c] -= f * row_c[c]
    H = [U[i][i] for i in range(D)]
    # M = L U with L unit lower; S = L^-1, H = diag(U), Sbar^-T = H^-1 U.
    S = invert_unitriangular(L)
    sbar_inv_t = [[U[i][c] / H[i] for c in range(D)] for i in range(D)]
    Sbar = invert_unitriangular(transpose(sbar_inv_t))
    return Factorization(D, S, Sbar, H)
