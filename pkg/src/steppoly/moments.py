"""Scalar truncations of the moment matrix and the shift operators.

The semi-infinite moment matrix has q x p blocks indexed by step-line
positions; its scalar entry (m, n) is the moment of the measure at grid slot
(m mod q, n mod p) with exponents combined from positions m // q and n // p.
The shift operator Lambda_{[r];k} realizes multiplication by x_k on the
monomial vector X_{[r]}; it has a single 1 per row, at column n_plus(n, r, k).
"""

from __future__ import annotations

from .errors import DepthError
from .measures import MeasureMatrix
from .rational import as_rat, rat
from .stepline import in_complement_J, n_plus, pair_of


class MomentTruncation:
    """Dense D x D leading corner of the scalar-indexed moment matrix."""

    __slots__ = ("depth", "q", "p", "data")

    def __init__(self, depth: int, q: int, p: int, data: list[list]):
        self.depth = depth
        self.q = q
        self.p = p
        self.data = data

    def __getitem__(self, mn: tuple[int, int]):
        m, n = mn
        return self.data[m][n]

    def corner(self, d: int) -> "MomentTruncation":
        if d > self.depth:
            raise DepthError(f"corner {d} exceeds depth {self.depth}", required=d)
        return MomentTruncation(d, self.q, self.p, [row[:d] for row in self.data[:d]])


def assemble_moments(mm: MeasureMatrix, depth: int) -> MomentTruncation:
    """Materialize the leading depth x depth scalar moment truncation."""
    if depth < 1:
        raise DepthError(f"depth must be >= 1, got {depth}", required=1)
    q, p = mm.q, mm.p
    block_cache: dict[tuple[int, int], list[list]] = {}
    data = []
    for m in range(depth):
        I, b = divmod(m, q)
        row = []
        for n in range(depth):
            K, a = divmod(n, p)
            blk = block_cache.get((I, K))
            if blk is None:
                blk = mm.moment_block(I, K)
                block_cache[(I, K)] = blk
            row.append(blk[b][a])
        data.append(row)
    return MomentTruncation(depth, q, p, data)


class ShiftTruncation:
    """Finite window of Lambda_{[r];k}: one 1 per row, at (n, n_plus(n, r, k))."""

    __slots__ = ("r", "k", "rows", "ones")

    def __init__(self, r: int, k: int, rows: int):
        self.r = r
        self.k = k
        self.rows = rows
        self.ones = [(n, n_plus(n, r, k)) for n in range(rows)]

    @property
    def col_count(self) -> int:
        return self.ones[-1][1] + 1 if self.ones else 0

    def to_dense(self, cols: int | None = None) -> list[list]:
        cols = self.col_count if cols is None else cols
        out = [[rat(0) for _ in range(cols)] for _ in range(self.rows)]
        for n, target in self.ones:
            if target < cols:
                out[n][target] = rat(1)
        return out


def shift_operator(r: int, k: int, row_count: int) -> ShiftTruncation:
    return ShiftTruncation(r, k, row_count)


def hankel_window(depth: int, q: int, p: int, k: int) -> tuple[int, int]:
    """Largest (m_count, n_count) where both sides of the Hankel identity are determined."""
    m_count = 0
    while m_count < depth and n_plus(m_count, q, k) < depth:
        m_count += 1
    n_count = 0
    while n_count < depth and n_plus(n_count, p, k) < depth:
        n_count += 1
    return m_count, n_count


def hankel_mismatches(M: MomentTruncation, k: int) -> list[tuple[int, int, object, object]]:
    """Entries where Lambda_{[q];k} M != M Lambda^T_{[p];k} on the determined window.

    Row m of the left product is row n_plus(m, q, k) of M; column n of the
    right product is column n_plus(n, p, k) of M, so the window is exactly the
    set of (m, n) with both shifted indices inside the truncation.
    """
    m_count, n_count = hankel_window(M.depth, M.q, M.p, k)
    if m_count == 0 or n_count == 0:
        raise DepthError(
            f"depth {M.depth} leaves no checkable Hankel window for k={k}",
            required=max(n_plus(0, M.q, k), n_plus(0, M.p, k)) + 1,
        )
    bad = []
    for m in range(m_count):
        ms = n_plus(m, M.q, k)
        for n in range(n_count):
            ns = n_plus(n, M.p, k)
            lhs = M.data[ms][n]
            rhs = M.data[m][ns]
            if lhs != rhs:
                bad.append((m, n, lhs, rhs))
    return bad


def check_hankel_symmetry(M: MomentTruncation, k: int) -> bool:
    return not hankel_mismatches(M, k)


def apply_shift_to_monomials(r: int, k: int, x1, x2, count: int) -> list:
    """First `count` scalar rows of Lambda_{[r];k} X_{[r]}(x).

    Row n of X_{[r]} carries the monomial at step-line position n // r (the
    identity blocks make the scalar check sufficient), so the shifted row n is
    the monomial at position n_plus(n, r, k) // r.
    """
    a, b = as_rat(x1), as_rat(x2)

    def mono(pos: int):
        i, j, _ = pair_of(pos)
        return a ** (i - j) * b ** j

    return [mono(n_plus(n, r, k) // r) for n in range(count)]


def monomial_value(pos: int, x1, x2):
    """Value of the monomial at a step-line position."""
    i, j, _ = pair_of(pos)
    return as_rat(x1) ** (i - j) * as_rat(x2) ** j


def shift_ones_in_complement(r: int, k: int, row_count: int) -> bool:
    """Cross-module consistency: every 1 of the shift operator lands outside J."""
    return all(in_complement_J(target, r, k) for _, target in shift_operator(r, k, row_count).ones)
