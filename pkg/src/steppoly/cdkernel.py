"""Christoffel-Darboux kernels, their block formula, and the ABC identity.

K^[n](x, y) is the p x q matrix sum of A_i(x) B_i(y) over i <= n.  The CD
formula rewrites (x_k - y_k) K^[n] through four finite blocks of the
recurrence matrix; as with the recurrences, the values that make the formula
exact are those of the conjugate R_k = H^-1 T_k H, while the block shapes and
the printed labels follow T_k itself.  The ABC identity expresses the same
kernel through the inverse of the leading (n+1) x (n+1) moment truncation,
computed here by an independent pivoted elimination.
"""

from __future__ import annotations

from .bipoly import PolyMatrix
from .errors import DepthError
from .families import FamilyA, FamilyB, integrate_pair
from .linalg import gauss_jordan_inverse, matmul
from .measures import MeasureMatrix
from .moments import assemble_moments, monomial_value
from .rational import as_rat, rat
from .recurrence import RecurrenceTruncation
from .stepline import n_minus_big, n_plus


def kernel_eval(A: FamilyA, B: FamilyB, n: int, x: tuple, y: tuple) -> list[list]:
    """Exact p x q kernel value at a point pair."""
    if n >= min(len(A), len(B)):
        raise DepthError(f"kernel index {n} outside family range", required=n + 1)
    p, q = A.p, B.q
    out = [[rat(0) for _ in range(q)] for _ in range(p)]
    for i in range(n + 1):
        a_i = A.eval_col(i, *x)
        b_i = B.eval_row(i, *y)
        for a_idx in range(p):
            if a_i[a_idx] == 0:
                continue
            for b_idx in range(q):
                out[a_idx][b_idx] += a_i[a_idx] * b_i[b_idx]
    return out


class CDBlocks:
    """The four index ranges and matrix blocks of the CD formula at (n, k).

    tgt_rows x tgt_cols holds the lower-left block of T_k (rows n+1 ..
    n_plus(n, p, k), columns n_minus_big(n+1, p, k) .. n); src_rows x src_cols
    holds the upper-right block (rows n_minus_big(n+1, q, k) .. n, columns
    n+1 .. n_plus(n, q, k)).  t_* carry plain T_k values (the printed labels);
    r_* carry the H-conjugated values used by the exact formula.
    """

    __slots__ = (
        "k", "n", "q", "p", "tgt_rows", "tgt_cols", "src_rows", "src_cols",
        "t_tgt", "t_src", "r_tgt", "r_src", "A", "B",
    )

    def __init__(self, T: RecurrenceTruncation, A: FamilyA, B: FamilyB, n: int):
        k, q, p = T.k, T.q, T.p
        self.k, self.n, self.q, self.p = k, n, q, p
        self.tgt_rows = range(n + 1, n_plus(n, p, k) + 1)
        self.tgt_cols = range(n_minus_big(n + 1, p, k), n + 1)
        self.src_rows = range(n_minus_big(n + 1, q, k), n + 1)
        self.src_cols = range(n + 1, n_plus(n, q, k) + 1)
        top = max(self.tgt_rows[-1], self.src_cols[-1])
        if top >= T.size:
            raise DepthError(
                f"T_{k} window {T.size} too small for CD blocks at n={n}",
                required=top + 1,
            )
        if top >= min(len(A), len(B)):
            raise DepthError(
                f"families too short for CD blocks at n={n}", required=top + 1
            )
        H = T.H
        self.t_tgt = [[T.data[m][c] for c in self.tgt_cols] for m in self.tgt_rows]
        self.t_src = [[T.data[m][c] for c in self.src_cols] for m in self.src_rows]
        self.r_tgt = [
            [T.data[m][c] * H[c] / H[m] for c in self.tgt_cols] for m in self.tgt_rows
        ]
        self.r_src = [
            [T.data[m][c] * H[c] / H[m] for c in self.src_cols] for m in self.src_rows
        ]
        self.A = A
        self.B = B


def cd_blocks(T: RecurrenceTruncation, A: FamilyA, B: FamilyB, n: int, k: int) -> CDBlocks:
    if k != T.k:
        raise ValueError(f"requested k={k} but T was built for k={T.k}")
    return CDBlocks(T, A, B, n)


def check_cd_formula(blocks: CDBlocks, x: tuple, y: tuple) -> bool:
    """Exact CD identity at one point pair, as p x q matrices."""
    A, B, n, k = blocks.A, blocks.B, blocks.n, blocks.k
    p, q = blocks.p, blocks.q
    xk = as_rat(x[0] if k == 1 else x[1])
    yk = as_rat(y[0] if k == 1 else y[1])
    kern = kernel_eval(A, B, n, x, y)
    lhs = [[(xk - yk) * kern[a][b] for b in range(q)] for a in range(p)]

    a_gt = [A.eval_col(m, *x) for m in blocks.tgt_rows]   # |tgt_rows| vectors of length p
    b_n = [B.eval_row(c, *y) for c in blocks.tgt_cols]    # |tgt_cols| vectors of length q
    a_n = [A.eval_col(m, *x) for m in blocks.src_rows]
    b_gt = [B.eval_row(c, *y) for c in blocks.src_cols]

    rhs = [[rat(0) for _ in range(q)] for _ in range(p)]
    for ri, row in enumerate(blocks.r_tgt):
        for ci, t in enumerate(row):
            if t == 0:
                continue
            for a_idx in range(p):
                va = a_gt[ri][a_idx]
                if va == 0:
                    continue
                for b_idx in range(q):
                    rhs[a_idx][b_idx] += va * t * b_n[ci][b_idx]
    for ri, row in enumerate(blocks.r_src):
        for ci, t in enumerate(row):
            if t == 0:
                continue
            for a_idx in range(p):
                va = a_n[ri][a_idx]
                if va == 0:
                    continue
                for b_idx in range(q):
                    rhs[a_idx][b_idx] -= va * t * b_gt[ci][b_idx]
    return lhs == rhs


def check_abc(mm: MeasureMatrix, A: FamilyA, B: FamilyB, n: int, x: tuple, y: tuple) -> bool:
    """Kernel via families equals the inverse-moment form, exactly.

    The monomial vector truncations keep the first n+1 scalar entries; the
    moment truncation inverse comes from pivoted Gauss-Jordan, independent of
    the unpivoted factorization route.
    """
    p, q = mm.p, mm.q
    M = assemble_moments(mm, n + 1)
    M_inv = gauss_jordan_inverse(M.data)
    # X^T_[p](x) truncated: p x (n+1); scalar row m of X_[p] is the monomial
    # at position m // p in unit slot m % p.
    xt = [[rat(0) for _ in range(n + 1)] for _ in range(p)]
    for m in range(n + 1):
        K, slot = divmod(m, p)
        xt[slot][m] = monomial_value(K, *x)
    xq = [[rat(0) for _ in range(q)] for _ in range(n + 1)]
    for m in range(n + 1):
        K, slot = divmod(m, q)
        xq[m][slot] = monomial_value(K, *y)
    rhs = matmul(matmul(xt, M_inv), xq)
    return kernel_eval(A, B, n, x, y) == rhs


_DEFAULT_SPOT_PAIRS = [
    ((rat(1, 2), rat(-1, 3)), (rat(-2, 5), rat(1, 7))),
    ((rat(3, 4), rat(1, 2)), (rat(1, 5), rat(-1, 2))),
    ((rat(-1, 3), rat(2, 3)), (rat(0), rat(1, 4))),
]


def check_reproduction(A: FamilyA, B: FamilyB, mm: MeasureMatrix, n: int,
                       point_pairs: list | None = None) -> bool:
    """Kernel reproduces itself under the measure pairing.

    Verifies the middle identity (the pairing of B_i against A_j is the
    (n+1)-identity, expanded through the moment oracle), then spot-checks the
    full double-integral expansion at a few point pairs.
    """
    if n >= min(len(A), len(B)):
        raise DepthError(f"reproduction index {n} outside family range", required=n + 1)
    q, p = mm.q, mm.p
    gram = [[rat(0) for _ in range(n + 1)] for _ in range(n + 1)]
    for i in range(n + 1):
        for j in range(n + 1):
            val = rat(0)
            for b_idx in range(q):
                for a_idx in range(p):
                    val += integrate_pair(mm, B.poly(i, b_idx), b_idx, a_idx, A.poly(j, a_idx))
            gram[i][j] = val
            if val != (1 if i == j else 0):
                return False
    for x, y in point_pairs or _DEFAULT_SPOT_PAIRS:
        a_x = [A.eval_col(i, *x) for i in range(n + 1)]
        b_y = [B.eval_row(j, *y) for j in range(n + 1)]
        out = [[rat(0) for _ in range(q)] for _ in range(p)]
        for i in range(n + 1):
            for j in range(n + 1):
                g = gram[i][j]
                if g == 0:
                    continue
                for a_idx in range(p):
                    for b_idx in range(q):
                        out[a_idx][b_idx] += a_x[i][a_idx] * g * b_y[j][b_idx]
        if out != kernel_eval(A, B, n, x, y):
            return False
    return True


def is_monic_of_grlex_degree(P: PolyMatrix, I: int) -> bool:
    """Leading term of the matrix polynomial is monomial_I times the identity."""
    if P.rows != P.cols:
        return False
    for r in range(P.rows):
        for c in range(P.cols):
            e = P[r, c]
            if r == c:
                if e.grlex_pos != I or e.coeff(I) != 1:
                    return False
            elif e.grlex_pos >= I:
                return False
    return True


def _projection_threshold(I: int, r: int) -> int:
    return I * r + r - 1


def check_projection(A: FamilyA, B: FamilyB, mm: MeasureMatrix, n: int,
                     P: PolyMatrix, points: list | None = None) -> bool:
    """Integral of K^[n](x, .) against dmu P recovers P(x), above the threshold.

    P must be a monic p x p matrix polynomial of grlex-degree I with
    n >= I*p + p - 1; calls below the threshold are precondition errors, not
    identity failures.
    """
    q, p = mm.q, mm.p
    if P.rows != p or P.cols != p:
        raise ValueError(f"projection needs a {p} x {p} matrix polynomial")
    I = P.grlex_pos_max()
    if not is_monic_of_grlex_degree(P, I):
        raise ValueError("P is not monic of a definite grlex degree")
    if n < _projection_threshold(I, p):
        raise ValueError(
            f"n={n} below projection threshold {_projection_threshold(I, p)} for I={I}"
        )
    if n >= min(len(A), len(B)):
        raise DepthError(f"projection index {n} outside family range", required=n + 1)
    # inner[i][a1] = integral of B_i dmu column a1 of P
    inner = []
    for i in range(n + 1):
        row = []
        for a1 in range(p):
            val = rat(0)
            for b_idx in range(q):
                for a_idx in range(p):
                    val += integrate_pair(mm, B.poly(i, b_idx), b_idx, a_idx, P[a_idx, a1])
            row.append(val)
        inner.append(row)
    pts = points or [(rat(1, 2), rat(1, 3)), (rat(-1, 4), rat(2, 5)), (rat(1), rat(-1)),
                     (rat(-2, 3), rat(-1, 5)), (rat(3, 7), rat(5, 8))]
    for x in pts:
        a_x = [A.eval_col(i, *x) for i in range(n + 1)]
        for a0 in range(p):
            for a1 in range(p):
                got = rat(0)
                for i in range(n + 1):
                    if a_x[i][a0] != 0 and inner[i][a1] != 0:
                        got += a_x[i][a0] * inner[i][a1]
                if got != P[a0, a1].eval(*x):
                    return False
    return True


def check_projection_dual(A: FamilyA, B: FamilyB, mm: MeasureMatrix, n: int,
                          P: PolyMatrix, points: list | None = None) -> bool:
    """Dual direction: integral of P dmu K^[n](., y) recovers P(y)."""
    q, p = mm.q, mm.p
    if P.rows != q or P.cols != q:
        raise ValueError(f"dual projection needs a {q} x {q} matrix polynomial")
    I = P.grlex_pos_max()
    if not is_monic_of_grlex_degree(P, I):
        raise ValueError("P is not monic of a definite grlex degree")
    if n < _projection_threshold(I, q):
        raise ValueError(
            f"n={n} below dual projection threshold {_projection_threshold(I, q)} for I={I}"
        )
    if n >= min(len(A), len(B)):
        raise DepthError(f"projection index {n} outside family range", required=n + 1)
    inner = []
    for i in range(n + 1):
        row = []
        for b0 in range(q):
            val = rat(0)
            for b_idx in range(q):
                for a_idx in range(p):
                    val += integrate_pair(mm, P[b0, b_idx], b_idx, a_idx, A.poly(i, a_idx))
            row.append(val)
        inner.append(row)
    pts = points or [(rat(1, 2), rat(1, 3)), (rat(-1, 4), rat(2, 5)), (rat(1), rat(-1)),
                     (rat(-2, 3), rat(-1, 5)), (rat(3, 7), rat(5, 8))]
    for y in pts:
        b_y = [B.eval_row(i, *y) for i in range(n + 1)]
        for b0 in range(q):
            for b1 in range(q):
                got = rat(0)
                for i in range(n + 1):
                    if inner[i][b0] != 0 and b_y[i][b1] != 0:
                        got += inner[i][b0] * b_y[i][b1]
                if got != P[b0, b1].eval(*y):
                    return False
    return True
