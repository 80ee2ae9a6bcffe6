"""Recurrence matrices T_k on truncations and the relations they encode.

T_k = S Lambda_{[q];k} S^-1 has a growing band: row n runs from column
n_minus_big(n, p, k) to a trailing 1 at column n_plus(n, q, k); column n runs
from row n_minus_big(n, q, k) (entry exactly 1 when n avoids J_{q;k}) to a
trailing entry H_{n_plus(n,p,k)} / H_n at row n_plus(n, p, k).

The matrix that multiplies the families by x_k entrywise is the diagonal
conjugate R_k = H^-1 T_k H (same band, H-scaled values):

    x_k B_n = (H_{n+q}/H_n) B_{n+q} + sum_i T_{k;n,i} (H_i/H_n) B_i
    x_k A_n = A_{n+p} + sum_i T_{k;i,n} (H_n/H_i) A_i

with n+q = n_plus(n, q, k) and n+p = n_plus(n, p, k).  T_k itself, as printed
with trailing 1s per row, does not intertwine either family; conjugating by H
is what makes both relations exact.
"""

from __future__ import annotations

from .errors import DepthError
from .families import CheckReport, FamilyA, FamilyB, Violation
from .gaussborel import Factorization
from .rational import rat
from .stepline import in_complement_J, n_minus_big, n_plus


def required_depth(D: int, q: int, p: int) -> int:
    """Factorization depth that fully determines T_1 and T_2 on a D x D window."""
    best = 0
    for k in (1, 2):
        best = max(best, n_plus(D - 1, q, k), n_plus(D - 1, p, k))
    return best + 1


class RecurrenceTruncation:
    """Dense D x D window of T_k with its band descriptors and the H diagonal."""

    __slots__ = ("k", "q", "p", "size", "data", "H")

    def __init__(self, k: int, q: int, p: int, size: int, data: list[list], H: list):
        self.k = k
        self.q = q
        self.p = p
        self.size = size
        self.data = data
        self.H = H

    def __getitem__(self, mn: tuple[int, int]):
        m, n = mn
        return self.data[m][n]

    def row_band(self, n: int) -> tuple[int, int]:
        """[first, last] columns that may be nonzero in row n."""
        return n_minus_big(n, self.p, self.k), n_plus(n, self.q, self.k)

    def col_band(self, n: int) -> tuple[int, int]:
        """[first, last] rows that may be nonzero in column n."""
        return n_minus_big(n, self.q, self.k), n_plus(n, self.p, self.k)


def build_recurrence(F: Factorization, q: int, p: int, k: int, target_size: int) -> RecurrenceTruncation:
    """T_k on a target_size window from the primal form S Lambda_{[q];k} S^-1.

    Entry (m, n) = sum over c <= m of S[m][c] * S^-1[n_plus(c, q, k)][n]; the
    factorization must be deep enough that every shifted index stays inside.
    """
    need = max(n_plus(target_size - 1, q, k), n_plus(target_size - 1, p, k)) + 1
    if F.depth < need:
        raise DepthError(
            f"factorization depth {F.depth} < {need} needed for T_{k} at size "
            f"{target_size}; extend to required_depth = {required_depth(target_size, q, p)}",
            required=required_depth(target_size, q, p),
        )
    S, S_inv = F.S, F.S_inv
    data = []
    for m in range(target_size):
        row = []
        for n in range(target_size):
            acc = rat(0)
            for c in range(m + 1):
                s_mc = S[m][c]
                if s_mc == 0:
                    continue
                shifted = n_plus(c, q, k)
                if shifted >= n:  # S^-1 is lower triangular
                    acc += s_mc * S_inv[shifted][n]
            row.append(acc)
        data.append(row)
    return RecurrenceTruncation(k, q, p, target_size, data, list(F.H))


def dual_recurrence(F: Factorization, q: int, p: int, k: int, target_size: int) -> list[list]:
    """T_k from the dual form H Sbar^-T Lambda^T_{[p];k} Sbar^T H^-1.

    Entry (m, n) = (H_m / H_n) * sum over d <= n of Sbar^-1[n_plus(d, p, k)][m]
    * Sbar[n][d].
    """
    need = max(n_plus(target_size - 1, q, k), n_plus(target_size - 1, p, k)) + 1
    if F.depth < need:
        raise DepthError(
            f"factorization depth {F.depth} < {need} needed for dual T_{k}",
            required=required_depth(target_size, q, p),
        )
    Sbar, Sbar_inv, H = F.Sbar, F.Sbar_inv, F.H
    out = []
    for m in range(target_size):
        row = []
        for n in range(target_size):
            acc = rat(0)
            for d in range(n + 1):
                s_nd = Sbar[n][d]
                if s_nd == 0:
                    continue
                shifted = n_plus(d, p, k)
                if shifted >= m:  # Sbar^-1 is lower triangular
                    acc += Sbar_inv[shifted][m] * s_nd
            row.append(acc * H[m] / H[n])
        out.append(row)
    return out


def check_dual_form(T: RecurrenceTruncation, F: Factorization) -> bool:
    dual = dual_recurrence(F, T.q, T.p, T.k, T.size)
    return all(
        T.data[m][n] == dual[m][n] for m in range(T.size) for n in range(T.size)
    )


def validate_band(T: RecurrenceTruncation) -> CheckReport:
    """Zero pattern, trailing 1s, boxed H-ratios and leading column 1s of T_k."""
    rep = CheckReport(f"band_T{T.k}")
    k, q, p, D = T.k, T.q, T.p, T.size
    for n in range(D):
        first, last = T.row_band(n)
        for c in range(D):
            if c < first or c > last:
                if T.data[n][c] != 0:
                    rep.violations.append(
                        Violation("band", (T.k, "row", n, c), f"outside band: {T.data[n][c]}")
                    )
                rep.checked += 1
        if last < D:
            if T.data[n][last] != 1:
                rep.violations.append(
                    Violation("band", (T.k, "row", n, last), f"trailing entry {T.data[n][last]} != 1")
                )
            rep.checked += 1
        if in_complement_J(n, p, k):
            # first = n - p*F_k^-(n/p) here; boxed value H_n / H_first.
            if first < D:
                want = T.H[n] / T.H[first]
                if T.data[n][first] != want:
                    rep.violations.append(
                        Violation("band", (T.k, "row", n, first), f"{T.data[n][first]} != H ratio {want}")
                    )
                rep.checked += 1
    for n in range(D):
        first, last = T.col_band(n)
        for r in range(D):
            if r < first or r > last:
                if T.data[r][n] != 0:
                    rep.violations.append(
                        Violation("band", (T.k, "col", n, r), f"outside band: {T.data[r][n]}")
                    )
                rep.checked += 1
        if in_complement_J(n, q, k) and first < D:
            if T.data[first][n] != 1:
                rep.violations.append(
                    Violation("band", (T.k, "col", n, first), f"leading entry {T.data[first][n]} != 1")
                )
            rep.checked += 1
        if last < D:
            want = T.H[last] / T.H[n]
            if T.data[last][n] != want:
                rep.violations.append(
                    Violation("band", (T.k, "col", n, last), f"{T.data[last][n]} != H ratio {want}")
                )
            rep.checked += 1
    return rep


def recurrence_n_max(T: RecurrenceTruncation, a_count: int, b_count: int) -> int:
    """Largest n (exclusive) for which both entrywise relations are determined."""
    n = 0
    while True:
        top_b = n_plus(n, T.q, T.k)
        top_a = n_plus(n, T.p, T.k)
        if top_b >= b_count or top_a >= a_count or top_b >= T.size or top_a >= T.size:
            return n
        n += 1


def check_recurrences(
    T: RecurrenceTruncation, A: FamilyA, B: FamilyB, points: list[tuple]
) -> CheckReport:
    """Entrywise recurrences for both families at the given points, exactly.

    Uses the H-conjugated coefficients (see module docstring); the sums run
    over the band descriptors, and validate_band separately certifies that
    everything outside the band vanishes.
    """
    k, q, p, H = T.k, T.q, T.p, T.H
    rep = CheckReport(f"recurrence_T{k}")
    n_max = recurrence_n_max(T, len(A), len(B))
    if n_max == 0:
        rep.skipped.append("window too small for any recurrence row")
        return rep
    for x1, x2 in points:
        xk = x1 if k == 1 else x2
        b_vals = [B.eval_row(n, x1, x2) for n in range(max(n_plus(m, q, k) for m in range(n_max)) + 1)]
        a_vals = [A.eval_col(n, x1, x2) for n in range(max(n_plus(m, p, k) for m in range(n_max)) + 1)]
        for n in range(n_max):
            top_b = n_plus(n, q, k)
            lo_b = n_minus_big(n, p, k)
            top_a = n_plus(n, p, k)
            lo_a = n_minus_big(n, q, k)
            for b_idx in range(q):
                rhs = (H[top_b] / H[n]) * b_vals[top_b][b_idx]
                for i in range(lo_b, top_b):
                    t = T.data[n][i]
                    if t != 0:
                        rhs += t * (H[i] / H[n]) * b_vals[i][b_idx]
                if xk * b_vals[n][b_idx] != rhs:
                    rep.violations.append(
                        Violation("recurrence", (k, "B", n, b_idx, str(x1), str(x2)),
                                  f"residual {xk * b_vals[n][b_idx] - rhs}")
                    )
                rep.checked += 1
            for a_idx in range(p):
                rhs = a_vals[top_a][a_idx]
                for i in range(lo_a, top_a):
                    t = T.data[i][n]
                    if t != 0:
                        rhs += t * (H[n] / H[i]) * a_vals[i][a_idx]
                if xk * a_vals[n][a_idx] != rhs:
                    rep.violations.append(
                        Violation("recurrence", (k, "A", n, a_idx, str(x1), str(x2)),
                                  f"residual {xk * a_vals[n][a_idx] - rhs}")
                    )
                rep.checked += 1
    return rep


def check_recurrence_matrix(T: RecurrenceTruncation, A: FamilyA, B: FamilyB) -> CheckReport:
    """Coefficient-space restatement: R_k shifts the stacked coefficient vectors.

    Row n of R_k applied to the B rows must equal x_k * B_n coefficientwise,
    and column n applied to the A columns must equal x_k * A_n; checked on
    every row/column whose band is inside the truncation.
    """
    k, q, p, H = T.k, T.q, T.p, T.H
    rep = CheckReport(f"recurrence_matrix_T{k}")
    n_max = recurrence_n_max(T, len(A), len(B))
    for n in range(n_max):
        top_b = n_plus(n, q, k)
        lo_b = n_minus_big(n, p, k)
        for b_idx in range(q):
            want = B.poly(n, b_idx).mul_by_variable(k)
            got = B.poly(top_b, b_idx).mul_scalar(H[top_b] / H[n])
            for i in range(lo_b, top_b):
                t = T.data[n][i]
                if t != 0:
                    got = got.add(B.poly(i, b_idx).mul_scalar(t * H[i] / H[n]))
            if want != got:
                rep.violations.append(
                    Violation("recurrence_matrix", (k, "B", n, b_idx), "coefficient mismatch")
                )
            rep.checked += 1
        top_a = n_plus(n, p, k)
        lo_a = n_minus_big(n, q, k)
        for a_idx in range(p):
            want = A.poly(n, a_idx).mul_by_variable(k)
            got = A.poly(top_a, a_idx)
            for i in range(lo_a, top_a):
                t = T.data[i][n]
                if t != 0:
                    got = got.add(A.poly(i, a_idx).mul_scalar(t * H[n] / H[i]))
            if want != got:
                rep.violations.append(
                    Violation("recurrence_matrix", (k, "A", n, a_idx), "coefficient mismatch")
                )
            rep.checked += 1
    return rep
