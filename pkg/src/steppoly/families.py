"""The biorthogonal polynomial families A and B and their exact checks.

B = H^-1 S X_{[q]} (row n is a q-tuple; component b draws its coefficient at
monomial position K from column K*q + b of H^-1 S) and A = X^T_{[p]} Sbar^T
(column n is a p-tuple; component a draws from column K*p + a of Sbar).
Component indices are 0-based throughout the code.

All verification here goes through the moment oracle: each orthogonality
residual is expanded as a finite rational combination of moments and must be
exactly zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bipoly import BiPoly
from .gaussborel import Factorization
from .measures import MeasureMatrix
from .rational import ZERO, rat
from .stepline import pair_of


class FamilyB:
    """Rows of B: for each n a q-tuple of BiPoly."""

    def __init__(self, q: int, rows: list[list[BiPoly]]):
        self.q = q
        self.rows = rows

    def __len__(self) -> int:
        return len(self.rows)

    def poly(self, n: int, b_idx: int) -> BiPoly:
        return self.rows[n][b_idx]

    def eval_row(self, n: int, x1, x2) -> list:
        return [pol.eval(x1, x2) for pol in self.rows[n]]


class FamilyA:
    """Columns of A: for each n a p-tuple of BiPoly."""

    def __init__(self, p: int, cols: list[list[BiPoly]]):
        self.p = p
        self.cols = cols

    def __len__(self) -> int:
        return len(self.cols)

    def poly(self, n: int, a_idx: int) -> BiPoly:
        return self.cols[n][a_idx]

    def eval_col(self, n: int, x1, x2) -> list:
        return [pol.eval(x1, x2) for pol in self.cols[n]]


def extract_families(F: Factorization, q: int, p: int) -> tuple[FamilyA, FamilyB]:
    """Read both families off the factorization of a depth-D truncation."""
    D = F.depth
    b_rows = []
    for n in range(D):
        hn = F.H[n]
        comps = []
        for b_idx in range(q):
            coeffs = {}
            K = 0
            while K * q + b_idx <= n:
                c = F.S[n][K * q + b_idx]
                if c != 0:
                    coeffs[K] = c / hn
                K += 1
            comps.append(BiPoly(coeffs))
        b_rows.append(comps)
    a_cols = []
    for n in range(D):
        comps = []
        for a_idx in range(p):
            coeffs = {}
            K = 0
            while K * p + a_idx <= n:
                c = F.Sbar[n][K * p + a_idx]
                if c != 0:
                    coeffs[K] = c
                K += 1
            comps.append(BiPoly(coeffs))
        a_cols.append(comps)
    return FamilyA(p, a_cols), FamilyB(q, b_rows)


def degree_bound(n: int, comp_idx: int, r: int) -> int:
    """Grlex-position bound for component comp_idx (0-based) of family row n.

    Equals floor((n - comp_idx) / r); -1 means the component must vanish.
    """
    return (n - comp_idx) // r if n >= comp_idx else -1


@dataclass
class Violation:
    check: str
    where: tuple
    detail: str


@dataclass
class CheckReport:
    name: str
    violations: list[Violation] = field(default_factory=list)
    checked: int = 0
    skipped: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_degree_structure(A: FamilyA, B: FamilyB, q: int, p: int) -> CheckReport:
    """Degree bounds for every component, equality and monicity on the diagonal.

    B_n^(b) has grlex-pos <= floor((n - b)/q) with equality and nonzero leading
    coefficient when n = M q + b; A_n^(a) has grlex-pos <= floor((n - a)/p)
    with equality and leading coefficient exactly 1 when n = M p + a.
    """
    rep = CheckReport("degree")
    for n in range(len(B)):
        for b_idx in range(q):
            bound = degree_bound(n, b_idx, q)
            pol = B.poly(n, b_idx)
            if pol.grlex_pos > bound:
                rep.violations.append(
                    Violation("degree", ("B", n, b_idx), f"grlex_pos {pol.grlex_pos} > bound {bound}")
                )
            if n % q == b_idx:
                if pol.grlex_pos != bound or pol.leading_coeff() == 0:
                    rep.violations.append(
                        Violation("degree", ("B", n, b_idx), "diagonal leading coefficient missing")
                    )
            rep.checked += 1
    for n in range(len(A)):
        for a_idx in range(p):
            bound = degree_bound(n, a_idx, p)
            pol = A.poly(n, a_idx)
            if pol.grlex_pos > bound:
                rep.violations.append(
                    Violation("degree", ("A", n, a_idx), f"grlex_pos {pol.grlex_pos} > bound {bound}")
                )
            if n % p == a_idx:
                if pol.grlex_pos != bound or pol.leading_coeff() != 1:
                    rep.violations.append(
                        Violation("degree", ("A", n, a_idx), "diagonal entry not monic at its bound")
                    )
            rep.checked += 1
    return rep


def integrate_pair(mm: MeasureMatrix, left: BiPoly, b_idx: int, a_idx: int, right: BiPoly):
    """Exact integral of left(x) * right(x) against measure entry (b_idx, a_idx)."""
    measure = mm.entry(b_idx, a_idx)
    total = rat(0)
    for K1, c1 in left.coeffs.items():
        i1, j1, _ = pair_of(K1)
        for K2, c2 in right.coeffs.items():
            i2, j2, _ = pair_of(K2)
            total += c1 * c2 * measure.moment((i1 - j1) + (i2 - j2), j1 + j2)
    return total


def check_orthogonality(A: FamilyA, B: FamilyB, mm: MeasureMatrix) -> CheckReport:
    """Both one-sided orthogonality systems, expanded through the moment oracle.

    A side: sum over a of the integral of monomial_K against (b, a) times
    A_n^(a) vanishes whenever K q + b < n.  B side: sum over b of the integral
    of B_n^(b) against (b, a) times monomial_K vanishes whenever K p + a < n.
    """
    q, p = mm.q, mm.p
    rep = CheckReport("orthogonality")
    for n in range(len(A)):
        for b_idx in range(q):
            K = 0
            while K * q + b_idx < n:
                mono = BiPoly.monomial(K)
                resid = rat(0)
                for a_idx in range(p):
                    resid += integrate_pair(mm, mono, b_idx, a_idx, A.poly(n, a_idx))
                if resid != 0:
                    rep.violations.append(
                        Violation("orthogonality", ("A", n, b_idx, K), f"residual {resid}")
                    )
                rep.checked += 1
                K += 1
    for n in range(len(B)):
        for a_idx in range(p):
            K = 0
            while K * p + a_idx < n:
                mono = BiPoly.monomial(K)
                resid = rat(0)
                for b_idx in range(q):
                    resid += integrate_pair(mm, B.poly(n, b_idx), b_idx, a_idx, mono)
                if resid != 0:
                    rep.violations.append(
                        Violation("orthogonality", ("B", n, a_idx, K), f"residual {resid}")
                    )
                rep.checked += 1
                K += 1
    return rep


def check_biorthogonality(A: FamilyA, B: FamilyB, mm: MeasureMatrix) -> CheckReport:
    """Pairing of the families against the measure matrix is exactly the identity."""
    q, p = mm.q, mm.p
    rep = CheckReport("biorthogonality")
    count = min(len(A), len(B))
    for m in range(count):
        for n in range(count):
            val = rat(0)
            for b_idx in range(q):
                for a_idx in range(p):
                    val += integrate_pair(mm, B.poly(m, b_idx), b_idx, a_idx, A.poly(n, a_idx))
            expected = rat(1) if m == n else ZERO
            if val != expected:
                rep.violations.append(
                    Violation("biorthogonality", (m, n), f"pairing {val} != {expected}")
                )
            rep.checked += 1
    return rep
