"""Exact linear algebra over Fraction.

Incremental reduced-row-echelon systems (for tie equalities of dual
cells and dimension computations) and a small two-phase simplex used
only for strict-feasibility questions on a handful of variables.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


class AffineSystem:
    """A consistent-or-not system of affine equations in n unknowns.

    Rows are kept in reduced row-echelon form: each stored row is
    (pivot_col, vec) with vec of length n+1 (coefficients then rhs),
    vec[pivot_col] == 1, and zeros in all other rows' pivot columns.
    """

    __slots__ = ("n", "rows", "consistent")

    def __init__(self, n: int):
        self.n = n
        self.rows: list[tuple[int, list[Fraction]]] = []
        self.consistent = True

    def copy(self) -> "AffineSystem":
        out = AffineSystem(self.n)
        out.rows = [(p, vec[:]) for p, vec in self.rows]
        out.consistent = self.consistent
        return out

    def add_equation(self, coeffs: Sequence, rhs) -> bool:
        """Add coeffs . x == rhs; returns False iff now inconsistent."""
        if not self.consistent:
            return False
        vec = [Fraction(c) for c in coeffs] + [Fraction(rhs)]
        for p, row in self.rows:
            f = vec[p]
            if f:
                for j in range(self.n + 1):
                    vec[j] -= f * row[j]
        pivot = next((j for j in range(self.n) if vec[j]), None)
        if pivot is None:
            if vec[self.n]:
                self.consistent = False
                return False
            return True
        inv = ONE / vec[pivot]
        vec = [c * inv for c in vec]
        for p, row in self.rows:
            f = row[pivot]
            if f:
                for j in range(self.n + 1):
                    row[j] -= f * vec[j]
        self.rows.append((pivot, vec))
        self.rows.sort(key=lambda r: r[0])
        return True

    def rank(self) -> int:
        return len(self.rows)

    def solution_dim(self) -> int:
        """Dimension of the affine solution set (-1 if empty)."""
        return self.n - len(self.rows) if self.consistent else -1

    def merged_with(self, other: "AffineSystem") -> "AffineSystem":
        out = self.copy()
        for _, vec in other.rows:
            if not out.add_equation(vec[:-1], vec[-1]):
                break
        return out

    def solve_unique(self) -> Optional[list[Fraction]]:
        if not self.consistent or len(self.rows) < self.n:
            return None
        x = [ZERO] * self.n
        for p, vec in self.rows:
            x[p] = vec[self.n]
        return x

    def particular_and_directions(self) -> tuple[list[Fraction], list[list[Fraction]]]:
        """A particular solution plus a basis of the homogeneous space."""
        if not self.consistent:
            raise ValueError("inconsistent system")
        pivots = {p for p, _ in self.rows}
        part = [ZERO] * self.n
        for p, vec in self.rows:
            part[p] = vec[self.n]
        dirs = []
        for f in range(self.n):
            if f in pivots:
                continue
            d = [ZERO] * self.n
            d[f] = ONE
            for p, vec in self.rows:
                d[p] = -vec[f]
            dirs.append(d)
        return part, dirs


def matrix_rank(vectors: Sequence[Sequence]) -> int:
    if not vectors:
        return 0
    sys = AffineSystem(len(vectors[0]))
    for v in vectors:
        sys.add_equation(v, 0)
    return sys.rank()


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), ZERO)


def _simplex_max(A: list[list[Fraction]], b: list[Fraction], c: list[Fraction],
                 stop_if_above: Optional[Fraction] = None):
    """Maximize c.x subject to A.x <= b, x >= 0 (b may be negative).

    Two-phase dense tableau simplex with Bland's rule.  Returns
    (status, x) with status in {"optimal", "unbounded", "infeasible"};
    if stop_if_above is given, returns early with status "stopped" as
    soon as a feasible basic solution with objective > stop_if_above is
    at hand.  Problem sizes here are tiny; clarity over speed.
    """
    m = len(A)
    nv = len(c)
    # columns: structural nv, slack m, artificial (as needed), then rhs
    art_rows = [i for i in range(m) if b[i] < 0]
    na = len(art_rows)
    ncols = nv + m + na
    T = []
    for i in range(m):
        row = [Fraction(x) for x in A[i]] + [ZERO] * (m + na) + [Fraction(b[i])]
        row[nv + i] = ONE
        T.append(row)
    basis = [nv + i for i in range(m)]
    for k, i in enumerate(art_rows):
        for j in range(ncols + 1):
            T[i][j] = -T[i][j]
        T[i][nv + m + k] = ONE
        basis[i] = nv + m + k

    def solve_phase(obj: list[Fraction], stop_above: Optional[Fraction], ncand: int):
        while True:
            # reduced costs via basis multipliers (recomputed; sizes are tiny)
            y = [obj[basis[i]] for i in range(m)]
            if stop_above is not None:
                val = sum((y[i] * T[i][ncols] for i in range(m)), ZERO)
                if val > stop_above:
                    return "stopped"
            enter = -1
            for j in range(ncand):
                if j in basis:
                    continue
                rc = obj[j] - sum((y[i] * T[i][j] for i in range(m)), ZERO)
                if rc > 0:
                    enter = j
                    break  # Bland: first improving column
            if enter < 0:
                return "optimal"
            leave = -1
            best = None
            for i in range(m):
                if T[i][enter] > 0:
                    ratio = T[i][ncols] / T[i][enter]
                    if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                        best = ratio
                        leave = i
            if leave < 0:
                return "unbounded"
            piv = T[leave][enter]
            T[leave] = [x / piv for x in T[leave]]
            for i in range(m):
                if i != leave and T[i][enter]:
                    f = T[i][enter]
                    T[i] = [x - f * p for x, p in zip(T[i], T[leave])]
            basis[leave] = enter

    if na:
        obj1 = [ZERO] * ncols
        for k in range(na):
            obj1[nv + m + k] = Fraction(-1)
        solve_phase(obj1, None, ncols)
        val = sum((obj1[basis[i]] * T[i][ncols] for i in range(m)), ZERO)
        if val < 0:
            return "infeasible", None
        # drive any artificial still in the basis out or confirm its row is zero
        for i in range(m):
            if basis[i] >= nv + m:
                enter = next((j for j in range(nv + m)
                              if j not in basis and T[i][j] != 0), None)
                if enter is None:
                    continue  # redundant row
                piv = T[i][enter]
                T[i] = [x / piv for x in T[i]]
                for r in range(m):
                    if r != i and T[r][enter]:
                        f = T[r][enter]
                        T[r] = [x - f * p for x, p in zip(T[r], T[i])]
                basis[i] = enter

    # artificial columns may never re-enter once phase 1 is done
    obj2 = [Fraction(x) for x in c] + [ZERO] * (m + na)
    status = solve_phase(obj2, stop_if_above, nv + m)
    x = [ZERO] * nv
    for i in range(m):
        if basis[i] < nv:
            x[basis[i]] = T[i][ncols]
    if status == "unbounded":
        return "unbounded", x
    return ("optimal" if status == "optimal" else "stopped"), x


def strict_solution(n: int, equalities: Sequence[tuple], strict_ineqs: Sequence[tuple]) -> Optional[list[Fraction]]:
    """A point x with eq.x == rhs for all equalities and a.x < rhs for
    every strict inequality, or None if no such point exists.

    Exact: reduces the equalities first, then maximizes a slack margin
    over the free coordinates with the simplex above.
    """
    sys = AffineSystem(n)
    for coeffs, rhs in equalities:
        if not sys.add_equation(coeffs, rhs):
            return None
    part, dirs = sys.particular_and_directions()
    k = len(dirs)
    rows = []
    rhs2 = []
    for coeffs, rhs in strict_ineqs:
        coeffs = [Fraction(c) for c in coeffs]
        base = _dot(coeffs, part)
        rows.append([_dot(coeffs, d) for d in dirs])
        rhs2.append(Fraction(rhs) - base)
    if k == 0:
        if all(r > 0 for r in rhs2):
            return part
        return None
    if not rows:
        return part
    # variables: u+ (k), u- (k), margin eps; maximize eps, eps <= 1
    A = []
    b = []
    for row, r in zip(rows, rhs2):
        A.append(row + [-x for x in row] + [ONE])
        b.append(r)
    A.append([ZERO] * (2 * k) + [ONE])
    b.append(ONE)
    cobj = [ZERO] * (2 * k) + [ONE]
    status, x = _simplex_max(A, b, cobj, stop_if_above=ZERO)
    if status == "infeasible":
        return None
    eps = x[2 * k]
    if eps <= 0:
        return None
    u = [x[i] - x[k + i] for i in range(k)]
    point = part[:]
    for f, d in enumerate(dirs):
        for j in range(n):
            point[j] += u[f] * d[j]
    return point
