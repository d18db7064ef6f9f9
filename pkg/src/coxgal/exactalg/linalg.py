"""Exact dense linear algebra over Q and cyclotomic fields.

Rational matrices are cleared to integers row by row and reduced with
fraction-free (Bareiss) elimination; matrices with genuinely cyclotomic
entries fall back to ordinary Gauss-Jordan elimination over the field.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .cyclotomic import Cyclotomic, simplify

__all__ = ["ExactMatrix", "echelon", "kernel_basis", "rank", "solve_dense", "is_zero"]


def is_zero(x) -> bool:
    return not x


def _all_rational(rows) -> bool:
    for row in rows:
        for x in row:
            if isinstance(x, Cyclotomic) and not x.is_rational():
                return False
    return True


def _integer_rows(rows) -> list[list[int]]:
    out = []
    for row in rows:
        vals = [Fraction(simplify(x)) for x in row]
        den = 1
        for v in vals:
            den = math.lcm(den, v.denominator)
        out.append([int(v * den) for v in vals])
    return out


def _bareiss(rows: list[list[int]], ncols: int):
    """Fraction-free row echelon form of an integer matrix (in place)."""
    nrows = len(rows)
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        prow = rows[r]
        for i in range(r + 1, nrows):
            row = rows[i]
            f = row[c]
            if f:
                for j in range(c + 1, ncols):
                    row[j] = (piv * row[j] - f * prow[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    row[j] = (piv * row[j]) // prev
            row[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def _gauss(rows, ncols: int):
    """Row echelon form over a field (generic scalars)."""
    rows = [list(r) for r in rows]
    nrows = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c].inverse() if isinstance(rows[r][c], Cyclotomic) else Fraction(1) / rows[r][c]
        prow = [simplify(x * inv) for x in rows[r]]
        rows[r] = prow
        for i in range(r + 1, nrows):
            f = rows[i][c]
            if f:
                row = rows[i]
                for j in range(c, ncols):
                    if prow[j]:
                        row[j] = simplify(row[j] - f * prow[j])
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def echelon(rows, ncols: int | None = None):
    """Row echelon form and pivot columns; entries may be any exact scalars."""
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if _all_rational(rows):
        return _bareiss(_integer_rows(rows), ncols)
    return _gauss(rows, ncols)


def rank(rows, ncols: int | None = None) -> int:
    return len(echelon(rows, ncols)[1])


def _back_substitute(ech, pivots, ncols, fixed: dict[int, object], rhs=None):
    x = [Fraction(0)] * ncols
    for c, v in fixed.items():
        x[c] = v
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        row = ech[r]
        s = rhs[r] if rhs is not None else 0
        for j in range(c + 1, ncols):
            if row[j] and x[j]:
                s = s - row[j] * x[j]
        piv = row[c]
        if isinstance(piv, Cyclotomic):
            x[c] = simplify(s * piv.inverse())
        elif isinstance(s, Cyclotomic):
            x[c] = simplify(s / Fraction(piv))
        else:
            x[c] = Fraction(s) / piv
    return [simplify(v) for v in x]


def kernel_basis(rows, ncols: int | None = None) -> list[list]:
    """Basis of the right null space {v : M v = 0}."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    ech, pivots = echelon(rows, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        fixed = {g: Fraction(int(g == f)) for g in range(ncols) if g not in pivset}
        basis.append(_back_substitute(ech, pivots, ncols, fixed))
    return basis


def solve_dense(rows, rhs):
    """One solution of M x = rhs, or None when the system is inconsistent."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    ech, pivots = echelon(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    pivset = set(pivots)
    fixed = {g: Fraction(0) for g in range(ncols) if g not in pivset}
    sol_rhs = [row[ncols] for row in ech]
    ech_lhs = [row[:ncols] for row in ech]
    return _back_substitute(ech_lhs, pivots, ncols, fixed, sol_rhs)


class ExactMatrix:
    """Dense matrix of exact scalars (Fraction or Cyclotomic)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries, cols: int | None = None):
        self.entries = [[simplify(x) for x in row] for row in entries]
        self.rows = len(self.entries)
        self.cols = cols if cols is not None else (len(self.entries[0]) if self.entries else 0)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls([[Fraction(0)] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)], n)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and all(
            a == b for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb)
        )

    def is_zero(self) -> bool:
        return all(not x for row in self.entries for x in row)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)], self.rows)

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            cols_b = [[other.entries[k][j] for k in range(other.rows)] for j in range(other.cols)]
            return ExactMatrix(
                [[_dot(row, col) for col in cols_b] for row in self.entries], other.cols
            )
        return [_dot(row, other) for row in self.entries]

    def __add__(self, other):
        return ExactMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)], self.cols
        )

    def __sub__(self, other):
        return ExactMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)], self.cols
        )

    def scale(self, c) -> "ExactMatrix":
        return ExactMatrix([[c * a for a in row] for row in self.entries], self.cols)

    def rank(self) -> int:
        return rank(self.entries, self.cols)

    def kernel_basis(self) -> list[list]:
        basis = kernel_basis(self.entries, self.cols)
        # self-check: rank + nullity = cols
        assert self.rank() + len(basis) == self.cols
        return basis

    def solve(self, rhs):
        return solve_dense(self.entries, rhs)

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols})"


def _dot(a, b):
    s = Fraction(0)
    for x, y in zip(a, b):
        if x and y:
            s = s + x * y
    return simplify(s)
