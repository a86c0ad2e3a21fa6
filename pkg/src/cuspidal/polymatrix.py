"""Polynomial and rational matrices: Jacobians, determinants, minors, exact rank."""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import List, Sequence

from .polyring import Polynomial, VariableContext


class PolyMatrix:
    """Rectangular row-major matrix of polynomials over one context."""

    __slots__ = ("ctx", "rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[Polynomial]], ctx: VariableContext = None):
        entries = [list(r) for r in entries]
        if ctx is None:
            if not entries or not entries[0]:
                raise ValueError("cannot infer the context of an empty matrix")
            ctx = entries[0][0].ctx
        cols = len(entries[0]) if entries else 0
        for r in entries:
            if len(r) != cols:
                raise ValueError("matrix rows have different lengths")
            for p in r:
                if p.ctx != ctx:
                    raise ValueError("matrix entries belong to different contexts")
        self.ctx = ctx
        self.rows = len(entries)
        self.cols = cols
        self.entries = entries

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i) -> List[Polynomial]:
        return list(self.entries[i])

    def stack(self, other: "PolyMatrix") -> "PolyMatrix":
        if other.rows == 0:
            return self
        if self.rows == 0:
            return other
        if other.cols != self.cols:
            raise ValueError("cannot stack matrices with different column counts")
        return PolyMatrix(self.entries + other.entries, self.ctx)

    def delete_column(self, j) -> "PolyMatrix":
        return PolyMatrix([r[:j] + r[j + 1:] for r in self.entries], self.ctx)

    def evaluate(self, point) -> "RationalMatrix":
        return RationalMatrix([[p.evaluate(point) for p in r] for r in self.entries])

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.entries == other.entries

    def __repr__(self):
        body = "; ".join(", ".join(p.to_str() for p in r) for r in self.entries)
        return f"PolyMatrix[{body}]"


class RationalMatrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence]):
        entries = [[Fraction(x) for x in r] for r in entries]
        cols = len(entries[0]) if entries else 0
        if any(len(r) != cols for r in entries):
            raise ValueError("matrix rows have different lengths")
        self.rows = len(entries)
        self.cols = cols
        self.entries = entries

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def is_symmetric(self) -> bool:
        if self.rows != self.cols:
            return False
        e = self.entries
        return all(e[i][j] == e[j][i] for i in range(self.rows) for j in range(i))

    def __eq__(self, other):
        if isinstance(other, RationalMatrix):
            return self.entries == other.entries
        return self.entries == [[Fraction(x) for x in r] for r in other]

    def tolist(self):
        return [list(r) for r in self.entries]

    def __repr__(self):
        return f"RationalMatrix({[[str(x) for x in r] for r in self.entries]})"


def jacobian(polys: Sequence[Polynomial]) -> PolyMatrix:
    """Rows are gradients: entry (i, j) is the derivative of ``polys[i]`` in variable j."""
    polys = list(polys)
    if not polys:
        raise ValueError("jacobian of an empty list")
    ctx = polys[0].ctx
    return PolyMatrix([p.gradient() for p in polys], ctx)


def _cofactor_det(a: List[List[Polynomial]], ctx) -> Polynomial:
    n = len(a)
    if n == 0:
        return ctx.one()
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    total = ctx.zero()
    for j in range(n):
        if a[0][j].is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in a[1:]]
        term = a[0][j] * _cofactor_det(minor, ctx)
        total = total + term if j % 2 == 0 else total - term
    return total


def _bareiss_det(a: List[List[Polynomial]], ctx) -> Polynomial:
    a = [list(r) for r in a]
    n = len(a)
    sign = 1
    prev = ctx.one()
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ctx.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num.exact_div(prev) if not prev.is_constant() else num.scale(1 / prev.constant_coeff())
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def determinant(m: PolyMatrix) -> Polynomial:
    if m.rows != m.cols:
        raise ValueError(f"determinant of a non-square {m.rows}x{m.cols} matrix")
    if m.rows <= 4:
        return _cofactor_det(m.entries, m.ctx)
    return _bareiss_det(m.entries, m.ctx)


def column_deleted_minors(m: PolyMatrix) -> List[Polynomial]:
    """Maximal minors of a k x (k+1) matrix, the i-th one omitting column i."""
    if m.rows != m.cols - 1:
        raise ValueError(f"expected a k x (k+1) matrix, got {m.rows}x{m.cols}")
    return [determinant(m.delete_column(i)) for i in range(m.cols)]


def _integer_rows(m: RationalMatrix) -> List[List[int]]:
    rows = []
    for r in m.entries:
        den = lcm(*(x.denominator for x in r)) if r else 1
        rows.append([int(x * den) for x in r])
    return rows


def rational_rank(m: RationalMatrix) -> int:
    """Exact rank by fraction-free (Bareiss) elimination on denominator-cleared rows."""
    a = _integer_rows(m)
    nrows, ncols = m.rows, m.cols
    rank = 0
    prev = 1
    for col in range(ncols):
        if rank == nrows:
            break
        piv = next((i for i in range(rank, nrows) if a[i][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, nrows):
            q = a[i][col]
            row_i, row_r = a[i], a[rank]
            for j in range(col + 1, ncols):
                row_i[j] = (row_i[j] * p - q * row_r[j]) // prev
            row_i[col] = 0
        prev = p
        rank += 1
    return rank


def rational_det(m: RationalMatrix) -> Fraction:
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    a = [list(r) for r in m.entries]
    n = m.rows
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        p = a[k][k]
        det *= p
        for i in range(k + 1, n):
            f = a[i][k] / p
            if f:
                for j in range(k + 1, n):
                    a[i][j] -= f * a[k][j]
    return det


def rank_at_point(m: PolyMatrix, point) -> int:
    if len(point) != m.ctx.count:
        raise ValueError(f"point has {len(point)} coordinates, context has {m.ctx.count}")
    return rational_rank(m.evaluate(point))
