"""Finite-dimensional quotient algebras, trace forms and exact signatures."""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .groebner import GroebnerBasis, normal_form, standard_monomials
from .polymatrix import RationalMatrix, rational_rank
from .polyring import Polynomial


class QuotientAlgebra:
    """``Q[x]/J`` for a zero-dimensional ideal given by its reduced Groebner basis.

    Elements are represented as coordinate lists in the standard monomial
    basis. Normal forms of monomials are cached and built up one variable at a
    time, so ``nf(x^a)`` costs a few matrix-vector products once its divisors
    are known.
    """

    def __init__(self, gb: GroebnerBasis):
        self.gb = gb
        self.ctx = gb.ctx
        self.basis: List[tuple] = standard_monomials(gb)
        self.dim = len(self.basis)
        self.index = {m: i for i, m in enumerate(self.basis)}
        self._mono_nf: Dict[tuple, List[Fraction]] = {}
        self._trace_of_basis = None
        self._shift_cache: Dict[tuple, List[Fraction]] = {}

    # -- coordinates -------------------------------------------------------
    def coords(self, p: Polynomial) -> List[Fraction]:
        """Coordinates of the residue class of ``p``."""
        out = [Fraction(0)] * self.dim
        for e, c in p.terms.items():
            v = self.monomial_coords(e)
            for k, x in enumerate(v):
                if x:
                    out[k] += c * x
        return out

    def monomial_coords(self, e: tuple) -> List[Fraction]:
        cached = self._mono_nf.get(e)
        if cached is not None:
            return cached
        i = self.index.get(e)
        if i is not None:
            v = [Fraction(0)] * self.dim
            v[i] = Fraction(1)
        else:
            # e = x_j * lower; nf(e) = sum_k c_k nf(x_j * b_k) where nf(lower) = sum_k c_k b_k
            j = next(k for k in range(len(e)) if e[k])
            lower = e[:j] + (e[j] - 1,) + e[j + 1:]
            v = [Fraction(0)] * self.dim
            for k, x in enumerate(self.monomial_coords(lower)):
                if x:
                    for t, y in enumerate(self._shift(j, k)):
                        if y:
                            v[t] += x * y
        self._mono_nf[e] = v
        return v

    def _shift(self, j, k):
        """Coordinates of x_j * b_k, reduced directly against the basis."""
        key = (j, k)
        v = self._shift_cache.get(key)
        if v is None:
            b = self.basis[k]
            e = b[:j] + (b[j] + 1,) + b[j + 1:]
            v = [Fraction(0)] * self.dim
            i = self.index.get(e)
            if i is not None:
                v[i] = Fraction(1)
            else:
                for m, c in normal_form(self.ctx.monomial(e), self.gb).terms.items():
                    v[self.index[m]] = c
            self._shift_cache[key] = v
        return v

    def element(self, coords: Sequence) -> Polynomial:
        return Polynomial(self.ctx, {m: Fraction(c) for m, c in zip(self.basis, coords) if c})

    def product_coords(self, a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
        out = [Fraction(0)] * self.dim
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if not y:
                    continue
                xy = x * y
                prod = tuple([s + t for s, t in zip(self.basis[i], self.basis[j])])
                for k, z in enumerate(self.monomial_coords(prod)):
                    if z:
                        out[k] += xy * z
        return out

    # -- linear maps --------------------------------------------------------
    def multiplication_matrix(self, g: Polynomial) -> RationalMatrix:
        """Matrix of ``a -> g*a``; column k holds the image of the k-th basis monomial."""
        gc = self.coords(g)
        cols = []
        for k in range(self.dim):
            ek = [Fraction(0)] * self.dim
            ek[k] = Fraction(1)
            cols.append(self.product_coords(gc, ek))
        return RationalMatrix([[cols[k][i] for k in range(self.dim)] for i in range(self.dim)])

    def trace(self, g: Polynomial) -> Fraction:
        """Trace of multiplication by ``g``: sum over k of the b_k-coefficient of nf(g*b_k)."""
        total = Fraction(0)
        for e, c in g.terms.items():
            for k, b in enumerate(self.basis):
                total += c * self.monomial_coords(tuple([s + t for s, t in zip(e, b)]))[k]
        return total

    def _basis_traces(self) -> List[Fraction]:
        if self._trace_of_basis is None:
            self._trace_of_basis = [self.trace(self.ctx.monomial(b)) for b in self.basis]
        return self._trace_of_basis

    def trace_coords(self, a: Sequence[Fraction]) -> Fraction:
        t = self._basis_traces()
        return sum((x * y for x, y in zip(a, t) if x), Fraction(0))

    def theta_matrix(self, delta: Polynomial = None) -> RationalMatrix:
        """Gram matrix of the form ``a -> trace(delta * a^2)`` in the standard basis."""
        t = self._basis_traces()
        if delta is None:
            weights = t
        else:
            # weights[k] = trace(delta * b_k)
            dc = self.coords(delta)
            weights = [self.trace_coords(self.product_coords(dc, self._unit(k))) for k in range(self.dim)]
        D = self.dim
        rows = [[Fraction(0)] * D for _ in range(D)]
        for i in range(D):
            for j in range(i, D):
                prod = tuple([s + u for s, u in zip(self.basis[i], self.basis[j])])
                val = sum((x * w for x, w in zip(self.monomial_coords(prod), weights) if x), Fraction(0))
                rows[i][j] = rows[j][i] = val
        return RationalMatrix(rows)

    def _unit(self, k):
        v = [Fraction(0)] * self.dim
        v[k] = Fraction(1)
        return v


# -- signatures -------------------------------------------------------------

def charpoly(m: RationalMatrix) -> List[Fraction]:
    """Characteristic polynomial ``det(t*I - m)``, coefficients from t^0 up to t^n.

    Reduces to upper Hessenberg form by exact similarity transforms, then runs
    the usual Hessenberg recurrence.
    """
    n = m.rows
    if m.cols != n:
        raise ValueError("characteristic polynomial of a non-square matrix")
    a = [list(r) for r in m.entries]
    for k in range(1, n - 1):
        piv = next((i for i in range(k, n) if a[i][k - 1]), None)
        if piv is None:
            continue
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            for r in a:
                r[k], r[piv] = r[piv], r[k]
        p = a[k][k - 1]
        for i in range(k + 1, n):
            f = a[i][k - 1] / p
            if not f:
                continue
            ri, rk = a[i], a[k]
            for j in range(k - 1, n):
                if rk[j]:
                    ri[j] -= f * rk[j]
            for r in a:
                if r[i]:
                    r[k] += f * r[i]
    # p_i(t) = det of the leading i x i block of (tI - a)
    polys: List[List[Fraction]] = [[Fraction(1)]]
    for i in range(n):
        # p_{i+1} = (t - a_ii) p_i - sum_{j<i} a_ji * prod_{k=j+1..i} a_{k,k-1} * p_j
        nxt = [Fraction(0)] + polys[i]
        for d, c in enumerate(polys[i]):
            nxt[d] -= a[i][i] * c
        prod = Fraction(1)
        for j in range(i - 1, -1, -1):
            prod *= a[j + 1][j]
            if not prod:
                break
            coef = a[j][i] * prod
            if coef:
                for d, c in enumerate(polys[j]):
                    nxt[d] -= coef * c
        polys.append(nxt)
    return polys[n]


def _sign_changes(seq) -> int:
    signs = [1 if c > 0 else -1 for c in seq if c]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def inertia(m: RationalMatrix) -> Tuple[int, int, int]:
    """(positive, negative, zero) eigenvalue counts of a symmetric rational matrix.

    Symmetric Gaussian elimination: a nonzero diagonal pivot contributes its
    sign; if the remaining diagonal is zero but some off-diagonal entry b is
    not, the block [[0, b], [b, 0]] contributes one of each. Schur complement
    entries are ratios of minors, so coefficient growth stays bounded.
    """
    if not m.is_symmetric():
        raise ValueError("inertia of a non-symmetric matrix")
    a = [list(r) for r in m.entries]
    n = len(a)
    pos = neg = 0
    while a:
        k = len(a)
        diag = [i for i in range(k) if a[i][i]]
        if diag:
            i = min(diag, key=lambda t: _size(a[t][t]))
            d = a[i][i]
            if d > 0:
                pos += 1
            else:
                neg += 1
            col = a[i]
            rest = [t for t in range(k) if t != i]
            a = [
                [a[r][c] - col[r] * col[c] / d if col[r] and col[c] else a[r][c] for c in rest]
                for r in rest
            ]
            continue
        off = next(((r, c) for r in range(k) for c in range(r + 1, k) if a[r][c]), None)
        if off is None:
            break
        i, j = off
        b = a[i][j]
        pos += 1
        neg += 1
        ci, cj = a[i], a[j]
        rest = [t for t in range(k) if t != i and t != j]
        a = [
            [a[r][c] - (ci[r] * cj[c] + cj[r] * ci[c]) / b for c in rest]
            for r in rest
        ]
    return pos, neg, n - pos - neg


def _size(x: Fraction) -> int:
    return x.numerator.bit_length() + x.denominator.bit_length()


def signature_and_rank(m: RationalMatrix) -> Tuple[int, int]:
    """Exact (signature, rank) of a symmetric rational matrix."""
    pos, neg, _ = inertia(m)
    return pos - neg, pos + neg


def signature_and_rank_by_charpoly(m: RationalMatrix) -> Tuple[int, int]:
    """Same result via Descartes' rule on the characteristic polynomial.

    All eigenvalues of a symmetric matrix are real, so sign variations count
    positive and negative eigenvalues exactly. Cubic in size but with no bound
    on intermediate coefficient growth; meant as an independent check on small
    matrices.
    """
    if not m.is_symmetric():
        raise ValueError("signature of a non-symmetric matrix")
    n = m.rows
    if n == 0:
        return 0, 0
    cp = charpoly(m)
    zeros = next(i for i, c in enumerate(cp) if c)
    cp = cp[zeros:]
    pos = _sign_changes(cp)
    neg = _sign_changes([c if i % 2 == 0 else -c for i, c in enumerate(cp)])
    return pos - neg, n - zeros


def matrix_rank(m: RationalMatrix) -> int:
    return rational_rank(m)
