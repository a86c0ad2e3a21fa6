"""Exact multivariate polynomials over the rationals.

Polynomials are immutable. Each one carries a :class:`VariableContext` and a
map from exponent tuples to nonzero :class:`fractions.Fraction` coefficients.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Iterator, Sequence, Tuple

Monomial = Tuple[int, ...]


class ContextMismatch(ValueError):
    pass


class VariableContext:
    """Ordered, immutable list of variable names."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.names = names
        self._index = {name: i for i, name in enumerate(names)}

    @property
    def count(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self._index[name]

    def __contains__(self, name):
        return name in self._index

    def __eq__(self, other):
        return isinstance(other, VariableContext) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"VariableContext({list(self.names)!r})"

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.count: Fraction(c)})

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.count or any(e < 0 for e in exps):
            raise ValueError(f"bad exponent vector {exps} for {self}")
        return Polynomial(self, {exps: Fraction(coeff)})

    def gen(self, i) -> "Polynomial":
        if isinstance(i, str):
            i = self.index(i)
        exps = [0] * self.count
        exps[i] = 1
        return Polynomial(self, {tuple(exps): Fraction(1)})

    def gens(self) -> Tuple["Polynomial", ...]:
        return tuple(self.gen(i) for i in range(self.count))


class MonomialOrder:
    """A term order on exponent tuples.

    ``key(m)`` sorts ascending from the *largest* monomial down, so
    ``min(ms, key=order.key)`` is the leading monomial and the key can be
    pushed on a min-heap directly.
    """

    __slots__ = ("kind", "key")

    def __init__(self, kind: str):
        if kind == "degrevlex":
            self.key = _degrevlex_key
        elif kind == "lex":
            self.key = _lex_key
        else:
            raise ValueError(f"unknown monomial order {kind!r}")
        self.kind = kind

    def greater(self, a: Monomial, b: Monomial) -> bool:
        return self.key(a) < self.key(b)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.kind == other.kind

    def __hash__(self):
        return hash(self.kind)

    def __repr__(self):
        return f"MonomialOrder({self.kind!r})"


def _degrevlex_key(m):
    # higher degree first; on ties, smaller exponent of the last variable first
    return (-sum(m),) + m[::-1]


def _lex_key(m):
    return tuple(-e for e in m)


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


def get_order(kind) -> MonomialOrder:
    if isinstance(kind, MonomialOrder):
        return kind
    return MonomialOrder(kind)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple([x + y for x, y in zip(a, b)])


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple([x - y for x, y in zip(a, b)])


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True if ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple([x if x > y else y for x, y in zip(a, b)])


def _coerce_scalar(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    return None


class Polynomial:
    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: VariableContext, terms: Dict[Monomial, Fraction], _trusted=False):
        self.ctx = ctx
        if not _trusted:
            clean = {}
            m = ctx.count
            for exps, c in terms.items():
                exps = tuple(exps)
                if len(exps) != m:
                    raise ValueError(f"exponent vector {exps} has wrong length for {ctx}")
                c = Fraction(c)
                if c:
                    clean[exps] = clean.get(exps, 0) + c
            terms = {e: c for e, c in clean.items() if c}
        self.terms = terms
        self._hash = None

    @classmethod
    def _make(cls, ctx, terms):
        return cls(ctx, terms, _trusted=True)

    # -- basic queries -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_coeff(self) -> Fraction:
        return self.terms.get((0,) * self.ctx.count, Fraction(0))

    def coeff(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def __len__(self):
        return len(self.terms)

    def monomials(self, order: MonomialOrder = DEGREVLEX) -> list:
        return sorted(self.terms, key=order.key)

    def items(self, order: MonomialOrder = DEGREVLEX) -> Iterator[Tuple[Monomial, Fraction]]:
        for e in self.monomials(order):
            yield e, self.terms[e]

    def leading_monomial(self, order: MonomialOrder = DEGREVLEX) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return min(self.terms, key=order.key)

    def leading_coeff(self, order: MonomialOrder = DEGREVLEX) -> Fraction:
        return self.terms[self.leading_monomial(order)]

    # -- arithmetic ----------------------------------------------------
    def _check(self, other: "Polynomial"):
        if self.ctx != other.ctx:
            raise ContextMismatch(f"{self.ctx} vs {other.ctx}")

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        c = _coerce_scalar(other)
        if c is None:
            return NotImplemented
        return self.ctx.constant(c)

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        res = dict(self.terms)
        for e, c in other.terms.items():
            s = res.get(e)
            if s is None:
                res[e] = c
            else:
                s += c
                if s:
                    res[e] = s
                else:
                    del res[e]
        return Polynomial._make(self.ctx, res)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._make(self.ctx, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return self.ctx.zero()
        return Polynomial._make(self.ctx, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = _coerce_scalar(other)
            if c is None:
                return NotImplemented
            return self.scale(c)
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        res: Dict[Monomial, Fraction] = {}
        get = res.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple([x + y for x, y in zip(ea, eb)])
                res[e] = get(e, 0) + ca * cb
        return Polynomial._make(self.ctx, {e: c for e, c in res.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ctx.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_term(self, exps: Monomial, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return self.ctx.zero()
        return Polynomial._make(
            self.ctx, {mono_mul(e, exps): c * v for e, v in self.terms.items()}
        )

    def exact_div(self, other: "Polynomial", order: MonomialOrder = DEGREVLEX) -> "Polynomial":
        """Quotient of an exact division; raises ArithmeticError if a remainder is left."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        lm = other.leading_monomial(order)
        lc = other.terms[lm]
        rest = self
        quot: Dict[Monomial, Fraction] = {}
        while rest.terms:
            m = rest.leading_monomial(order)
            if not mono_divides(lm, m):
                raise ArithmeticError("polynomial division is not exact")
            q = mono_div(m, lm)
            c = rest.terms[m] / lc
            quot[q] = c
            rest = rest - other.mul_term(q, c)
        return Polynomial._make(self.ctx, quot)

    # -- calculus and evaluation --------------------------------------
    def partial_derivative(self, i) -> "Polynomial":
        if isinstance(i, str):
            i = self.ctx.index(i)
        if not 0 <= i < self.ctx.count:
            raise IndexError(f"variable index {i} out of range for {self.ctx}")
        res = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1:]
                res[ne] = c * k
        return Polynomial._make(self.ctx, res)

    def gradient(self) -> list:
        return [self.partial_derivative(i) for i in range(self.ctx.count)]

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.ctx.count:
            raise ValueError(
                f"point has {len(point)} coordinates, context has {self.ctx.count}"
            )
        pt = [Fraction(a) for a in point]
        powers = [dict() for _ in pt]
        total = Fraction(0)
        for e, c in self.terms.items():
            val = c
            for j, k in enumerate(e):
                if k:
                    cache = powers[j]
                    p = cache.get(k)
                    if p is None:
                        p = cache[k] = pt[j] ** k
                    val *= p
            total += val
        return total

    # -- comparison and display ---------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ctx == other.ctx and self.terms == other.terms
        c = _coerce_scalar(other)
        if c is None:
            return NotImplemented
        return self.terms == ({(0,) * self.ctx.count: c} if c else {})

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self.terms.items())))
        return self._hash

    def to_str(self, order: MonomialOrder = DEGREVLEX) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.items(order):
            mono = "*".join(
                name if k == 1 else f"{name}^{k}"
                for name, k in zip(self.ctx.names, e)
                if k
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    __str__ = to_str

    def __repr__(self):
        return f"Polynomial({self.to_str()!r}, vars={list(self.ctx.names)})"


def dot(us: Sequence[Polynomial], vs: Sequence[Polynomial]) -> Polynomial:
    if len(us) != len(vs) or not us:
        raise ValueError("dot product needs two nonempty sequences of equal length")
    total = us[0] * vs[0]
    for a, b in zip(us[1:], vs[1:]):
        total = total + a * b
    return total
