"""Buchberger's algorithm over the rationals.

Internally every polynomial is kept as a primitive integer polynomial (a dict
from exponent tuples to ``int``) with positive leading coefficient; reductions
are fraction-free. Only the final reduced basis is made monic and converted back
to :class:`~cuspidal.polyring.Polynomial`.
"""
from __future__ import annotations

import heapq
import logging
import os
from fractions import Fraction
from itertools import count
from math import gcd, lcm
from typing import Dict, List, Optional, Sequence

from .polyring import (
    DEGREVLEX,
    MonomialOrder,
    Polynomial,
    VariableContext,
    get_order,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)

log = logging.getLogger(__name__)

STEP_LIMIT_ENV = "CUSPIDAL_GB_STEP_LIMIT"


class InfiniteDimensional(ArithmeticError):
    """The quotient by the ideal is not a finite-dimensional vector space."""


class StepLimitExceeded(RuntimeError):
    pass


def _step_limit_from_env() -> Optional[int]:
    raw = os.environ.get(STEP_LIMIT_ENV, "").strip()
    if not raw:
        return None
    limit = int(raw)
    return limit if limit > 0 else None


# -- integer polynomial helpers ------------------------------------------

def _to_int_poly(p: Polynomial) -> Dict[tuple, int]:
    den = lcm(*(c.denominator for c in p.terms.values())) if p.terms else 1
    return {e: int(c * den) for e, c in p.terms.items()}


def _primitive(p: Dict[tuple, int], key) -> Dict[tuple, int]:
    if not p:
        return p
    g = 0
    for c in p.values():
        g = gcd(g, c)
        if g == 1:
            break
    lm = min(p, key=key)
    if p[lm] < 0:
        g = -g
    if g == 1:
        return p
    return {e: c // g for e, c in p.items()}


class _Elem:
    """A basis element: primitive integer polynomial with cached leading data."""

    __slots__ = ("terms", "lm", "lc", "tail")

    def __init__(self, terms: Dict[tuple, int], key):
        self.terms = terms
        self.lm = min(terms, key=key)
        self.lc = terms[self.lm]
        self.tail = [(e, c) for e, c in terms.items() if e != self.lm]


def _find_reducer(m, reducers):
    for g in reducers:
        if mono_divides(g.lm, m):
            return g
    return None


def _reduce(p: Dict[tuple, int], reducers: Sequence[_Elem], key, full=True,
            inert=None) -> Dict[tuple, int]:
    """Fraction-free reduction of ``p`` by ``reducers``.

    The result equals ``c * p`` modulo the ideal for some nonzero integer ``c``
    and is primitive. With ``full=False`` only the leading term is reduced.
    The term at monomial ``inert``, if given, is carried along unreduced.
    """
    p = dict(p)
    rem: Dict[tuple, int] = {}
    if inert is not None:
        rem[inert] = p.pop(inert)
    heap = [(key(e), e) for e in p]
    heapq.heapify(heap)
    steps = 0
    while heap:
        _, m = heapq.heappop(heap)
        c = p.get(m)
        if c is None:
            continue
        g = _find_reducer(m, reducers)
        if g is None:
            if not full:
                rem.update(p)
                return _primitive(rem, key)
            rem[m] = p.pop(m)
            continue
        del p[m]
        a = g.lc
        h = gcd(a, c)
        mul_p, mul_g = a // h, c // h
        if mul_p < 0:
            mul_p, mul_g = -mul_p, -mul_g
        if mul_p != 1:
            for e in p:
                p[e] *= mul_p
            for e in rem:
                rem[e] *= mul_p
        q = mono_div(m, g.lm)
        for e, cg in g.tail:
            ne = tuple([x + y for x, y in zip(e, q)])
            v = p.get(ne)
            if v is None:
                p[ne] = -mul_g * cg
                heapq.heappush(heap, (key(ne), ne))
            else:
                v -= mul_g * cg
                if v:
                    p[ne] = v
                else:
                    del p[ne]
        steps += 1
        if steps % 16 == 0 and mul_p != 1:
            p, rem = _remove_content(p, rem)
    rem.update(p)
    return _primitive(rem, key)


def _remove_content(p, rem):
    g = 0
    for c in p.values():
        g = gcd(g, c)
        if g == 1:
            return p, rem
    for c in rem.values():
        g = gcd(g, c)
        if g == 1:
            return p, rem
    if g <= 1:
        return p, rem
    return ({e: c // g for e, c in p.items()}, {e: c // g for e, c in rem.items()})


def _spoly(f: _Elem, g: _Elem) -> Dict[tuple, int]:
    l = mono_lcm(f.lm, g.lm)
    qf, qg = mono_div(l, f.lm), mono_div(l, g.lm)
    h = gcd(f.lc, g.lc)
    cf, cg = g.lc // h, f.lc // h
    res: Dict[tuple, int] = {}
    for e, c in f.tail:
        res[mono_mul(e, qf)] = cf * c
    for e, c in g.tail:
        ne = mono_mul(e, qg)
        v = res.get(ne, 0) - cg * c
        if v:
            res[ne] = v
        else:
            res.pop(ne, None)
    return res


def _coprime(a, b) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


# -- Buchberger ------------------------------------------------------------

def _buchberger(gens: List[Dict[tuple, int]], order: MonomialOrder, step_limit=None):
    key = order.key
    polys: List[_Elem] = []
    active: List[int] = []
    pairs = set()
    heap = []
    tie = count()

    def push_pair(i, j):
        pairs.add((i, j))
        l = mono_lcm(polys[i].lm, polys[j].lm)
        # normal strategy: smallest lcm first, i.e. the reversed monomial key
        heapq.heappush(heap, (tuple([-x for x in key(l)]), next(tie), i, j))

    def update(hi):
        h = polys[hi]
        cand = [(gi, mono_lcm(h.lm, polys[gi].lm)) for gi in active]
        # chain criterion among the new pairs, keeping coprime pairs as witnesses
        kept = []
        for idx, (gi, l) in enumerate(cand):
            if _coprime(h.lm, polys[gi].lm):
                kept.append((gi, l))
                continue
            redundant = False
            for jdx, (gj, l2) in enumerate(cand):
                if jdx == idx:
                    continue
                if mono_divides(l2, l) and (l2 != l or jdx < idx):
                    redundant = True
                    break
            if not redundant:
                kept.append((gi, l))
        # drop old pairs made redundant by h
        for (i, j) in list(pairs):
            l = mono_lcm(polys[i].lm, polys[j].lm)
            if (
                mono_divides(h.lm, l)
                and mono_lcm(polys[i].lm, h.lm) != l
                and mono_lcm(h.lm, polys[j].lm) != l
            ):
                pairs.discard((i, j))
        for gi, _ in kept:
            if not _coprime(h.lm, polys[gi].lm):
                push_pair(gi, hi)
        active[:] = [gi for gi in active if not mono_divides(h.lm, polys[gi].lm)]
        active.append(hi)

    def reducers():
        # smallest leading monomial first keeps coefficient growth down
        return sorted((polys[i] for i in active), key=lambda g: key(g.lm), reverse=True)

    steps = 0
    # seed with the generators, each reduced against the basis built so far
    for g in sorted(gens, key=lambda t: key(min(t, key=key)), reverse=True):
        r = _reduce(g, reducers(), key)
        if not r:
            continue
        polys.append(_Elem(r, key))
        update(len(polys) - 1)
        if polys[-1].lm == (0,) * len(polys[-1].lm):
            return [polys[-1]]

    while heap:
        _, _, i, j = heapq.heappop(heap)
        if (i, j) not in pairs:
            continue
        pairs.discard((i, j))
        steps += 1
        if step_limit is not None and steps > step_limit:
            raise StepLimitExceeded(f"Groebner basis computation exceeded {step_limit} steps")
        s = _spoly(polys[i], polys[j])
        if not s:
            continue
        r = _reduce(s, reducers(), key)
        if not r:
            continue
        polys.append(_Elem(r, key))
        if not any(polys[-1].lm):
            return [polys[-1]]
        update(len(polys) - 1)
        if steps % 50 == 0:
            log.debug("buchberger: %d steps, %d basis elements, %d pairs", steps, len(active), len(pairs))

    log.debug("buchberger done: %d steps, %d basis elements", steps, len(active))
    return [polys[i] for i in active]


def _interreduce(basis: List[_Elem], key) -> List[_Elem]:
    out = []
    for idx, g in enumerate(basis):
        if not g.tail:
            out.append(g)
            continue
        others = basis[:idx] + basis[idx + 1:]
        # no other leading monomial divides g.lm, so only the tail changes
        out.append(_Elem(_reduce(g.terms, others, key, inert=g.lm), key))
    return out


# -- public API -------------------------------------------------------------

class GroebnerBasis:
    """A (reduced) Groebner basis of monic polynomials for a fixed order."""

    def __init__(self, generators: Sequence[Polynomial], order: MonomialOrder,
                 ctx: VariableContext, reduced: bool = True):
        self.generators = list(generators)
        self.order = order
        self.ctx = ctx
        self.reduced = reduced
        self.leading_monomials = [g.leading_monomial(order) for g in self.generators]

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __getitem__(self, i):
        return self.generators[i]

    def __eq__(self, other):
        return (
            isinstance(other, GroebnerBasis)
            and self.order == other.order
            and set(self.generators) == set(other.generators)
        )

    def __repr__(self):
        return f"GroebnerBasis([{', '.join(g.to_str(self.order) for g in self.generators)}], {self.order.kind})"

    def normal_form(self, p: Polynomial) -> Polynomial:
        return normal_form(p, self)

    def contains(self, p: Polynomial) -> bool:
        return normal_form(p, self).is_zero()

    def contains_one(self) -> bool:
        return contains_one(self)

    def standard_monomials(self) -> List[tuple]:
        return standard_monomials(self)


def reduced_groebner_basis(gens: Sequence[Polynomial], order=DEGREVLEX,
                           ctx: VariableContext = None, step_limit=None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    ``step_limit`` (or the ``CUSPIDAL_GB_STEP_LIMIT`` environment variable) caps
    the number of S-polynomials processed.
    """
    order = get_order(order)
    gens = list(gens)
    if ctx is None:
        if not gens:
            raise ValueError("need a context for an empty generator list")
        ctx = gens[0].ctx
    for g in gens:
        if g.ctx != ctx:
            raise ValueError("generators belong to different contexts")
    if step_limit is None:
        step_limit = _step_limit_from_env()
    key = order.key
    ints = [_primitive(_to_int_poly(g), key) for g in gens if not g.is_zero()]
    if not ints:
        return GroebnerBasis([], order, ctx)
    basis = _buchberger(ints, order, step_limit)
    basis = _interreduce(basis, key)
    monic = []
    for g in basis:
        lc = Fraction(g.lc)
        monic.append(Polynomial(ctx, {e: Fraction(c) / lc for e, c in g.terms.items()}))
    monic.sort(key=lambda p: key(p.leading_monomial(order)), reverse=True)
    return GroebnerBasis(monic, order, ctx)


def normal_form(p: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Remainder of the multivariate division of ``p`` by the monic basis ``G``."""
    if p.ctx != G.ctx:
        raise ValueError("polynomial and basis belong to different contexts")
    key = G.order.key
    reducers = [
        (lm, [(e, c) for e, c in g.terms.items() if e != lm])
        for g, lm in zip(G.generators, G.leading_monomials)
    ]
    rest = dict(p.terms)
    heap = [(key(e), e) for e in rest]
    heapq.heapify(heap)
    rem = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = rest.pop(m, None)
        if c is None:
            continue
        for lm, tail in reducers:
            if mono_divides(lm, m):
                break
        else:
            rem[m] = c
            continue
        q = mono_div(m, lm)
        for e, cg in tail:
            ne = tuple([x + y for x, y in zip(e, q)])
            v = rest.get(ne)
            if v is None:
                rest[ne] = -c * cg
                heapq.heappush(heap, (key(ne), ne))
            else:
                v -= c * cg
                if v:
                    rest[ne] = v
                else:
                    del rest[ne]
    return Polynomial(p.ctx, rem, _trusted=True)


def contains_one(G: GroebnerBasis) -> bool:
    return any(not any(lm) for lm in G.leading_monomials)


def is_groebner(G: GroebnerBasis) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    gs = G.generators
    for i in range(len(gs)):
        for j in range(i + 1, len(gs)):
            if not normal_form(s_polynomial(gs[i], gs[j], G.order), G).is_zero():
                return False
    return True


def s_polynomial(f: Polynomial, g: Polynomial, order=DEGREVLEX) -> Polynomial:
    order = get_order(order)
    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    l = mono_lcm(lf, lg)
    return f.mul_term(mono_div(l, lf), 1 / f.terms[lf]) - g.mul_term(mono_div(l, lg), 1 / g.terms[lg])


def standard_monomials(G: GroebnerBasis) -> List[tuple]:
    """Monomials outside the leading-term ideal, sorted from smallest to largest.

    Raises InfiniteDimensional if some variable has no pure power among the
    leading monomials.
    """
    m = G.ctx.count
    lms = G.leading_monomials
    if contains_one(G):
        return []
    for i in range(m):
        if not any(lm[i] > 0 and sum(lm) == lm[i] for lm in lms):
            raise InfiniteDimensional(
                f"no leading monomial is a pure power of {G.ctx.names[i]}; the quotient is infinite-dimensional"
            )
    start = (0,) * m
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for mono in frontier:
            for i in range(m):
                cand = mono[:i] + (mono[i] + 1,) + mono[i + 1:]
                if cand in seen or any(mono_divides(lm, cand) for lm in lms):
                    continue
                seen.add(cand)
                nxt.append(cand)
        frontier = nxt
    return sorted(seen, key=G.order.key, reverse=True)
