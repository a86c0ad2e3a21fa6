from fractions import Fraction

import pytest
import sympy
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from cuspidal.groebner import (
    InfiniteDimensional,
    StepLimitExceeded,
    contains_one,
    is_groebner,
    normal_form,
    reduced_groebner_basis,
    s_polynomial,
    standard_monomials,
)
from cuspidal.polyring import DEGREVLEX, LEX, Polynomial, VariableContext

from .conftest import XYZ, load_problem, polynomials, rationals

x, y, z = XYZ.gens()
X1 = VariableContext(["x"])
t = X1.gen(0)
XY = VariableContext("xy")


def test_normal_form_examples():
    G = reduced_groebner_basis([x])
    assert normal_form(x**2, G).is_zero()
    assert normal_form(x + y, G) == y
    H = reduced_groebner_basis([x**2 + 1])
    assert normal_form(x**2 + 1, H).is_zero()


def test_reduced_basis_examples():
    assert set(reduced_groebner_basis([x, y])) == {x, y}
    assert reduced_groebner_basis([x, x - 1]).generators == [XYZ.one()]
    assert reduced_groebner_basis([x**2 + 1]).generators == [x**2 + 1]


def test_empty_ideal():
    G = reduced_groebner_basis([], ctx=XYZ)
    assert len(G) == 0 and not contains_one(G)
    assert reduced_groebner_basis([XYZ.zero()], ctx=XYZ).generators == []


def test_contains_one_examples():
    assert contains_one(reduced_groebner_basis([x, x + 1]))
    assert not contains_one(reduced_groebner_basis([x, y]))


def test_contains_one_sphere_example():
    _, S, _ = load_problem("sphere_a.txt").ideals()
    assert contains_one(reduced_groebner_basis(S))


def test_standard_monomials_examples():
    assert standard_monomials(reduced_groebner_basis([t**2 + 1])) == [(0,), (1,)]
    assert standard_monomials(reduced_groebner_basis([x, y, z])) == [(0, 0, 0)]
    with pytest.raises(InfiniteDimensional):
        standard_monomials(reduced_groebner_basis([XY.gen(0)]))


def test_step_limit(monkeypatch):
    gens = [x**2 * y + z - 1, x * y**2 - z**2 + x, x * z + y**3 - 2]
    assert is_groebner(reduced_groebner_basis(gens, step_limit=100))
    with pytest.raises(StepLimitExceeded):
        reduced_groebner_basis(gens, step_limit=1)
    monkeypatch.setenv("CUSPIDAL_GB_STEP_LIMIT", "1")
    with pytest.raises(StepLimitExceeded):
        reduced_groebner_basis(gens)


def test_cyclic3_against_known_basis():
    # cyclic-3 has a well known degrevlex basis with 3 elements after reduction
    gens = [x + y + z, x * y + y * z + z * x, x * y * z - 1]
    G = reduced_groebner_basis(gens)
    assert is_groebner(G)
    assert len(standard_monomials(G)) == 6


def _sympy_basis(gens, ctx, order):
    syms = sympy.symbols(list(ctx.names))
    exprs = [
        sum(sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[s**k for s, k in zip(syms, e)])
            for e, c in g.terms.items())
        for g in gens
    ]
    sg = sympy.groebner(exprs, *syms, order="grevlex" if order == DEGREVLEX else "lex")
    out = set()
    for expr in sg.exprs:
        poly = sympy.Poly(expr, *syms)
        lc = poly.coeffs(order="grevlex" if order == DEGREVLEX else "lex")[0]
        out.add(Polynomial(ctx, {m: Fraction(int(sympy.fraction(c / lc)[0]), int(sympy.fraction(c / lc)[1]))
                                 for m, c in zip(poly.monoms(), poly.coeffs())}))
    return out


ideal_gens = st.lists(polynomials(max_terms=3, max_exp=2), min_size=1, max_size=3)


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(ideal_gens, st.sampled_from([DEGREVLEX, LEX]))
def test_matches_sympy(gens, order):
    if all(g.is_zero() for g in gens):
        return
    G = reduced_groebner_basis(gens, order)
    assert set(G.generators) == _sympy_basis([g for g in gens if g], XYZ, order)


@settings(max_examples=40, deadline=None)
@given(ideal_gens, st.sampled_from([DEGREVLEX, LEX]))
def test_basis_properties(gens, order):
    G = reduced_groebner_basis(gens, order, ctx=XYZ)
    assert is_groebner(G)
    for g in gens:
        assert normal_form(g, G).is_zero()
    lms = G.leading_monomials
    assert len(set(lms)) == len(lms)
    for g, lm in zip(G, lms):
        assert g.terms[lm] == 1
        for other in lms:
            if other != lm:
                assert not any(all(a <= b for a, b in zip(other, m)) for m in g.terms)
    assert reduced_groebner_basis(G.generators, order, ctx=XYZ) == G
    assert contains_one(G) == normal_form(XYZ.one(), G).is_zero()


@settings(max_examples=40, deadline=None)
@given(ideal_gens, polynomials(), polynomials(), rationals())
def test_normal_form_is_linear(gens, p, q, c):
    G = reduced_groebner_basis(gens, ctx=XYZ)
    assert normal_form(p + q, G) == normal_form(p, G) + normal_form(q, G)
    assert normal_form(p * c, G) == normal_form(p, G) * c
    r = normal_form(p, G)
    assert normal_form(p - r, G).is_zero()


@settings(max_examples=40, deadline=None)
@given(ideal_gens)
def test_finiteness_criterion(gens):
    G = reduced_groebner_basis(gens, ctx=XYZ)
    pure = all(
        any(lm[i] > 0 and sum(lm) == lm[i] for lm in G.leading_monomials) for i in range(3)
    ) or contains_one(G)
    try:
        std = standard_monomials(G)
    except InfiniteDimensional:
        assert not pure
    else:
        assert pure
        for m in std:
            assert not any(all(a <= b for a, b in zip(lm, m)) for lm in G.leading_monomials)


def test_s_polynomial_cancels_leading_terms():
    f = x**2 * y - z
    g = x * y**2 + 1
    s = s_polynomial(f, g)
    assert s == (y * f - x * g)
