import itertools
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cuspidal.polymatrix import (
    PolyMatrix,
    RationalMatrix,
    column_deleted_minors,
    determinant,
    jacobian,
    rank_at_point,
    rational_det,
    rational_rank,
)
from cuspidal.polyring import VariableContext, dot

from .conftest import XYZ, polynomials, rationals

x, y, z = XYZ.gens()
ONE, ZERO = XYZ.one(), XYZ.zero()


def const_matrix(rows):
    return PolyMatrix([[XYZ.constant(c) for c in r] for r in rows], XYZ)


def test_jacobian_examples():
    J = jacobian([x, y**3 + x * y, z])
    assert J.entries == [[ONE, ZERO, ZERO], [y, 3 * y**2 + x, ZERO], [ZERO, ZERO, ONE]]
    assert jacobian([x**2 + y**2 + z**2 - 1]).entries == [[2 * x, 2 * y, 2 * z]]
    ctx = VariableContext("xy")
    a, b = ctx.gens()
    assert jacobian([a, b]).entries == [[ctx.one(), ctx.zero()], [ctx.zero(), ctx.one()]]
    with pytest.raises(ValueError):
        jacobian([])


def test_determinant_examples():
    assert determinant(const_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == 1
    assert determinant(PolyMatrix([[x, ONE], [ONE, x]])) == x**2 - 1
    # cofactor expansion along the last column: 1 * (1 * (3y^2 + x) - 0 * y)
    assert determinant(jacobian([x, y**3 + x * y, z])) == 3 * y**2 + x
    with pytest.raises(ValueError):
        determinant(PolyMatrix([[x, y]]))


def test_column_deleted_minors_examples():
    m = PolyMatrix([[ONE, 6 * y, ZERO], [ZERO, ZERO, ONE]])
    assert column_deleted_minors(m) == [6 * y, ONE, ZERO]
    assert column_deleted_minors(const_matrix([[1, 0, 0], [0, 1, 0]])) == [0, 0, 1]
    assert column_deleted_minors(const_matrix([[0, 0, 0], [0, 0, 0]])) == [0, 0, 0]
    with pytest.raises(ValueError):
        column_deleted_minors(const_matrix([[1, 0], [0, 1]]))


def test_rank_at_point_examples():
    eye = const_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert rank_at_point(eye, [5, -1, Fraction(2, 3)]) == 3
    assert rank_at_point(const_matrix([[0, 0], [0, 0]]), [0, 0, 0]) == 0
    assert rank_at_point(PolyMatrix([[2 * x, 2 * y, 2 * z]]), [1, 0, 0]) == 1
    with pytest.raises(ValueError):
        rank_at_point(eye, [1, 2])


def test_bareiss_branch_matches_cofactor():
    # 5x5 goes through fraction-free elimination; compare with the Leibniz formula
    rnd = random.Random(7)
    gens = [x, y, z, ONE]
    rows = [[sum((rnd.randint(-2, 2) * g for g in gens), ZERO) for _ in range(5)] for _ in range(5)]
    m = PolyMatrix(rows, XYZ)
    leibniz = ZERO
    for perm in itertools.permutations(range(5)):
        inversions = sum(1 for i, j in itertools.combinations(range(5), 2) if perm[i] > perm[j])
        sign = -1 if inversions % 2 else 1
        term = XYZ.constant(sign)
        for i, j in enumerate(perm):
            term = term * rows[i][j]
        leibniz = leibniz + term
    assert determinant(m) == leibniz


small_polys = polynomials(max_terms=3, max_exp=1)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4).flatmap(lambda k: st.lists(
    st.lists(small_polys, min_size=k, max_size=k), min_size=k, max_size=k)),
    st.lists(rationals(), min_size=3, max_size=3))
def test_determinant_commutes_with_evaluation(rows, a):
    m = PolyMatrix(rows, XYZ)
    assert determinant(m).evaluate(a) == rational_det(m.evaluate(a))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3).flatmap(lambda k: st.lists(
    st.lists(small_polys, min_size=k + 1, max_size=k + 1), min_size=k, max_size=k)))
def test_laplace_orthogonality(rows):
    w = column_deleted_minors(PolyMatrix(rows, XYZ))
    v = [wi if i % 2 else -wi for i, wi in enumerate(w)]
    for r in rows:
        assert dot(r, v).is_zero()


matrices = st.tuples(st.integers(1, 5), st.integers(1, 5)).flatmap(
    lambda rc: st.lists(st.lists(rationals(3, 2), min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0])
)


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_rank_matches_sympy(rows):
    r = rational_rank(RationalMatrix(rows))
    assert r == sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in row] for row in rows]).rank()
    assert r <= min(len(rows), len(rows[0]))


@settings(max_examples=40, deadline=None)
@given(matrices, matrices)
def test_rank_additive_on_block_diagonal(a, b):
    ca, cb = len(a[0]), len(b[0])
    blocks = [r + [0] * cb for r in a] + [[0] * ca + r for r in b]
    assert rational_rank(RationalMatrix(blocks)) == rational_rank(RationalMatrix(a)) + rational_rank(RationalMatrix(b))
