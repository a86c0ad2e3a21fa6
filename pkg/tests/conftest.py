from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from cuspidal.parser import parse_input
from cuspidal.polyring import Polynomial, VariableContext

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"

XYZ = VariableContext("xyz")

ACCEPTANCE_LINES = []


def load_problem(name):
    return parse_input((PROBLEMS / name).read_text()).problem()


@pytest.fixture(scope="session")
def problems_dir():
    return PROBLEMS


def rationals(max_num=5, max_den=3):
    return st.builds(
        Fraction,
        st.integers(-max_num, max_num),
        st.integers(1, max_den),
    )


@st.composite
def polynomials(draw, ctx=XYZ, max_terms=4, max_exp=2):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.integers(0, max_exp)) for _ in range(ctx.count))
        terms[e] = draw(rationals())
    return Polynomial(ctx, terms)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
