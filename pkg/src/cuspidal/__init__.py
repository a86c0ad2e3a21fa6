"""Exact certification of folds and cusps of polynomial maps on surfaces."""
from .groebner import GroebnerBasis, InfiniteDimensional, normal_form, reduced_groebner_basis
from .parser import ParseError, parse_input, parse_polynomial
from .polyring import DEGREVLEX, LEX, MonomialOrder, Polynomial, VariableContext
from .quotient import QuotientAlgebra, signature_and_rank
from .singularity import (
    Certificate,
    CuspReport,
    NotCertified,
    PointClass,
    PointKind,
    Problem,
    Status,
    check_folds_cusps_only,
    check_manifold,
    check_one_generic,
    classify_point,
    count_cusps,
)

__version__ = "0.1.0"
