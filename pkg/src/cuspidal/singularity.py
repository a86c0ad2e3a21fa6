"""Folds, cusps and cusp signs of a polynomial map restricted to a surface.

The surface is ``M = {h_1 = ... = h_n = 0}`` in ``n + 2`` variables and the map
is ``ftilde = (f1, f2)``. Every stacked Jacobian keeps the row order
``[D(ftilde or F or d); Dh]``, which fixes the orientation used for cusp signs.
"""
from __future__ import annotations

import enum
import logging
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from .groebner import (
    GroebnerBasis,
    InfiniteDimensional,
    contains_one,
    reduced_groebner_basis,
)
from .polymatrix import (
    PolyMatrix,
    column_deleted_minors,
    determinant,
    jacobian,
    rank_at_point,
)
from .polyring import DEGREVLEX, Polynomial, VariableContext, dot, get_order
from .quotient import QuotientAlgebra, signature_and_rank

log = logging.getLogger(__name__)


class NotCertified(RuntimeError):
    """Cusp counting was requested without the folds-and-cusps certificate."""


class Status(str, enum.Enum):
    CERTIFIED = "Certified"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Certificate:
    status: Status
    evidence: GroebnerBasis
    ideal: str = ""

    @property
    def certified(self) -> bool:
        return self.status is Status.CERTIFIED

    def __bool__(self):
        return self.certified


class PointKind(str, enum.Enum):
    NOT_ON_MANIFOLD = "NotOnManifold"
    MANIFOLD_SINGULAR = "ManifoldSingular"
    REGULAR = "Regular"
    FOLD = "Fold"
    CUSP = "Cusp"
    DEGENERATE = "DegenerateSingularity"


@dataclass(frozen=True)
class PointClass:
    kind: PointKind
    sign: Optional[int] = None

    def __post_init__(self):
        if self.kind is PointKind.CUSP and self.sign not in (1, -1):
            raise ValueError("a cusp needs sign +1 or -1")
        if self.kind is not PointKind.CUSP and self.sign is not None:
            raise ValueError("only cusps carry a sign")

    def __str__(self):
        if self.kind is PointKind.CUSP:
            return f"Cusp, sign {self.sign:+d}"
        return self.kind.value


@dataclass(frozen=True)
class CuspReport:
    total: int
    signed_sum: int
    dim_A: int
    theta1_rank: int
    theta2_rank: int
    verified: bool = True
    warnings: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        # a forced run over a non-radical J may legitimately break these
        if self.verified and not self.consistent:
            raise ArithmeticError(
                f"inconsistent signatures: N={self.total}, sum={self.signed_sum}"
            )

    @property
    def consistent(self) -> bool:
        return (self.total - self.signed_sum) % 2 == 0 and abs(self.signed_sum) <= self.total

    @property
    def positive(self) -> Optional[int]:
        return (self.total + self.signed_sum) // 2 if self.consistent else None

    @property
    def negative(self) -> Optional[int]:
        return (self.total - self.signed_sum) // 2 if self.consistent else None


class Problem:
    """The pair (ftilde, h) over a context with ``len(h) + 2`` variables.

    Derived polynomials are computed lazily and cached; instances are not
    meant to be mutated.
    """

    def __init__(self, ftilde: Sequence[Polynomial], h: Sequence[Polynomial],
                 ctx: VariableContext = None):
        ftilde, h = list(ftilde), list(h)
        if len(ftilde) != 2:
            raise ValueError(f"ftilde must have exactly two components, got {len(ftilde)}")
        ctx = ctx or ftilde[0].ctx
        for p in ftilde + h:
            if p.ctx != ctx:
                raise ValueError("all polynomials must share one variable context")
        if ctx.count != len(h) + 2:
            raise ValueError(
                f"variable count {ctx.count} does not equal number of constraints + 2 = {len(h) + 2}"
            )
        self.ctx = ctx
        self.ftilde = tuple(ftilde)
        self.h = tuple(h)

    @property
    def n(self) -> int:
        return len(self.h)

    @classmethod
    def from_strings(cls, names, ftilde: Sequence[str], h: Sequence[str]) -> "Problem":
        from .parser import parse_polynomial

        ctx = VariableContext(names.split() if isinstance(names, str) else names)
        return cls([parse_polynomial(s, ctx) for s in ftilde], [parse_polynomial(s, ctx) for s in h], ctx)

    # -- derived polynomials ---------------------------------------------
    @cached_property
    def Dh(self) -> PolyMatrix:
        return jacobian(self.h) if self.h else PolyMatrix([], self.ctx)

    def _stack(self, top: Sequence[Polynomial]) -> PolyMatrix:
        return jacobian(top).stack(self.Dh)

    @cached_property
    def d(self) -> Polynomial:
        return determinant(self._stack(self.ftilde))

    @cached_property
    def w(self) -> List[Polynomial]:
        return column_deleted_minors(self._stack([self.d]))

    @cached_property
    def v(self) -> List[Polynomial]:
        # 1-based alternating signs: v_1 = -w_1, v_2 = +w_2, ...
        return [wi if i % 2 else -wi for i, wi in enumerate(self.w)]

    @cached_property
    def F(self) -> Tuple[Polynomial, Polynomial]:
        return tuple(dot(f.gradient(), self.v) for f in self.ftilde)

    @cached_property
    def delta(self) -> Polynomial:
        return determinant(self._stack(self.F))

    @cached_property
    def cusp_rank_dets(self) -> Tuple[Polynomial, Polynomial]:
        return tuple(determinant(self._stack([Fi, self.d])) for Fi in self.F)

    def ideals(self):
        """Generator lists of the ideals I, S and J."""
        h = list(self.h)
        I = h + [self.d] + list(self.w)
        S = h + [self.d] + list(self.F) + list(self.cusp_rank_dets)
        J = h + [self.d] + list(self.F)
        return I, S, J

    def manifold_ideal(self) -> List[Polynomial]:
        n = self.n
        minors = []
        for cols in combinations(range(self.ctx.count), n):
            sub = PolyMatrix([[row[c] for c in cols] for row in self.Dh.entries], self.ctx)
            minors.append(determinant(sub))
        return list(self.h) + minors


def build_d(P: Problem) -> Polynomial:
    return P.d


def build_w(P: Problem) -> List[Polynomial]:
    return list(P.w)


def build_v(P: Problem) -> List[Polynomial]:
    return list(P.v)


def build_F(P: Problem) -> Tuple[Polynomial, Polynomial]:
    return P.F


def build_delta(P: Problem) -> Polynomial:
    return P.delta


def build_ideals(P: Problem):
    return P.ideals()


def _certify(gens, P: Problem, order, name) -> Certificate:
    G = reduced_groebner_basis(gens, get_order(order), ctx=P.ctx)
    status = Status.CERTIFIED if contains_one(G) else Status.INCONCLUSIVE
    log.info("%s ideal: %s (%d basis elements)", name, status.value, len(G))
    return Certificate(status, G, name)


def check_manifold(P: Problem, order=DEGREVLEX) -> Certificate:
    """Certify that Dh has rank n on all of M (h together with the n x n minors of Dh generate 1)."""
    if P.n == 0:
        return Certificate(Status.CERTIFIED, GroebnerBasis([P.ctx.one()], get_order(order), P.ctx), "manifold")
    return _certify(P.manifold_ideal(), P, order, "manifold")


def check_one_generic(P: Problem, order=DEGREVLEX) -> Certificate:
    return _certify(P.ideals()[0], P, order, "I")


def check_folds_cusps_only(P: Problem, order=DEGREVLEX) -> Certificate:
    return _certify(P.ideals()[1], P, order, "S")


def classify_point(P: Problem, point: Sequence) -> PointClass:
    """Exact classification of a rational point of R^(n+2)."""
    if len(point) != P.ctx.count:
        raise ValueError(f"point needs {P.ctx.count} coordinates, got {len(point)}")
    for a in point:
        if isinstance(a, float):
            raise TypeError("points must have exact rational coordinates")
    pt = [Fraction(a) for a in point]
    n = P.n
    if any(hk.evaluate(pt) for hk in P.h):
        return PointClass(PointKind.NOT_ON_MANIFOLD)
    if n and rank_at_point(P.Dh, pt) < n:
        return PointClass(PointKind.MANIFOLD_SINGULAR)
    if P.d.evaluate(pt):
        return PointClass(PointKind.REGULAR)
    if rank_at_point(P._stack([P.d]), pt) < n + 1:
        return PointClass(PointKind.DEGENERATE)
    if any(Fi.evaluate(pt) for Fi in P.F):
        return PointClass(PointKind.FOLD)
    stack = jacobian(list(P.F)).stack(P.Dh).stack(jacobian([P.d]))
    if rank_at_point(stack, pt) == n + 2:
        s = P.delta.evaluate(pt)
        if s:
            return PointClass(PointKind.CUSP, 1 if s > 0 else -1)
    return PointClass(PointKind.DEGENERATE)


def count_cusps(P: Problem, order=DEGREVLEX, force: bool = False,
                certificate: Certificate = None) -> CuspReport:
    """Number of cusps and the sum of their signs from trace-form signatures.

    Refuses (NotCertified) unless the folds-and-cusps ideal is the whole ring;
    ``force=True`` computes the signatures anyway and marks the report unverified.
    """
    order = get_order(order)
    notes = []
    if certificate is None:
        certificate = check_folds_cusps_only(P, order)
    verified = certificate.certified
    if not verified:
        if not force:
            raise NotCertified(
                "the folds-and-cusps certificate is inconclusive; counting would be unsound (use force)"
            )
        notes.append("folds-and-cusps certificate inconclusive; counts are unverified")
    if P.n and not check_manifold(P, order).certified:
        msg = "manifold smoothness could not be certified; counts may include singular points of M"
        warnings.warn(msg)
        notes.append(msg)
    J = P.ideals()[2]
    G = reduced_groebner_basis(J, order, ctx=P.ctx)
    A = QuotientAlgebra(G)  # raises InfiniteDimensional
    log.info("quotient algebra has dimension %d", A.dim)
    s1, r1 = signature_and_rank(A.theta_matrix())
    s2, r2 = signature_and_rank(A.theta_matrix(P.delta))
    if (s1 - s2) % 2 or abs(s2) > s1:
        notes.append("signatures are mutually inconsistent; J is probably not radical")
    return CuspReport(s1, s2, A.dim, r1, r2, verified, tuple(notes))


__all__ = [
    "Certificate",
    "CuspReport",
    "InfiniteDimensional",
    "NotCertified",
    "PointClass",
    "PointKind",
    "Problem",
    "Status",
    "build_F",
    "build_d",
    "build_delta",
    "build_ideals",
    "build_v",
    "build_w",
    "check_folds_cusps_only",
    "check_manifold",
    "check_one_generic",
    "classify_point",
    "count_cusps",
]
