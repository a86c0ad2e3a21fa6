"""Command line driver: ``cuspidal <command> <file> [options]``.

Exit codes: 0 on success or a Certified outcome, 2 on an Inconclusive
certificate (including ``count`` refusing to run without one), 1 on errors.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from fractions import Fraction
from typing import List, Optional

from .groebner import InfiniteDimensional, StepLimitExceeded
from .parser import ParseError, parse_input
from .polyring import Polynomial, VariableContext
from .singularity import (
    Certificate,
    CuspReport,
    NotCertified,
    PointClass,
    Problem,
    check_folds_cusps_only,
    check_manifold,
    check_one_generic,
    classify_point,
    count_cusps,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCONCLUSIVE = 2

COMMANDS = ("check-manifold", "check-generic", "check-stable", "classify", "count", "derive")


# -- JSON encoding ------------------------------------------------------------

def poly_to_json(p: Polynomial) -> list:
    """``[[exponents, "num/den"], ...]`` sorted by exponent vector."""
    return [[list(e), str(c)] for e, c in sorted(p.terms.items())]


def poly_from_json(data: list, ctx: VariableContext) -> Polynomial:
    return Polynomial(ctx, {tuple(e): Fraction(c) for e, c in data})


def certificate_to_json(cert: Certificate, verbose=False) -> dict:
    out = {"ideal": cert.ideal, "status": cert.status.value, "basis_size": len(cert.evidence)}
    if verbose:
        out["basis"] = [poly_to_json(g) for g in cert.evidence]
    return out


def report_to_json(rep: CuspReport) -> dict:
    return {
        "total": rep.total,
        "signed_sum": rep.signed_sum,
        "positive": rep.positive,
        "negative": rep.negative,
        "dim_A": rep.dim_A,
        "theta1_rank": rep.theta1_rank,
        "theta2_rank": rep.theta2_rank,
        "verified": rep.verified,
        "warnings": list(rep.warnings),
    }


def derived_to_json(P: Problem) -> dict:
    return {
        "d": poly_to_json(P.d),
        "w": [poly_to_json(x) for x in P.w],
        "v": [poly_to_json(x) for x in P.v],
        "F": [poly_to_json(x) for x in P.F],
        "delta": poly_to_json(P.delta),
    }


def derived_from_json(data: dict, ctx: VariableContext) -> dict:
    return {
        "d": poly_from_json(data["d"], ctx),
        "w": [poly_from_json(x, ctx) for x in data["w"]],
        "v": [poly_from_json(x, ctx) for x in data["v"]],
        "F": [poly_from_json(x, ctx) for x in data["F"]],
        "delta": poly_from_json(data["delta"], ctx),
    }


# -- plain text --------------------------------------------------------------

def _derived_text(P: Problem) -> List[str]:
    lines = [f"d = {P.d}"]
    lines += [f"v[{i + 1}] = {x}" for i, x in enumerate(P.v)]
    lines += [f"F[{i + 1}] = {x}" for i, x in enumerate(P.F)]
    lines.append(f"delta = {P.delta}")
    return lines


def _report_text(rep: CuspReport) -> List[str]:
    lines = [
        f"cusps: {rep.total}",
        f"sum of signs: {rep.signed_sum:+d}",
        f"positive: {rep.positive}",
        f"negative: {rep.negative}",
        f"dim A: {rep.dim_A}  (rank Theta1 = {rep.theta1_rank}, rank Theta2 = {rep.theta2_rank})",
    ]
    if not rep.verified:
        lines.append("UNVERIFIED: computed without the folds-and-cusps certificate")
    lines += [f"warning: {w}" for w in rep.warnings]
    return lines


def parse_point(text: str) -> List[Fraction]:
    try:
        return [Fraction(part.strip()) for part in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"bad point {text!r}: expected comma-separated rationals like 1/2,0,-3") from None


# -- dispatch ------------------------------------------------------------------

def run(command: str, text: str, order: Optional[str] = None, point: Optional[str] = None,
        force: bool = False, verbose: bool = False):
    """Execute ``command`` on an input document; returns ``(exit_code, report_dict, lines)``."""
    if command not in COMMANDS:
        raise ValueError(f"unknown command {command!r}")
    doc = parse_input(text)
    P = doc.problem()
    order = order or doc.order or "degrevlex"
    force = force or doc.force
    report = {"command": command, "order": order, "variables": list(P.ctx.names)}
    lines: List[str] = []
    code = EXIT_OK
    start = time.perf_counter()

    def certify(fn, label):
        cert = fn(P, order)
        report.setdefault("certificates", {})[label] = certificate_to_json(cert, verbose)
        lines.append(f"{label}: {cert.status.value}")
        return cert

    if command == "check-manifold":
        cert = certify(check_manifold, "manifold")
        code = EXIT_OK if cert.certified else EXIT_INCONCLUSIVE
    elif command == "check-generic":
        cert = certify(check_one_generic, "one-generic")
        code = EXIT_OK if cert.certified else EXIT_INCONCLUSIVE
    elif command == "check-stable":
        cert = certify(check_folds_cusps_only, "folds-and-cusps")
        code = EXIT_OK if cert.certified else EXIT_INCONCLUSIVE
    elif command == "derive":
        report["derived"] = derived_to_json(P)
        lines += _derived_text(P)
    elif command == "classify":
        if point is None:
            raise ValueError("classify needs --point")
        pc: PointClass = classify_point(P, parse_point(point))
        report["point"] = [str(a) for a in parse_point(point)]
        report["classification"] = {"kind": pc.kind.value, "sign": pc.sign}
        lines.append(str(pc))
    elif command == "count":
        cert = certify(check_folds_cusps_only, "folds-and-cusps")
        if not cert.certified and not force:
            lines.append("refusing to count: folds-and-cusps certificate is inconclusive (use --force)")
            report["error"] = "NotCertified"
            code = EXIT_INCONCLUSIVE
        else:
            rep = count_cusps(P, order, force=force, certificate=cert)
            report["cusps"] = report_to_json(rep)
            lines += _report_text(rep)
    if verbose and "derived" not in report:
        report["derived"] = derived_to_json(P)
        lines += _derived_text(P)
    report["exit_code"] = code
    report["timing_seconds"] = round(time.perf_counter() - start, 6)
    return code, report, lines


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cuspidal",
        description="Certify folds and cusps of a polynomial map on a surface and count cusps with signs.",
    )
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("file", help="input document ('-' for stdin)")
    ap.add_argument("--order", choices=("degrevlex", "lex"))
    ap.add_argument("--point", help="comma-separated rational coordinates (classify)")
    ap.add_argument("--force", action="store_true", help="count even without the certificate")
    ap.add_argument("--json", action="store_true", help="emit the full report as JSON")
    ap.add_argument("--verbose", action="store_true", help="include derived polynomials and bases")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.file == "-":
            text = sys.stdin.read()
        else:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        code, report, lines = run(args.command, text, args.order, args.point, args.force, args.verbose)
    except (OSError, ParseError, ValueError, InfiniteDimensional, NotCertified,
            StepLimitExceeded, ArithmeticError) as exc:
        if args.json:
            print(json.dumps({"command": args.command, "error": type(exc).__name__,
                              "message": str(exc), "exit_code": EXIT_ERROR}))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    sys.exit(main())
