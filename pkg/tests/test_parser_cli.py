import json
import shutil
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings

from cuspidal.cli import (
    EXIT_ERROR,
    EXIT_INCONCLUSIVE,
    EXIT_OK,
    derived_from_json,
    derived_to_json,
    main,
    parse_point,
    poly_from_json,
    poly_to_json,
    run,
)
from cuspidal.parser import ParseError, parse_input, parse_polynomial
from cuspidal.singularity import Problem

from .conftest import PROBLEMS, XYZ, polynomials

x, y, z = XYZ.gens()

WHITNEY_TEXT = "vars x y z\nh z\nf x\nf y^3 + x*y\n"
TRIVIAL_TEXT = "vars x y z\nh z\nf x\nf y\n"


def test_parse_example_one():
    doc = parse_input((PROBLEMS / "sphere_a.txt").read_text())
    assert doc.ctx.names == ("x", "y", "z")
    assert doc.h == [x**2 + y**2 + z**2 - 1]
    assert doc.f == [x * z**2 - z**2 - 2 * z, 2 * x**3 * z - y**3 + z**3 + 3 * y * z - z**2 - y]


def test_parse_whitney():
    P = parse_input(WHITNEY_TEXT).problem()
    assert tuple(P.ftilde) == (x, y**3 + x * y)
    assert tuple(P.h) == (z,)


def test_parse_statements():
    doc = parse_input("# comment\nvars x y z\n\nh z  # trailing\nf x\nf y\norder lex\nforce\n")
    assert doc.order == "lex" and doc.force


@pytest.mark.parametrize("text, fragment, line, column", [
    ("vars x y z w\nh z\nf x\nf y", "variable-count mismatch", None, None),
    ("vars x y z\nh z\nf x\nf y^3 + + x", "unexpected '+'", 4, 9),
    ("vars x y z\nh z\nf x\nf 2x", "missing '*'", 4, 4),
    ("vars x y z\nh q\nf x\nf y", "unknown identifier 'q'", 2, 3),
    ("vars x y z\nh z\nf x\nf y $", "unexpected character", 4, 5),
    ("vars x y z\nh z\nf x\nf y\nf z", "exactly two 'f'", None, None),
    ("h z\nvars x y z\nf x\nf y", "before 'vars'", 1, None),
    ("vars x y z\nvars x y z\nh z\nf x\nf y", "declared twice", 2, None),
    ("vars x y z\nh z\nf x\nf y\nfoo 1", "unknown statement", 5, 1),
    ("vars x y z\nh z\nf x\nf y\norder grlex", "unknown monomial order", 5, None),
])
def test_parse_errors(text, fragment, line, column):
    with pytest.raises(ParseError) as info:
        parse_input(text)
    assert fragment in str(info.value)
    assert info.value.line == line
    if column is not None:
        assert info.value.column == column


def test_parse_polynomial_forms():
    assert parse_polynomial("-(x - 1/2)^2", XYZ) == -(x - Fraction(1, 2)) ** 2
    assert parse_polynomial("3/4*x*y^0 - 0", XYZ) == Fraction(3, 4) * x
    with pytest.raises(ParseError):
        parse_polynomial("x^-1", XYZ)
    with pytest.raises(ParseError):
        parse_polynomial("1/0", XYZ)


@settings(max_examples=100, deadline=None)
@given(polynomials(max_terms=5, max_exp=4))
def test_print_parse_round_trip(p):
    assert parse_polynomial(p.to_str(), XYZ) == p


@settings(max_examples=50, deadline=None)
@given(polynomials(max_terms=5, max_exp=4))
def test_json_round_trip(p):
    data = json.loads(json.dumps(poly_to_json(p)))
    assert poly_from_json(data, XYZ) == p


def test_derived_json_round_trip():
    P = Problem([x, y**3 + x * y], [z])
    back = derived_from_json(json.loads(json.dumps(derived_to_json(P))), XYZ)
    assert back["d"] == P.d and back["v"] == P.v and back["delta"] == P.delta
    assert tuple(back["F"]) == tuple(P.F)


def test_parse_point():
    assert parse_point("1/2, 0,-3") == [Fraction(1, 2), 0, -3]
    with pytest.raises(ValueError):
        parse_point("0.5.1,0,0")


def test_run_derive_trivial():
    code, report, lines = run("derive", TRIVIAL_TEXT)
    assert code == EXIT_OK
    d = derived_from_json(report["derived"], XYZ)
    assert d["d"] == 1
    assert all(p.is_zero() for p in d["v"]) and len(d["v"]) == 3
    assert all(p.is_zero() for p in d["F"]) and d["delta"].is_zero()


def test_run_derive_whitney_text():
    _, _, lines = run("derive", WHITNEY_TEXT)
    assert lines == ["d = 3*y^2 + x", "v[1] = -6*y", "v[2] = 1", "v[3] = 0",
                     "F[1] = -6*y", "F[2] = -3*y^2 + x", "delta = 6"]


def test_run_classify_and_count_whitney():
    code, report, lines = run("classify", WHITNEY_TEXT, point="0,0,0")
    assert code == EXIT_OK and lines == ["Cusp, sign +1"]
    assert report["classification"] == {"kind": "Cusp", "sign": 1}
    code, report, _ = run("count", WHITNEY_TEXT)
    assert code == EXIT_OK
    assert report["cusps"]["total"] == 1 and report["cusps"]["signed_sum"] == 1


def test_run_exit_codes_degenerate():
    text = (PROBLEMS / "degenerate.txt").read_text()
    assert run("check-stable", text)[0] == EXIT_INCONCLUSIVE
    code, report, _ = run("count", text)
    assert code == EXIT_INCONCLUSIVE and report["error"] == "NotCertified"
    code, report, _ = run("count", text, force=True)
    assert code == EXIT_OK and report["cusps"]["verified"] is False
    assert run("classify", text, point="0,0,0")[2] == ["DegenerateSingularity"]
    assert run("check-manifold", text)[0] == EXIT_OK


def test_main_json_output(capsys):
    code = main(["count", str(PROBLEMS / "whitney_cusp.txt"), "--json"])
    out = json.loads(capsys.readouterr().out)
    assert code == EXIT_OK
    assert out["cusps"]["positive"] == 1 and out["exit_code"] == 0


def test_main_errors(capsys, tmp_path):
    assert main(["derive", str(tmp_path / "missing.txt")]) == EXIT_ERROR
    bad = tmp_path / "bad.txt"
    bad.write_text("vars x y z w\nh z\nf x\nf y\n")
    assert main(["derive", str(bad), "--json"]) == EXIT_ERROR
    out = json.loads(capsys.readouterr().out)
    assert out["error"] == "ParseError" and "mismatch" in out["message"]
    assert main(["classify", str(PROBLEMS / "whitney_cusp.txt"), "--point", "0,0"]) == EXIT_ERROR
    assert main(["classify", str(PROBLEMS / "whitney_cusp.txt")]) == EXIT_ERROR


def test_console_script():
    exe = shutil.which("cuspidal")
    cmd = [exe] if exe else [sys.executable, "-m", "cuspidal.cli"]
    res = subprocess.run(cmd + ["classify", str(PROBLEMS / "whitney_cusp.txt"), "--point", "0,0,0"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.strip() == "Cusp, sign +1"
