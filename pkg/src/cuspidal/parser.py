"""Input documents and polynomial expressions.

Document grammar, one statement per line (``#`` starts a comment)::

    vars x y z
    h x^2 + y^2 + z^2 - 1        # repeated n times, in orientation order
    f x*z^2 - z^2 - 2*z          # exactly twice
    f 2*x^3*z - y^3 + z^3 + 3*y*z - z^2 - y
    order lex                    # optional
    force                        # optional

Expressions use integer or ``a/b`` coefficients, explicit ``*``, ``^`` with a
non-negative integer exponent, ``+``, ``-`` and parentheses.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from .polyring import Polynomial, VariableContext


class ParseError(ValueError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}, column {column}: " if column is not None else f"line {line}: "
        super().__init__(where + message)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.end() == pos:
            break
        num, ident, op = m.groups()
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if num is not None:
            tokens.append(("num", int(num), start))
        elif ident is not None:
            tokens.append(("id", ident, start))
        elif op is not None:
            if op not in "+-*/^()":
                raise ParseError(f"unexpected character {op!r}", column=start + 1)
            tokens.append(("op", op, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _ExprParser:
    # expr   := ['+'|'-'] term (('+'|'-') term)*
    # term   := factor ('*' factor)*
    # factor := atom ['^' integer]
    # atom   := integer ['/' integer] | identifier | '(' expr ')' | '-' factor

    def __init__(self, text, ctx):
        self.tokens = _tokenize(text)
        self.i = 0
        self.ctx = ctx

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, column=tok[2] + 1)

    def expect_op(self, op):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            self.error(f"expected {op!r}", tok)

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        p = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return p

    def expr(self):
        tok = self.peek()
        sign = 1
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        p = self.term()
        if sign < 0:
            p = -p
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                q = self.term()
                p = p + q if tok[1] == "+" else p - q
            else:
                return p

    def term(self):
        p = self.factor()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                p = p * self.factor()
            elif tok[0] in ("num", "id") or (tok[0] == "op" and tok[1] == "("):
                self.error("missing '*' between factors")
            else:
                return p

    def factor(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            exp = self.take()
            if exp[0] != "num":
                self.error("exponent must be a non-negative integer", exp)
            return base ** exp[1]
        return base

    def atom(self):
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "/":
                self.take()
                den = self.take()
                if den[0] != "num":
                    self.error("expected an integer denominator", den)
                if den[1] == 0:
                    self.error("zero denominator", den)
                return self.ctx.constant(Fraction(val, den[1]))
            return self.ctx.constant(val)
        if kind == "id":
            if val not in self.ctx:
                self.error(f"unknown identifier {val!r}", tok)
            return self.ctx.gen(val)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        if kind == "op" and val == "-":
            return -self.factor()
        if kind == "end":
            self.error("unexpected end of expression", tok)
        self.error(f"unexpected {val!r}", tok)


def parse_polynomial(text: str, ctx: VariableContext) -> Polynomial:
    return _ExprParser(text, ctx).parse()


@dataclass
class InputDocument:
    ctx: VariableContext
    h: List[Polynomial]
    f: List[Polynomial]
    order: Optional[str] = None
    force: bool = False
    source: List[str] = field(default_factory=list, repr=False)

    def problem(self):
        from .singularity import Problem

        return Problem(self.f, self.h, self.ctx)


def parse_input(text: str) -> InputDocument:
    ctx = None
    h_lines, f_lines = [], []
    order = None
    force = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        keyword, _, rest = stripped.partition(" ")
        offset = line.index(stripped) + len(keyword) + 1
        if keyword == "vars":
            if ctx is not None:
                raise ParseError("'vars' declared twice", lineno)
            names = rest.split()
            if not names:
                raise ParseError("'vars' needs at least one name", lineno)
            for name in names:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
                    raise ParseError(f"invalid variable name {name!r}", lineno)
            try:
                ctx = VariableContext(names)
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
        elif keyword in ("h", "f"):
            if ctx is None:
                raise ParseError(f"'{keyword}' before 'vars'", lineno)
            try:
                poly = parse_polynomial(rest, ctx)
            except ParseError as exc:
                col = None if exc.column is None else exc.column + offset
                raise ParseError(exc.message, lineno, col) from None
            (h_lines if keyword == "h" else f_lines).append(poly)
        elif keyword == "order":
            if rest.strip() not in ("degrevlex", "lex"):
                raise ParseError(f"unknown monomial order {rest.strip()!r}", lineno)
            order = rest.strip()
        elif keyword == "force":
            force = True
        else:
            raise ParseError(f"unknown statement {keyword!r}", lineno, 1)
    if ctx is None:
        raise ParseError("missing 'vars' declaration")
    if len(f_lines) != 2:
        raise ParseError(f"expected exactly two 'f' lines, got {len(f_lines)}")
    if ctx.count != len(h_lines) + 2:
        raise ParseError(
            f"variable-count mismatch: {ctx.count} variables but {len(h_lines)} constraints "
            f"({ctx.count} != {len(h_lines)} + 2)"
        )
    return InputDocument(ctx, h_lines, f_lines, order, force, text.splitlines())
