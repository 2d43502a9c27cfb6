"""Text grammar for integer polynomials in Y and quadratics over F_2[X].

    expr   = [ "+" | "-" ] term { ( "+" | "-" ) term }
    term   = factor { [ "*" ] factor }
    factor = atom [ "^" integer ]
    atom   = integer | "X" | "Y" | "(" expr ")"

Whitespace is ignored. Juxtaposition multiplies, so ``3Y^2-4Y+9`` and
``(X+1)^3Y^2+(X+1)^2Y+X`` are both valid. An F_2[X] quadratic may also be
given as ``a=<poly>;b=<poly>;c=<poly>`` with polynomials in X.
"""

from __future__ import annotations

import re
from collections import defaultdict

from .dyadic import IntPoly
from .fps2 import F2Poly, F2YQuad

_TOKEN = re.compile(r"\s*(?:(\d+)|([XY])|([-+*^()]))")

class ParseError(ValueError):
    pass


def _tokens(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected input at {text[pos:]!r}")
        num, var, op = m.groups()
        out.append(("num", int(num)) if num else ("var", var) if var else ("op", op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            raise ParseError("empty polynomial")
        p = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input near token {self.i}")
        return p

    def expr(self):
        sign = 1
        if self.peek() in (("op", "+"), ("op", "-")):
            sign = -1 if self.take()[1] == "-" else 1
        acc = _scale(self.term(), sign)
        while self.peek() in (("op", "+"), ("op", "-")):
            sign = -1 if self.take()[1] == "-" else 1
            acc = _add(acc, _scale(self.term(), sign))
        return acc

    def term(self):
        acc = self.factor()
        while True:
            kind, val = self.peek()
            if (kind, val) == ("op", "*"):
                self.take()
            elif not (kind in ("num", "var") or (kind, val) == ("op", "(")):
                return acc
            acc = _mul(acc, self.factor())

    def factor(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, e = self.take()
            if kind != "num":
                raise ParseError("exponent must be a nonnegative integer")
            out = {(0, 0): 1}
            for _ in range(e):
                out = _mul(out, base)
            return out
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return {(0, 0): val}
        if kind == "var":
            return {(1, 0): 1} if val == "Y" else {(0, 1): 1}
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError("missing ')'")
            return inner
        raise ParseError(f"unexpected token {val!r}")


def _clean(p):
    return {k: v for k, v in p.items() if v}


def _scale(p, s):
    return {k: s * v for k, v in p.items()}


def _add(p, q):
    out = defaultdict(int, p)
    for k, v in q.items():
        out[k] += v
    return _clean(out)


def _mul(p, q):
    out = defaultdict(int)
    for (y1, x1), a in p.items():
        for (y2, x2), b in q.items():
            out[(y1 + y2, x1 + x2)] += a * b
    return _clean(out)


def parse_expr(text: str) -> dict[tuple[int, int], int]:
    """Polynomial as {(deg_Y, deg_X): integer coefficient}."""
    return _Parser(text).parse()


def parse_intpoly(text: str) -> IntPoly:
    p = parse_expr(text)
    if any(x for _, x in p):
        raise ParseError("integer polynomial must not contain X")
    if not p:
        raise ParseError("zero polynomial")
    deg = max(y for y, _ in p)
    return IntPoly(tuple(p.get((i, 0), 0) for i in range(deg + 1)))


def _f2_coeff(p, ydeg):
    bits = 0
    for (y, x), v in p.items():
        if y == ydeg and v % 2:
            bits |= 1 << x
    return F2Poly(bits)


def parse_f2quad(text: str) -> F2YQuad:
    """Quadratic in Y over F_2[X]; integer coefficients are reduced mod 2."""
    if "=" in text:
        parts = {}
        for item in text.split(";"):
            if not item.strip():
                continue
            key, _, val = item.partition("=")
            key = key.strip()
            if key not in ("a", "b", "c"):
                raise ParseError(f"unknown coefficient {key!r}")
            p = parse_expr(val)
            if any(y for y, _ in p):
                raise ParseError(f"coefficient {key} must not contain Y")
            parts[key] = _f2_coeff(p, 0)
        return F2YQuad(parts.get("a", F2Poly(0)), parts.get("b", F2Poly(0)), parts.get("c", F2Poly(0)))
    p = parse_expr(text)
    if any(y > 2 for y, _ in p):
        raise ParseError("degree in Y exceeds 2")
    return F2YQuad(_f2_coeff(p, 2), _f2_coeff(p, 1), _f2_coeff(p, 0))
