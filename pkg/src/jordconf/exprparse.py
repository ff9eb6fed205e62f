"""Parser for the operator expression grammar used by the CLI.

Whitespace-insensitive.  Atoms are the coordinates ``x t``, derivatives
``dx dt``, shifts ``Tx Tt``, forward differences ``Dx Dt``, the parameters
``tau sigma mu nu``, and integer or rational literals ``p/q``.  Operators are
``+ - * ^`` and parentheses; ``^`` takes an integer exponent, negative only
directly on a shift atom.  Example: ``(nu*dx^2 - mu*Dt^2)``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .poly import POLICY_LAURENT, ParamPoly
from .ore import OreElement, atom, forward_difference

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([()+\-*^/]))")

PARAM_NAMES = ("tau", "sigma", "mu", "nu")
SHIFT_NAMES = ("Tx", "Tt")
ATOM_NAMES = ("x", "t", "dx", "dt", "Tx", "Tt", "Dx", "Dt") + PARAM_NAMES


class ExprError(ValueError):
    """Malformed expression."""


def _tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            remainder = text[pos:].strip()
            if not remainder:
                break
            raise ExprError(f"unexpected character {remainder[0]!r}")
        if match.group(1) is not None:
            out.append(("int", int(match.group(1))))
        elif match.group(2) is not None:
            out.append(("name", match.group(2)))
        else:
            out.append(("op", match.group(3)))
        pos = match.end()
    out.append(("end", None))
    return out


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, symbol):
        kind, value = self.next()
        if kind != "op" or value != symbol:
            raise ExprError(f"expected {symbol!r}, found {value!r}")

    def parse(self):
        value = self.expr()
        kind, value_tok = self.peek()
        if kind != "end":
            raise ExprError(f"trailing input at {value_tok!r}")
        return value

    def expr(self):
        value = self.term()
        while True:
            kind, symbol = self.peek()
            if kind == "op" and symbol in "+-":
                self.next()
                rhs = self.term()
                value = value + rhs if symbol == "+" else value - rhs
            else:
                return value

    def term(self):
        value = self.unary()
        while True:
            kind, symbol = self.peek()
            if kind == "op" and symbol == "*":
                self.next()
                value = value * self.unary()
            else:
                return value

    def unary(self):
        sign = 1
        while True:
            kind, symbol = self.peek()
            if kind == "op" and symbol in "+-":
                self.next()
                if symbol == "-":
                    sign = -sign
            else:
                break
        value = self.power()
        return value if sign > 0 else -value

    def power(self):
        base, shift_name = self.atom()
        kind, symbol = self.peek()
        if kind == "op" and symbol == "^":
            self.next()
            exponent = self.signed_int()
            if exponent < 0:
                if shift_name is None:
                    raise ExprError("negative exponents are allowed only on Tx and Tt")
                return atom(shift_name, exponent)
            return base ** exponent
        return base

    def signed_int(self):
        negative = False
        kind, symbol = self.peek()
        if kind == "op" and symbol == "-":
            self.next()
            negative = True
        kind, value = self.next()
        if kind != "int":
            raise ExprError("exponent must be an integer")
        return -value if negative else value

    def atom(self):
        kind, value = self.next()
        if kind == "int":
            numerator = value
            kind2, symbol = self.peek()
            if kind2 == "op" and symbol == "/":
                self.next()
                kind3, denom = self.next()
                if kind3 != "int" or denom == 0:
                    raise ExprError("malformed rational literal")
                return OreElement.from_coeff(Fraction(numerator, denom)), None
            return OreElement.from_coeff(Fraction(numerator)), None
        if kind == "name":
            if value in PARAM_NAMES:
                return OreElement.from_coeff(
                    ParamPoly.var(value, laurent=POLICY_LAURENT)), None
            if value in ("Dx", "Dt"):
                return forward_difference("x" if value == "Dx" else "t"), None
            if value in ("x", "t", "dx", "dt", "Tx", "Tt"):
                shift = value if value in SHIFT_NAMES else None
                return atom(value), shift
            raise ExprError(f"unknown symbol {value!r}")
        if kind == "op" and value == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner, None
        raise ExprError(f"unexpected token {value!r}")


def parse_operator(text):
    """Parse an expression into an exact operator."""
    return _Parser(_tokenize(text)).parse()


def parse_polynomial(text):
    """Parse an expression that must be a plain polynomial in x and t."""
    op = parse_operator(text)
    out = ParamPoly.zero(POLICY_LAURENT)
    for (i, j, a, b, m, n), coeff in op.terms.items():
        if a or b or m or n:
            raise ExprError("expected a polynomial, found derivative or shift symbols")
        out = out + coeff * ParamPoly.var("x", laurent=POLICY_LAURENT) ** i \
            * ParamPoly.var("t", laurent=POLICY_LAURENT) ** j
    if out.min_exponent("tau") < 0 or out.min_exponent("sigma") < 0:
        raise ExprError("polynomial coefficients cannot carry lattice-constant poles")
    return ParamPoly(out.terms)
