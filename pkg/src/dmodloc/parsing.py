"""Operator and function expression parsing.

Operator grammar: integers, rationals ``p/q``, variable identifiers,
``D<var>`` for the matching partial, ``+ - * ^ ( )``.  ``*`` is
noncommutative composition evaluated left to right in the Weyl algebra, so
``Dx*x`` parses to ``x*Dx+1``; ``^`` raises a single factor to a
nonnegative integer power; unary minus is allowed.  Printing an element
and reparsing it gives the element back.

Function expressions (for the oracle) additionally allow general ``/``,
negative integer exponents and one ``exp(...)`` factor.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .oracle import RationalFunction, TwistedFunction
from .weyl import WeylContext, WeylElement


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*^()/]))")


def _tokenize(src: str):
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            stripped = src[pos:].lstrip()
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}",
                             len(src) - len(stripped))
        if m.lastgroup == "int":
            tokens.append(("int", int(m.group("int")), m.start("int")))
        elif m.lastgroup == "name":
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", None, len(src)))
    return tokens


class _Cursor:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def accept(self, op: str) -> bool:
        kind, val, _ = self.peek()
        if kind == "op" and val == op:
            self.i += 1
            return True
        return False

    def expect(self, op: str):
        kind, val, pos = self.next()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)


def parse_operator(src: str, ctx: WeylContext) -> WeylElement:
    """Parse an operator expression in the given context."""
    cur = _Cursor(_tokenize(src))
    value = _op_expr(cur, ctx)
    kind, _, pos = cur.peek()
    if kind != "end":
        raise ParseError("trailing input", pos)
    return value


def parse_polynomial(src: str, ctx: WeylContext) -> WeylElement:
    """Parse an operator expression and require it to be a polynomial."""
    p = parse_operator(src, ctx)
    if not p.is_polynomial():
        raise ParseError("expected a polynomial in the x variables", 0)
    return p


def _op_expr(cur, ctx) -> WeylElement:
    value = _op_term(cur, ctx)
    while True:
        if cur.accept("+"):
            value = value + _op_term(cur, ctx)
        elif cur.accept("-"):
            value = value - _op_term(cur, ctx)
        else:
            return value


def _op_term(cur, ctx) -> WeylElement:
    value = _op_factor(cur, ctx)
    while cur.accept("*"):
        value = value * _op_factor(cur, ctx)
    return value


def _op_factor(cur, ctx) -> WeylElement:
    if cur.accept("-"):
        return -_op_factor(cur, ctx)
    value = _op_atom(cur, ctx)
    if cur.accept("^"):
        kind, val, pos = cur.next()
        if kind != "int":
            if kind == "op" and val == "-":
                raise ParseError("negative exponent", pos)
            raise ParseError("expected an integer exponent", pos)
        value = value ** val
    return value


def _op_atom(cur, ctx) -> WeylElement:
    kind, val, pos = cur.next()
    if kind == "op" and val == "(":
        inner = _op_expr(cur, ctx)
        cur.expect(")")
        return inner
    if kind == "int":
        # a '/' directly between integer literals is a rational literal
        k2, v2, _ = cur.peek()
        if k2 == "op" and v2 == "/":
            cur.next()
            k3, v3, p3 = cur.next()
            if k3 != "int":
                raise ParseError("expected an integer denominator", p3)
            if v3 == 0:
                raise ParseError("zero denominator", p3)
            return ctx.constant(Fraction(val, v3))
        return ctx.constant(val)
    if kind == "name":
        return _resolve_name(val, pos, ctx)
    raise ParseError(f"unexpected token {val!r}", pos)


def _resolve_name(name: str, pos: int, ctx: WeylContext) -> WeylElement:
    names = ctx.names
    if name in names:
        idx = names.index(name)
        return ctx._gen(idx)
    if name.startswith("D") and name[1:] in ctx.spatial:
        return ctx.d(name[1:])
    raise ParseError(f"unknown identifier {name!r}", pos)


# ---------------------------------------------------------------------------
# function expressions for the oracle
# ---------------------------------------------------------------------------

def parse_function(src: str, ctx: WeylContext) -> TwistedFunction:
    """Parse a rational function with an optional single exp(...) factor."""
    cur = _Cursor(_tokenize(src))
    value = _fn_expr(cur, ctx)
    kind, _, pos = cur.peek()
    if kind != "end":
        raise ParseError("trailing input", pos)
    return value


def _fn_add(a: TwistedFunction, b: TwistedFunction, pos: int) -> TwistedFunction:
    if a.is_zero:
        return b
    if b.is_zero:
        return a
    if a.exponent_arg != b.exponent_arg:
        raise ParseError("cannot add functions with different exponential factors", pos)
    return TwistedFunction(a.base + b.base, a.exponent_arg)


def _fn_mul(a: TwistedFunction, b: TwistedFunction) -> TwistedFunction:
    return TwistedFunction(a.base * b.base, a.exponent_arg + b.exponent_arg)


def _fn_inv(a: TwistedFunction, pos: int) -> TwistedFunction:
    if a.is_zero:
        raise ParseError("division by zero", pos)
    inv = RationalFunction(a.base.den, a.base.num)
    return TwistedFunction(inv, -a.exponent_arg)


def _fn_expr(cur, ctx) -> TwistedFunction:
    value = _fn_term(cur, ctx)
    while True:
        _, _, pos = cur.peek()
        if cur.accept("+"):
            value = _fn_add(value, _fn_term(cur, ctx), pos)
        elif cur.accept("-"):
            rhs = _fn_term(cur, ctx)
            value = _fn_add(value, TwistedFunction(-rhs.base, rhs.exponent_arg), pos)
        else:
            return value


def _fn_term(cur, ctx) -> TwistedFunction:
    value = _fn_factor(cur, ctx)
    while True:
        _, _, pos = cur.peek()
        if cur.accept("*"):
            value = _fn_mul(value, _fn_factor(cur, ctx))
        elif cur.accept("/"):
            value = _fn_mul(value, _fn_inv(_fn_factor(cur, ctx), pos))
        else:
            return value


def _fn_factor(cur, ctx) -> TwistedFunction:
    if cur.accept("-"):
        inner = _fn_factor(cur, ctx)
        return TwistedFunction(-inner.base, inner.exponent_arg)
    value = _fn_atom(cur, ctx)
    if cur.accept("^"):
        neg = cur.accept("-")
        kind, val, pos = cur.next()
        if kind != "int":
            raise ParseError("expected an integer exponent", pos)
        if neg:
            value = _fn_inv(value, pos)
        out = TwistedFunction(RationalFunction.from_polynomial(ctx.one()),
                              RationalFunction.zero(ctx))
        for _ in range(val):
            out = _fn_mul(out, value)
        return out
    return value


def _fn_atom(cur, ctx) -> TwistedFunction:
    kind, val, pos = cur.next()
    if kind == "op" and val == "(":
        inner = _fn_expr(cur, ctx)
        cur.expect(")")
        return inner
    if kind == "int":
        return TwistedFunction(RationalFunction.from_polynomial(ctx.constant(val)))
    if kind == "name":
        if val == "exp":
            cur.expect("(")
            arg = _fn_expr(cur, ctx)
            cur.expect(")")
            if not arg.exponent_arg.is_zero:
                raise ParseError("nested exponentials are not supported", pos)
            return TwistedFunction(RationalFunction.from_polynomial(ctx.one()),
                                   arg.base)
        if val in ctx.spatial:
            return TwistedFunction(RationalFunction.from_polynomial(ctx.x(val)))
        raise ParseError(f"unknown identifier {val!r}", pos)
    raise ParseError(f"unexpected token {val!r}", pos)
