"""Independent check: act with operators on honest functions.

Rational functions are kept as numerator/denominator pairs of polynomials
with no gcd simplification; equality and the zero test go through
cross-multiplied polynomial identities, so every decision is exact.  A
TwistedFunction carries one optional exponential factor e^u with rational
u, which is what annihilator checks of 1/f and e^(1/f) need.

This module deliberately shares nothing with the Groebner machinery beyond
plain polynomial arithmetic, so it can confirm the pipeline's output
without trusting it.
"""

from __future__ import annotations

from typing import Sequence

from .weyl import WeylContext, WeylElement, poly_diff


class RationalFunction:
    """Quotient of polynomials in the x variables; denominator nonzero."""

    __slots__ = ("num", "den")

    def __init__(self, num: WeylElement, den: WeylElement):
        if num.ctx != den.ctx:
            raise ValueError("numerator and denominator contexts differ")
        if not (num.is_polynomial() and den.is_polynomial()):
            raise ValueError("rational functions live in the x variables")
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den

    @classmethod
    def from_polynomial(cls, p: WeylElement) -> "RationalFunction":
        return cls(p, p.ctx.one())

    @classmethod
    def zero(cls, ctx: WeylContext) -> "RationalFunction":
        return cls(ctx.zero(), ctx.one())

    @property
    def ctx(self) -> WeylContext:
        return self.num.ctx

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + (-other)

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if other.is_zero:
            raise ZeroDivisionError
        return RationalFunction(self.num * other.den, self.den * other.num)

    def scale(self, c) -> "RationalFunction":
        return RationalFunction(self.num.scale(c), self.den)

    def diff(self, i) -> "RationalFunction":
        """Quotient rule derivative in the i-th spatial variable."""
        return RationalFunction(
            poly_diff(self.num, i) * self.den - self.num * poly_diff(self.den, i),
            self.den * self.den)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero

    def __str__(self):
        if self.den == self.ctx.one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"<RationalFunction {self}>"


class TwistedFunction:
    """base * e^(exponent_arg); zero exactly when the base is zero."""

    __slots__ = ("base", "exponent_arg")

    def __init__(self, base: RationalFunction, exponent_arg: RationalFunction = None):
        if exponent_arg is None:
            exponent_arg = RationalFunction.zero(base.ctx)
        if base.ctx != exponent_arg.ctx:
            raise ValueError("base and exponent contexts differ")
        self.base = base
        self.exponent_arg = exponent_arg

    @classmethod
    def rational(cls, num: WeylElement, den: WeylElement) -> "TwistedFunction":
        return cls(RationalFunction(num, den))

    @property
    def ctx(self) -> WeylContext:
        return self.base.ctx

    @property
    def is_zero(self) -> bool:
        return self.base.is_zero

    def diff(self, i) -> "TwistedFunction":
        u = self.exponent_arg
        return TwistedFunction(self.base.diff(i) + self.base * u.diff(i), u)

    def mul_polynomial(self, p: WeylElement) -> "TwistedFunction":
        return TwistedFunction(self.base * RationalFunction.from_polynomial(p),
                               self.exponent_arg)

    def add_same_twist(self, other: "TwistedFunction") -> "TwistedFunction":
        return TwistedFunction(self.base + other.base, self.exponent_arg)

    def __eq__(self, other):
        if not isinstance(other, TwistedFunction):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        return (self.base == other.base
                and self.exponent_arg == other.exponent_arg)

    def __str__(self):
        if self.exponent_arg.is_zero:
            return str(self.base)
        return f"({self.base})*exp({self.exponent_arg})"

    def __repr__(self):
        return f"<TwistedFunction {self}>"


def apply_operator(p: WeylElement, func: TwistedFunction) -> TwistedFunction:
    """Act with a Weyl operator: x multiplies, Dx differentiates (product
    and chain rules), term by term with the derivative factors applied
    rightmost first."""
    ctx = p.ctx
    if ctx.has_aux or ctx.has_hom:
        raise ValueError("operators act through the plain context")
    if ctx != func.ctx:
        raise ValueError("operator and function variables differ")
    n = ctx.n
    total = TwistedFunction(RationalFunction.zero(ctx), func.exponent_arg)
    for mono, c in p.terms.items():
        g = func
        for i in range(n - 1, -1, -1):
            for _ in range(mono[n + i]):
                g = g.diff(i)
        xmono = tuple(e if j < n else 0 for j, e in enumerate(mono))
        g = g.mul_polynomial(ctx.element({xmono: c}))
        total = total.add_same_twist(g)
    return total


def is_annihilated(gens: Sequence[WeylElement], func: TwistedFunction) -> bool:
    """True when every operator sends the function to zero; exact."""
    return all(apply_operator(p, func).is_zero for p in gens)
