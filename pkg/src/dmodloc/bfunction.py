"""The b-function for integration along Dv, and integer root extraction.

The weight grading of K<v, Dv> (weight 1 on v, -1 on Dv) makes every
graded piece a free K[theta]-module on one shift monomial, theta = v*Dv.
A homogeneous element of weight d therefore has a well defined theta
polynomial once it is shifted to weight zero, and the intersection of a
graded left ideal with K[theta] is generated by the gcd of the shifted
generators, K[theta] being a principal ideal domain.  Substituting
theta = -s - 1 yields the b-function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .groebner import (GroebnerBasis, ResourceLimits, _NO_LIMITS,
                       gb_adapted_to_weight, initial_ideal_gens,
                       left_normal_form, _eliminate_with_basis)
from .orders import WeightVector, ord_w
from .twist import LocalizingIdeal, build_localizing_ideal
from .weyl import WeylContext, WeylElement, format_terms


class BFunctionCertificateError(ArithmeticError):
    """The computed b-function failed its own membership certificate."""


@dataclass(frozen=True)
class ThetaPolynomial:
    """Univariate polynomial in theta = v*Dv, rational coefficients,
    constant term first."""
    coeffs: tuple

    @classmethod
    def from_coeffs(cls, coeffs) -> "ThetaPolynomial":
        coeffs = [Fraction(c) for c in coeffs]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        return cls(tuple(coeffs))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no degree")
        return len(self.coeffs) - 1

    def monic(self) -> "ThetaPolynomial":
        if self.is_zero:
            return self
        lead = self.coeffs[-1]
        return ThetaPolynomial(tuple(c / lead for c in self.coeffs))

    def __mul__(self, other: "ThetaPolynomial") -> "ThetaPolynomial":
        if self.is_zero or other.is_zero:
            return ThetaPolynomial(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return ThetaPolynomial.from_coeffs(out)

    def __mod__(self, other: "ThetaPolynomial") -> "ThetaPolynomial":
        if other.is_zero:
            raise ZeroDivisionError
        rem = list(self.coeffs)
        d = other.degree()
        lead = other.coeffs[-1]
        while len(rem) - 1 >= d and rem:
            k = len(rem) - 1 - d
            q = rem[-1] / lead
            for i, b in enumerate(other.coeffs):
                rem[k + i] -= q * b
            while rem and not rem[-1]:
                rem.pop()
        return ThetaPolynomial(tuple(rem))

    def gcd(self, other: "ThetaPolynomial") -> "ThetaPolynomial":
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a.monic()

    def to_element(self, ctx: WeylContext) -> WeylElement:
        """Expand back into the operator ring via theta = v*Dv."""
        theta = ctx.v * ctx.dv
        out = ctx.zero()
        power = ctx.one()
        for i, c in enumerate(self.coeffs):
            if i:
                power = power * theta
            out = out + power.scale(c)
        return out

    def substitute_minus_s_minus_one(self) -> "BPolynomial":
        """Return the primitive integer polynomial b(s) = self(-s - 1)."""
        # Horner in the linear form (-s - 1)
        acc = [Fraction(0)]
        for c in reversed(self.coeffs):
            # acc * (-s - 1) + c
            nxt = [Fraction(0)] * (len(acc) + 1)
            for i, a in enumerate(acc):
                nxt[i] -= a
                nxt[i + 1] -= a
            nxt[0] += c
            while len(nxt) > 1 and not nxt[-1]:
                nxt.pop()
            acc = nxt
        return BPolynomial.from_rational_coeffs(acc)

    def __str__(self):
        items = sorted(((e,), c) for e, c in enumerate(self.coeffs) if c)
        items.reverse()
        return format_terms(("@",), items).replace("@", "theta")


@dataclass(frozen=True)
class BPolynomial:
    """b(s) with primitive integer coefficients, constant term first,
    positive leading coefficient; the empty tuple flags the zero
    b-function (the reportable failure case)."""
    coeffs: tuple

    @classmethod
    def zero(cls) -> "BPolynomial":
        return cls(())

    @classmethod
    def from_rational_coeffs(cls, coeffs) -> "BPolynomial":
        coeffs = [Fraction(c) for c in coeffs]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        if not coeffs:
            return cls.zero()
        den = 1
        for c in coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in coeffs]
        g = 0
        for c in ints:
            g = math.gcd(g, c)
        if ints[-1] < 0:
            g = -g
        return cls(tuple(c // g for c in ints))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        if self.is_zero:
            raise ValueError("zero b-function has no degree")
        return len(self.coeffs) - 1

    def __call__(self, s):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * s + c
        return acc

    def to_theta_polynomial(self) -> ThetaPolynomial:
        """The theta form: substitute s = -theta - 1."""
        acc = [Fraction(0)]
        for c in reversed(self.coeffs):
            nxt = [Fraction(0)] * (len(acc) + 1)
            for i, a in enumerate(acc):
                nxt[i] -= a
                nxt[i + 1] -= a
            nxt[0] += c
            while len(nxt) > 1 and not nxt[-1]:
                nxt.pop()
            acc = nxt
        return ThetaPolynomial.from_coeffs(acc)

    def __str__(self):
        if self.is_zero:
            return "0"
        items = sorted(((e,), Fraction(c)) for e, c in enumerate(self.coeffs) if c)
        items.reverse()
        return format_terms(("s",), items)


def integer_roots(b: BPolynomial) -> list:
    """All integer roots, ascending, found by the rational root theorem."""
    if b.is_zero:
        raise ValueError("zero b-function has no roots")
    coeffs = list(b.coeffs)
    roots = set()
    while coeffs and coeffs[0] == 0:
        roots.add(0)
        coeffs.pop(0)
    if len(coeffs) > 1:
        const = abs(coeffs[0])
        for d in range(1, int(math.isqrt(const)) + 1):
            if const % d == 0:
                for cand in (d, -d, const // d, -(const // d)):
                    acc = 0
                    for c in reversed(coeffs):
                        acc = acc * cand + c
                    if acc == 0:
                        roots.add(cand)
    return sorted(roots)


def largest_nonneg_integer_root(b: BPolynomial) -> Optional[int]:
    """Largest nonnegative integer root, or None if there is none."""
    nonneg = [r for r in integer_roots(b) if r >= 0]
    return max(nonneg) if nonneg else None


# ---------------------------------------------------------------------------
# theta projection and the b-function pipeline
# ---------------------------------------------------------------------------

def theta_projection(g: WeylElement) -> ThetaPolynomial:
    """Shift a weight-homogeneous element of K<v, Dv> to weight zero and
    rewrite it as a polynomial in theta = v*Dv.

    An element of weight d is shifted by Dv^d (d >= 0) or v^(-d) (d < 0);
    the weight-zero result is a sum of v^a Dv^a = theta(theta-1)...(theta-a+1).
    """
    ctx = g.ctx
    if not ctx.has_aux:
        raise ValueError("context has no auxiliary pair")
    if not g.involves_only({ctx.v_index, ctx.dv_index}):
        raise ValueError("element involves spatial variables")
    if g.is_zero:
        raise ValueError("zero element")
    d = ord_w(g)
    vi, dvi = ctx.v_index, ctx.dv_index
    if any(m[vi] - m[dvi] != d for m in g.terms):
        raise ValueError("element is not weight-homogeneous")
    shifted = (ctx.dv ** d) * g if d >= 0 else (ctx.v ** (-d)) * g
    out = [Fraction(0)]
    for m, c in shifted.terms.items():
        a = m[vi]
        # falling factorial theta (theta-1) ... (theta-a+1)
        poly = [Fraction(1)]
        for k in range(a):
            nxt = [Fraction(0)] * (len(poly) + 1)
            for i, u in enumerate(poly):
                nxt[i] += u * (-k)
                nxt[i + 1] += u
            poly = nxt
        if len(poly) > len(out):
            out.extend([Fraction(0)] * (len(poly) - len(out)))
        for i, u in enumerate(poly):
            out[i] += c * u
    return ThetaPolynomial.from_coeffs(out)


def b_function_from_adapted_basis(basis: GroebnerBasis, w: WeightVector,
                                  limits: ResourceLimits = _NO_LIMITS,
                                  certify: bool = True) -> BPolynomial:
    """b(s) of a weight-adapted basis of the localizing ideal.

    Pipeline: initial forms -> eliminate the spatial pairs -> theta
    projection of each survivor -> gcd in K[theta] -> substitute
    theta = -s - 1.  Returns the zero b-function when the intersection
    is {0}.  The result is certified by reducing its theta form to zero
    against the elimination basis of the initial ideal.
    """
    in_gens = initial_ideal_gens(basis, w)
    sub, elim_gb = _eliminate_with_basis(in_gens, limits)
    if not sub:
        return BPolynomial.zero()
    acc = ThetaPolynomial(())
    for g in sub:
        acc = acc.gcd(theta_projection(g))
    b = acc.substitute_minus_s_minus_one()
    if certify:
        elt = b.to_theta_polynomial().to_element(basis.ctx)
        if not left_normal_form(elt, elim_gb.elements, elim_gb.order).is_zero:
            raise BFunctionCertificateError(
                "membership certificate failed for b(s) = %s" % b)
    return b


def integration_b_function(f: WeylElement, gens_j: Sequence[WeylElement],
                           tie: str = "grevlex",
                           limits: ResourceLimits = _NO_LIMITS) -> BPolynomial:
    """The b-function for integration along Dv of the localizing ideal of
    (f, J).  A zero result reports that the algorithm cannot certify a
    generator (the input need not be holonomic off the zero set of f)."""
    loc = build_localizing_ideal(f, gens_j)
    w = WeightVector.integration(loc.ctx)
    basis = gb_adapted_to_weight(loc.generators, w, tie=tie, limits=limits)
    return b_function_from_adapted_basis(basis, w, limits)
