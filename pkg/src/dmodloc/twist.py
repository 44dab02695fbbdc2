"""The substitution Dx_i -> Dx_i - v^2 f_i Dv and the localizing ideal.

``phi`` rewrites an operator so that it acts through the graph of 1/f: it
is a ring homomorphism because the substituted derivations still satisfy
the Weyl relations with the x variables and commute among themselves
(mixed partials of f are equal).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .groebner import FreeModuleElement
from .weyl import WeylContext, WeylElement, poly_diff, transfer

import math


def phi(p: WeylElement, f: WeylElement) -> WeylElement:
    """Substitute Dx_i -> Dx_i - v^2 (df/dx_i) Dv into a plain operator.

    ``p`` and ``f`` live in the plain context; the result lives in the
    context extended by the auxiliary pair.  The substituted factors are
    composed left to right in variable order; they commute, so the result
    does not depend on that choice.
    """
    ctx = p.ctx
    if ctx.has_aux:
        raise ValueError("operator already involves the auxiliary pair")
    if f.ctx != ctx:
        raise ValueError("operator and polynomial contexts differ")
    if not f.is_polynomial():
        raise ValueError("f must be a polynomial in the x variables")
    actx = ctx.with_aux()
    n = ctx.n
    v2dv = actx.v ** 2 * actx.dv
    subs = [transfer(ctx.d(i), actx) - transfer(poly_diff(f, i), actx) * v2dv
            for i in range(n)]
    powers = [{0: actx.one()} for _ in range(n)]

    def sub_power(i: int, e: int) -> WeylElement:
        cache = powers[i]
        if e not in cache:
            top = max(cache)
            acc = cache[top]
            for k in range(top + 1, e + 1):
                acc = acc * subs[i]
                cache[k] = acc
        return cache[e]

    out = actx.zero()
    for mono, c in p.terms.items():
        xpart = tuple(e if j < n else 0 for j, e in enumerate(mono))
        term = actx.element({xpart + (0, 0): c})
        for i in range(n):
            e = mono[n + i]
            if e:
                term = term * sub_power(i, e)
        out = out + term
    return out


@dataclass(frozen=True)
class LocalizingIdeal:
    """1 - f*v together with the twisted generators of J, inside D_v."""
    f: WeylElement
    generators: tuple
    source_gens: tuple

    @property
    def ctx(self) -> WeylContext:
        return self.generators[0].ctx


def build_localizing_ideal(f: WeylElement,
                           gens_j: Sequence[WeylElement]) -> LocalizingIdeal:
    """Generators {1 - f v} + {phi(P) for P in gens_j}."""
    if f.is_zero:
        raise ValueError("localization at zero is the zero module; refusing")
    ctx = f.ctx
    if not f.is_polynomial():
        raise ValueError("f must be a polynomial in the x variables")
    gens_j = tuple(gens_j)
    if not gens_j:
        raise ValueError("no generators for J")
    for g in gens_j:
        if g.ctx != ctx:
            raise ValueError("generator context mismatch")
        if g.is_zero:
            raise ValueError("zero generator in J")
    actx = ctx.with_aux()
    first = actx.one() - transfer(f, actx) * actx.v
    return LocalizingIdeal(f, (first,) + tuple(phi(g, f) for g in gens_j),
                           gens_j)


def normal_form_mod_right_dv(g: WeylElement) -> FreeModuleElement:
    """Normal form modulo the right ideal Dv * D_v, split by v-power.

    Anti-ordering the auxiliary pair and deleting the words led by Dv sends
    ``v^b Dv^a`` to ``(-1)^a a! C(b, a) v^(b-a)`` when a <= b and kills it
    otherwise; the residue is returned as a vector of plain-context
    coefficients indexed by the surviving v-power.
    """
    ctx = g.ctx
    if not ctx.has_aux:
        raise ValueError("context has no auxiliary pair")
    plain = ctx.without_aux()
    vi, dvi = ctx.v_index, ctx.dv_index
    comps: dict = {}
    for m, c in g.terms.items():
        b, a = m[vi], m[dvi]
        if a > b:
            continue
        coeff = c * ((-1) ** a) * math.factorial(a) * math.comb(b, a)
        mono = tuple(e for i, e in enumerate(m) if i not in (vi, dvi))
        comp = comps.setdefault(b - a, {})
        s = comp.get(mono, 0) + coeff
        if s:
            comp[mono] = s
        else:
            del comp[mono]
    length = max(comps, default=0) + 1
    return FreeModuleElement(
        [WeylElement(plain, comps.get(i, {}), _clean=True)
         for i in range(length)])
