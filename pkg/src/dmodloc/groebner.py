"""Left Groebner bases in the Weyl algebra, for ideals and free modules.

The engine works fraction-free: basis elements are kept with primitive
integer coefficients and a positive leading coefficient, and reductions
rescale the running polynomial by integers instead of dividing.  Returned
bases are reduced (inter-reduced, tail-reduced), canonically normalized and
sorted, so identical inputs give bit-identical output.

Two Buchberger criteria prune S-pairs.  The coprimality criterion is only
safe here when the two elements actually commute, which we certify by
checking that their full supports share no conjugate (x_i, Dx_i) pair; it is
never applied to modules.  The chain criterion asks for a third leading
monomial dividing the pair's lcm whose two sub-pairs were both already
treated.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .orders import (Grevlex, HomogenizedWeightOrder, ModuleOrder, TermOrder,
                     WeightRefined, WeightVector, eliminate_spatial,
                     initial_form_w, tie_break_order)
from .weyl import (ContextMismatchError, Monomial, WeylContext, WeylElement,
                   _term_product, dehomogenize, homogenize)


class ResourceLimitExceeded(RuntimeError):
    """A configured step or degree cap was hit; the basis is too large."""

    def __init__(self, message: str, stage: Optional[str] = None):
        super().__init__(message)
        self.stage = stage


@dataclass(frozen=True)
class ResourceLimits:
    """Caps for the Buchberger loop; None means unlimited."""
    max_pairs: Optional[int] = None
    max_degree: Optional[int] = None


_NO_LIMITS = ResourceLimits()


# ---------------------------------------------------------------------------
# integer term-map helpers
# ---------------------------------------------------------------------------

def _int_terms(p: WeylElement) -> dict:
    """Clear denominators and strip integer content; {} for zero."""
    if p.is_zero:
        return {}
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // math.gcd(den, c.denominator)
    terms = {m: int(c * den) for m, c in p.terms.items()}
    return _primitive(terms)


def _primitive(terms: dict) -> dict:
    g = 0
    for c in terms.values():
        g = math.gcd(g, c)
        if g == 1:
            return terms
    if g > 1:
        return {m: c // g for m, c in terms.items()}
    return terms


def _divides(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _submul_int(acc: dict, ctx: WeylContext, coeff: int, mono: Monomial,
                terms: dict) -> None:
    """acc -= coeff * (mono o terms), in place."""
    for m2, c2 in terms.items():
        for mprod, k in _term_product(ctx, mono, m2):
            v = acc.get(mprod, 0) - coeff * c2 * k
            if v:
                acc[mprod] = v
            else:
                acc.pop(mprod, None)


class _Row:
    """One basis element in engine form (keys are monomials, or
    (component, monomial) pairs in the module engine)."""

    __slots__ = ("terms", "lm", "lc", "xmask", "dmask")

    def __init__(self, terms: dict, order, ctx: WeylContext,
                 module: bool = False):
        lm = max(terms, key=order.key)
        if terms[lm] < 0:
            terms = {m: -c for m, c in terms.items()}
        self.terms = terms
        self.lm = lm
        self.lc = terms[lm]
        xmask = dmask = 0
        for m in terms:
            mm = m[1] if module else m
            for p, (xi, di) in enumerate(ctx.pairs):
                if mm[xi]:
                    xmask |= 1 << p
                if mm[di]:
                    dmask |= 1 << p
        self.xmask = xmask
        self.dmask = dmask


def _nf_scaled(work: dict, rows: Sequence[_Row], order, ctx: WeylContext) -> dict:
    """Full normal form of an integer term map, up to a positive scalar."""
    key = order.key
    work = dict(work)
    done: dict = {}
    swell = 0
    while work:
        lm = max(work, key=key)
        c = work.pop(lm)
        red = None
        for r in rows:
            if _divides(r.lm, lm):
                red = r
                break
        if red is None:
            done[lm] = c
            continue
        work[lm] = c
        q = tuple(a - b for a, b in zip(lm, red.lm))
        g = math.gcd(c, red.lc)
        scale = red.lc // g
        if scale != 1:
            for m in work:
                work[m] *= scale
            for m in done:
                done[m] *= scale
            swell += scale.bit_length()
            if swell > 192:
                _joint_strip(work, done)
                swell = 0
        _submul_int(work, ctx, (c * scale) // red.lc, q, red.terms)
    return _primitive(done)


def _joint_strip(work: dict, done: dict) -> None:
    g = 0
    for c in work.values():
        g = math.gcd(g, c)
        if g == 1:
            return
    for c in done.values():
        g = math.gcd(g, c)
        if g == 1:
            return
    if g > 1:
        for m in work:
            work[m] //= g
        for m in done:
            done[m] //= g


# ---------------------------------------------------------------------------
# the Buchberger loop (left ideals)
# ---------------------------------------------------------------------------

def _is_constant_mono(m: Monomial) -> bool:
    return not any(m)


def _spair_int(ctx: WeylContext, ri: _Row, rj: _Row, lcm: Monomial) -> dict:
    qi = tuple(a - b for a, b in zip(lcm, ri.lm))
    qj = tuple(a - b for a, b in zip(lcm, rj.lm))
    g = math.gcd(ri.lc, rj.lc)
    s: dict = {}
    _submul_int(s, ctx, -(rj.lc // g), qi, ri.terms)
    _submul_int(s, ctx, ri.lc // g, qj, rj.terms)
    return s


def buchberger_left(gens: Iterable[WeylElement], order: TermOrder,
                    limits: ResourceLimits = _NO_LIMITS) -> "GroebnerBasis":
    """Reduced left Groebner basis of the ideal generated by ``gens``."""
    gens = [g for g in gens]
    if not gens:
        raise ValueError("no generators")
    ctx = gens[0].ctx
    for g in gens:
        if g.ctx != ctx:
            raise ContextMismatchError("generators from different contexts")
    if order.ctx != ctx:
        raise ContextMismatchError("order context mismatch")
    if not order.is_term_order:
        raise ValueError("order is not well-founded; homogenize first")

    rows: list[_Row] = []
    heap: list = []
    treated: set = set()

    def add_row(terms: dict) -> None:
        row = _Row(terms, order, ctx)
        j = len(rows)
        rows.append(row)
        for i in range(j):
            lcm = tuple(max(a, b) for a, b in zip(rows[i].lm, row.lm))
            heapq.heappush(heap, (sum(lcm), i, j, lcm))

    for g in gens:
        terms = _int_terms(g)
        if not terms:
            continue
        if all(_is_constant_mono(m) for m in terms):
            return _unit_basis(ctx, order)
        add_row(terms)
    if not rows:
        raise ValueError("all generators are zero")

    pairs_done = 0
    while heap:
        deg, i, j, lcm = heapq.heappop(heap)
        if limits.max_degree is not None and deg > limits.max_degree:
            raise ResourceLimitExceeded(
                f"S-pair lcm degree {deg} exceeds cap {limits.max_degree}; "
                "basis too large")
        pairs_done += 1
        if limits.max_pairs is not None and pairs_done > limits.max_pairs:
            raise ResourceLimitExceeded(
                f"more than {limits.max_pairs} S-pairs; basis too large")
        treated.add((i, j))
        ri, rj = rows[i], rows[j]
        # chain criterion
        skip = False
        for k in range(len(rows)):
            if k == i or k == j:
                continue
            if (_divides(rows[k].lm, lcm)
                    and (min(i, k), max(i, k)) in treated
                    and (min(j, k), max(j, k)) in treated):
                skip = True
                break
        if skip:
            continue
        # coprimality criterion, valid only when the elements fully commute
        if (all(a + b == c for a, b, c in zip(ri.lm, rj.lm, lcm))
                and not (ri.xmask & rj.dmask) and not (ri.dmask & rj.xmask)):
            continue
        s = _spair_int(ctx, ri, rj, lcm)
        if not s:
            continue
        r = _nf_scaled(s, rows, order, ctx)
        if not r:
            continue
        if all(_is_constant_mono(m) for m in r):
            return _unit_basis(ctx, order)
        add_row(r)

    reduced = _interreduce_int([row.terms for row in rows], order, ctx)
    return GroebnerBasis(ctx, order, _finalize(ctx, order, reduced))


def _unit_basis(ctx: WeylContext, order) -> "GroebnerBasis":
    return GroebnerBasis(ctx, order, (ctx.one(),))


def _interreduce_int(term_maps: Sequence[dict], order, ctx: WeylContext) -> list:
    """Minimalize by leading-monomial divisibility, then tail-reduce."""
    key = order.key
    items = sorted(term_maps, key=lambda t: key(max(t, key=key)))
    kept: list[dict] = []
    kept_lms: list[Monomial] = []
    for t in items:
        lm = max(t, key=key)
        if any(_divides(m, lm) for m in kept_lms):
            continue
        kept.append(t)
        kept_lms.append(lm)
    changed = True
    while changed:
        changed = False
        for idx in range(len(kept)):
            others = [_Row(t, order, ctx) for pos, t in enumerate(kept) if pos != idx]
            r = _nf_scaled(kept[idx], others, order, ctx)
            if r != kept[idx]:
                kept[idx] = r
                changed = True
    return kept


def _finalize(ctx: WeylContext, order, term_maps: Sequence[dict]):
    out = []
    for t in term_maps:
        t = _primitive(t)
        lm = max(t, key=order.key)
        if t[lm] < 0:
            t = {m: -c for m, c in t.items()}
        out.append(t)
    out.sort(key=lambda t: order.key(max(t, key=order.key)))
    return tuple(WeylElement(ctx, {m: Fraction(c) for m, c in t.items()},
                             _clean=True) for t in out)


def interreduce(gens: Iterable[WeylElement], order: TermOrder):
    """Inter-reduced, canonically normalized generators of the same ideal."""
    gens = list(gens)
    maps = [t for t in (_int_terms(g) for g in gens) if t]
    if not maps:
        return ()
    ctx = gens[0].ctx
    return _finalize(ctx, order, _interreduce_int(maps, order, ctx))


# ---------------------------------------------------------------------------
# exact normal form (public)
# ---------------------------------------------------------------------------

def left_normal_form(p: WeylElement, basis: Sequence[WeylElement],
                     order: TermOrder) -> WeylElement:
    """Remainder of left division of p by ``basis``: p - r lies in the left
    ideal and no term of r is divisible by a basis leading monomial."""
    ctx = p.ctx
    if order.ctx != ctx:
        raise ContextMismatchError("order context mismatch")
    rows = []
    for g in basis:
        if g.ctx != ctx:
            raise ContextMismatchError("basis context mismatch")
        if g.is_zero:
            continue
        lm = order.leading_monomial(g)
        rows.append((lm, g.terms[lm], g.terms))
    key = order.key
    work = dict(p.terms)
    done: dict = {}
    while work:
        lm = max(work, key=key)
        c = work.pop(lm)
        hit = None
        for rlm, rlc, rterms in rows:
            if _divides(rlm, lm):
                hit = (rlm, rlc, rterms)
                break
        if hit is None:
            done[lm] = c
            continue
        work[lm] = c
        rlm, rlc, rterms = hit
        q = tuple(a - b for a, b in zip(lm, rlm))
        _submul_int(work, ctx, c / rlc, q, rterms)
    return WeylElement(ctx, done, _clean=True)


def reduces_to_zero(p: WeylElement, basis: Sequence[WeylElement],
                    order: TermOrder) -> bool:
    return left_normal_form(p, basis, order).is_zero


def ideal_equal(gens_a: Sequence[WeylElement], gens_b: Sequence[WeylElement],
                order: Optional[TermOrder] = None,
                limits: ResourceLimits = _NO_LIMITS) -> bool:
    """Mutual Groebner reduction test for equality of left ideals."""
    gens_a, gens_b = list(gens_a), list(gens_b)
    ctx = gens_a[0].ctx
    if order is None:
        order = Grevlex(ctx)
    ga = buchberger_left(gens_a, order, limits)
    if not all(reduces_to_zero(b, ga.elements, order) for b in gens_b):
        return False
    gb = buchberger_left(gens_b, order, limits)
    return all(reduces_to_zero(a, gb.elements, order) for a in gens_a)


# ---------------------------------------------------------------------------
# basis containers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced left Groebner basis with its context and order."""
    ctx: WeylContext
    order: object
    elements: tuple

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def normal_form(self, p: WeylElement) -> WeylElement:
        return left_normal_form(p, self.elements, self.order)

    def contains(self, p: WeylElement) -> bool:
        return self.normal_form(p).is_zero


# ---------------------------------------------------------------------------
# free modules
# ---------------------------------------------------------------------------

class FreeModuleElement:
    """Element of D^m; component i stands for the basis symbol v^i."""

    __slots__ = ("components",)

    def __init__(self, components: Sequence[WeylElement]):
        components = tuple(components)
        if not components:
            raise ValueError("need at least one component")
        ctx = components[0].ctx
        for c in components:
            if c.ctx != ctx:
                raise ContextMismatchError("components from different contexts")
        self.components = components

    @property
    def ctx(self) -> WeylContext:
        return self.components[0].ctx

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.components)

    def padded(self, length: int) -> "FreeModuleElement":
        if length < len(self.components):
            for c in self.components[length:]:
                if not c.is_zero:
                    raise ValueError("cannot truncate a nonzero component")
            return FreeModuleElement(self.components[:length])
        zero = self.ctx.zero()
        return FreeModuleElement(self.components
                                 + (zero,) * (length - len(self.components)))

    def support_components(self):
        return [i for i, c in enumerate(self.components) if not c.is_zero]

    def __add__(self, other):
        if len(self.components) != len(other.components):
            raise ValueError("rank mismatch")
        return FreeModuleElement([a + b for a, b
                                  in zip(self.components, other.components)])

    def __sub__(self, other):
        if len(self.components) != len(other.components):
            raise ValueError("rank mismatch")
        return FreeModuleElement([a - b for a, b
                                  in zip(self.components, other.components)])

    def __neg__(self):
        return FreeModuleElement([-a for a in self.components])

    def left_mul(self, p: WeylElement) -> "FreeModuleElement":
        return FreeModuleElement([p * c for c in self.components])

    def __eq__(self, other):
        return (isinstance(other, FreeModuleElement)
                and self.components == other.components)

    def __hash__(self):
        return hash(self.components)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"

    def __repr__(self):
        return f"<FreeModuleElement {self}>"


def _module_int_terms(e: FreeModuleElement) -> dict:
    den = 1
    for c in e.components:
        for coeff in c.terms.values():
            den = den * coeff.denominator // math.gcd(den, coeff.denominator)
    terms = {}
    for comp, c in enumerate(e.components):
        for m, coeff in c.terms.items():
            terms[(comp, m)] = int(coeff * den)
    return _primitive(terms)


def _module_divides(a, b) -> bool:
    return a[0] == b[0] and _divides(a[1], b[1])


def _module_submul(acc: dict, ctx: WeylContext, coeff, mono: Monomial,
                   terms: dict) -> None:
    for (comp, m2), c2 in terms.items():
        for mprod, k in _term_product(ctx, mono, m2):
            key = (comp, mprod)
            v = acc.get(key, 0) - coeff * c2 * k
            if v:
                acc[key] = v
            else:
                acc.pop(key, None)


def _module_nf_scaled(work: dict, rows: Sequence[_Row], order: ModuleOrder,
                      ctx: WeylContext) -> dict:
    key = order.key
    work = dict(work)
    done: dict = {}
    while work:
        lm = max(work, key=key)
        c = work.pop(lm)
        red = None
        for r in rows:
            if _module_divides(r.lm, lm):
                red = r
                break
        if red is None:
            done[lm] = c
            continue
        work[lm] = c
        q = tuple(a - b for a, b in zip(lm[1], red.lm[1]))
        g = math.gcd(c, red.lc)
        scale = red.lc // g
        if scale != 1:
            for m in work:
                work[m] *= scale
            for m in done:
                done[m] *= scale
        _module_submul(work, ctx, (c * scale) // red.lc, q, red.terms)
    return _primitive(done)


def buchberger_module(gens: Iterable[FreeModuleElement], order: ModuleOrder,
                      limits: ResourceLimits = _NO_LIMITS) -> "ModuleGroebnerBasis":
    """Reduced left Groebner basis of a submodule of D^m."""
    gens = list(gens)
    if not gens:
        raise ValueError("no generators")
    ctx = gens[0].ctx
    ncomps = len(gens[0].components)
    for g in gens:
        if g.ctx != ctx or len(g.components) != ncomps:
            raise ValueError("mixed module generators")
    if order.ncomps != ncomps:
        raise ValueError("order rank mismatch")
    if not order.base.is_term_order:
        raise ValueError("base order is not well-founded")

    rows: list[_Row] = []
    heap: list = []
    treated: set = set()

    def add_row(terms: dict) -> None:
        row = _Row(terms, order, ctx, module=True)
        j = len(rows)
        rows.append(row)
        for i in range(j):
            if rows[i].lm[0] != row.lm[0]:
                continue
            lcm = tuple(max(a, b) for a, b in zip(rows[i].lm[1], row.lm[1]))
            heapq.heappush(heap, (sum(lcm), i, j, lcm))

    for g in gens:
        terms = _module_int_terms(g)
        if terms:
            add_row(terms)
    if not rows:
        raise ValueError("all generators are zero")

    pairs_done = 0
    while heap:
        deg, i, j, lcm = heapq.heappop(heap)
        if limits.max_degree is not None and deg > limits.max_degree:
            raise ResourceLimitExceeded(
                f"S-pair lcm degree {deg} exceeds cap {limits.max_degree}")
        pairs_done += 1
        if limits.max_pairs is not None and pairs_done > limits.max_pairs:
            raise ResourceLimitExceeded(
                f"more than {limits.max_pairs} S-pairs")
        treated.add((i, j))
        ri, rj = rows[i], rows[j]
        comp = ri.lm[0]
        skip = False
        for k in range(len(rows)):
            if k == i or k == j or rows[k].lm[0] != comp:
                continue
            if (_divides(rows[k].lm[1], lcm)
                    and (min(i, k), max(i, k)) in treated
                    and (min(j, k), max(j, k)) in treated):
                skip = True
                break
        if skip:
            continue
        qi = tuple(a - b for a, b in zip(lcm, ri.lm[1]))
        qj = tuple(a - b for a, b in zip(lcm, rj.lm[1]))
        g = math.gcd(ri.lc, rj.lc)
        s: dict = {}
        _module_submul(s, ctx, -(rj.lc // g), qi, ri.terms)
        _module_submul(s, ctx, ri.lc // g, qj, rj.terms)
        if not s:
            continue
        r = _module_nf_scaled(s, rows, order, ctx)
        if r:
            add_row(r)

    maps = _module_interreduce([row.terms for row in rows], order, ctx)
    elements = tuple(_module_element(ctx, ncomps, t, order) for t in maps)
    return ModuleGroebnerBasis(ctx, order, ncomps, elements)


def _module_interreduce(term_maps, order, ctx):
    key = order.key
    items = sorted(term_maps, key=lambda t: key(max(t, key=key)))
    kept, kept_lms = [], []
    for t in items:
        lm = max(t, key=key)
        if any(_module_divides(m, lm) for m in kept_lms):
            continue
        kept.append(t)
        kept_lms.append(lm)
    changed = True
    while changed:
        changed = False
        for idx in range(len(kept)):
            others = [_Row(t, order, ctx, module=True) for pos, t in enumerate(kept)
                      if pos != idx]
            r = _module_nf_scaled(kept[idx], others, order, ctx)
            if r != kept[idx]:
                kept[idx] = r
                changed = True
    return kept


def _module_element(ctx, ncomps, terms: dict, order) -> FreeModuleElement:
    terms = _primitive(terms)
    lm = max(terms, key=order.key)
    if terms[lm] < 0:
        terms = {m: -c for m, c in terms.items()}
    comps = [dict() for _ in range(ncomps)]
    for (comp, m), c in terms.items():
        comps[comp][m] = Fraction(c)
    return FreeModuleElement([WeylElement(ctx, t, _clean=True) for t in comps])


def module_normal_form(p: FreeModuleElement, basis: Sequence[FreeModuleElement],
                       order: ModuleOrder) -> FreeModuleElement:
    """Exact remainder of p under left division by module elements."""
    ctx = p.ctx
    ncomps = len(p.components)
    rows = []
    for g in basis:
        if g.is_zero:
            continue
        terms = {(comp, m): c for comp, elt in enumerate(g.components)
                 for m, c in elt.terms.items()}
        lm = max(terms, key=order.key)
        rows.append((lm, terms[lm], terms))
    key = order.key
    work = {(comp, m): c for comp, elt in enumerate(p.components)
            for m, c in elt.terms.items()}
    done: dict = {}
    while work:
        lm = max(work, key=key)
        c = work.pop(lm)
        hit = None
        for rlm, rlc, rterms in rows:
            if _module_divides(rlm, lm):
                hit = (rlm, rlc, rterms)
                break
        if hit is None:
            done[lm] = c
            continue
        work[lm] = c
        rlm, rlc, rterms = hit
        q = tuple(a - b for a, b in zip(lm[1], rlm[1]))
        _module_submul(work, ctx, c / rlc, q, rterms)
    comps = [dict() for _ in range(ncomps)]
    for (comp, m), c in done.items():
        comps[comp][m] = c
    return FreeModuleElement([WeylElement(ctx, t, _clean=True) for t in comps])


@dataclass(frozen=True)
class ModuleGroebnerBasis:
    ctx: WeylContext
    order: ModuleOrder
    ncomps: int
    elements: tuple

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def normal_form(self, p: FreeModuleElement) -> FreeModuleElement:
        return module_normal_form(p, self.elements, self.order)

    def contains(self, p: FreeModuleElement) -> bool:
        return self.normal_form(p).is_zero


# ---------------------------------------------------------------------------
# weight-adapted bases via homogenization
# ---------------------------------------------------------------------------

def gb_adapted_to_weight(gens: Iterable[WeylElement], w: WeightVector,
                         tie: str = "grevlex",
                         limits: ResourceLimits = _NO_LIMITS) -> GroebnerBasis:
    """Groebner basis adapted to the weight w.

    Computes in the homogenized context under (total degree, w-degree, tie)
    and dehomogenizes.  The initial forms of the result generate the initial
    ideal in_w, and the result generates the original ideal.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("no generators")
    ctx = gens[0].ctx
    if ctx.has_hom:
        raise ValueError("generators must live in a non-homogenized context")
    if w.ctx != ctx:
        raise ContextMismatchError("weight context mismatch")
    hctx = ctx.homogenized()
    hw = w.in_context(hctx)
    horder = HomogenizedWeightOrder(hw, tie_break_order(hctx, tie))
    gh = buchberger_left([homogenize(g) for g in gens], horder, limits)
    order = WeightRefined(w, tie_break_order(ctx, tie))
    seen = set()
    maps = []
    for g in gh.elements:
        t = _int_terms(dehomogenize(g))
        if not t:
            continue
        lm = max(t, key=order.key)
        if t[lm] < 0:
            t = {m: -c for m, c in t.items()}
        fingerprint = tuple(sorted(t.items()))
        if fingerprint in seen:
            continue
        seen.add(fingerprint)
        maps.append(t)
    maps.sort(key=lambda t: order.key(max(t, key=order.key)))
    elements = tuple(WeylElement(ctx, {m: Fraction(c) for m, c in t.items()},
                                 _clean=True) for t in maps)
    return GroebnerBasis(ctx, order, elements)


def initial_ideal_gens(basis: GroebnerBasis, w: WeightVector):
    """Initial forms of a w-adapted basis; they generate in_w of the ideal."""
    if not isinstance(basis.order, WeightRefined) or basis.order.w != w:
        raise ValueError("basis was not adapted to this weight")
    return tuple(initial_form_w(w, g) for g in basis.elements)


def eliminate_to_subalgebra(gens: Iterable[WeylElement],
                            limits: ResourceLimits = _NO_LIMITS):
    """Generators of (left ideal) intersect K<v, Dv>.

    Computes a basis under the block order eliminating every spatial pair
    and keeps the elements supported only on the auxiliary pair.
    """
    sub, _ = _eliminate_with_basis(gens, limits)
    return sub


def _eliminate_with_basis(gens, limits=_NO_LIMITS):
    gens = list(gens)
    ctx = gens[0].ctx
    order = eliminate_spatial(ctx)
    gb = buchberger_left(gens, order, limits)
    keep = {ctx.v_index, ctx.dv_index}
    sub = tuple(g for g in gb.elements if g.involves_only(keep))
    return sub, gb
