"""Term orders, weight vectors, w-degrees and initial forms.

Every order exposes a ``key`` function mapping a monomial to a tuple that
compares the way the order does; larger key means larger monomial.  Keys are
memoized per order instance, so repeated leading-monomial extraction inside
the Groebner engine stays cheap.
"""

from __future__ import annotations

from .weyl import Monomial, WeylContext, WeylElement, structural_key

LT, EQ, GT = -1, 0, 1


class WeightVector:
    """One integer weight per context generator.

    Paired generators must have weights summing to >= 0 and h (when present)
    must have weight 0, so that leading terms of products behave.
    """

    __slots__ = ("ctx", "weights")

    def __init__(self, ctx: WeylContext, weights):
        weights = tuple(int(w) for w in weights)
        if len(weights) != ctx.ngens:
            raise ValueError("weight vector length mismatch")
        for xi, di in ctx.pairs:
            if weights[xi] + weights[di] < 0:
                raise ValueError(
                    f"pair ({ctx.names[xi]}, {ctx.names[di]}) has negative weight sum")
        if ctx.has_hom and weights[ctx.h_index] != 0:
            raise ValueError("h must have weight 0")
        self.ctx = ctx
        self.weights = weights

    @classmethod
    def from_map(cls, ctx: WeylContext, assignments: dict) -> "WeightVector":
        """Build from {generator name: weight}; unnamed generators get 0."""
        w = [0] * ctx.ngens
        names = list(ctx.names)
        for name, val in assignments.items():
            w[names.index(name)] = val
        return cls(ctx, w)

    @classmethod
    def integration(cls, ctx: WeylContext) -> "WeightVector":
        """Weight 1 on v, -1 on Dv, 0 elsewhere."""
        if not ctx.has_aux:
            raise ValueError("context has no auxiliary pair")
        w = [0] * ctx.ngens
        w[ctx.v_index] = 1
        w[ctx.dv_index] = -1
        return cls(ctx, w)

    def degree(self, m: Monomial) -> int:
        return sum(w * e for w, e in zip(self.weights, m) if e)

    def in_context(self, ctx: WeylContext) -> "WeightVector":
        """The same named weights in another context (new slots get 0)."""
        assignments = {self.ctx.names[i]: w
                       for i, w in enumerate(self.weights) if w}
        return WeightVector.from_map(ctx, assignments)

    def pair_sums_zero(self) -> bool:
        return all(self.weights[a] + self.weights[b] == 0 for a, b in self.ctx.pairs)

    def __eq__(self, other):
        return (isinstance(other, WeightVector)
                and self.ctx == other.ctx and self.weights == other.weights)

    def __hash__(self):
        return hash((self.ctx, self.weights))

    def __repr__(self):
        return f"WeightVector{self.weights}"


def w_degree(w: WeightVector, m: Monomial) -> int:
    return w.degree(m)


def initial_form_w(w: WeightVector, p: WeylElement) -> WeylElement:
    """Sum of the terms of maximal w-degree, as an element of the same ring.

    Requires paired weights summing to zero; only then is the associated
    graded ring again a Weyl algebra and the result multiplicative.
    """
    if p.ctx != w.ctx:
        raise ValueError("weight vector and element contexts differ")
    if p.is_zero:
        raise ValueError("zero element has no initial form")
    if not w.pair_sums_zero():
        raise ValueError("initial form needs paired weights summing to zero")
    degs = {m: w.degree(m) for m in p.terms}
    top = max(degs.values())
    return WeylElement(p.ctx, {m: c for m, c in p.terms.items() if degs[m] == top},
                       _clean=True)


def ord_w(g: WeylElement) -> int:
    """Max of (v-exponent - Dv-exponent) over the terms of g."""
    ctx = g.ctx
    if not ctx.has_aux:
        raise ValueError("context has no auxiliary pair")
    if g.is_zero:
        raise ValueError("zero element has no order")
    vi, dvi = ctx.v_index, ctx.dv_index
    return max(m[vi] - m[dvi] for m in g.terms)


# ---------------------------------------------------------------------------
# term orders
# ---------------------------------------------------------------------------

class TermOrder:
    """Total multiplicative order on monomials of one context."""

    is_term_order = True  # well-founded unless a subclass says otherwise

    def __init__(self, ctx: WeylContext):
        self.ctx = ctx
        self._cache = {}

    def _key(self, m: Monomial):
        raise NotImplementedError

    def key(self, m: Monomial):
        k = self._cache.get(m)
        if k is None:
            k = self._key(m)
            self._cache[m] = k
        return k

    def compare(self, m1: Monomial, m2: Monomial) -> int:
        k1, k2 = self.key(m1), self.key(m2)
        return LT if k1 < k2 else (EQ if k1 == k2 else GT)

    def leading_monomial(self, p: WeylElement) -> Monomial:
        if p.is_zero:
            raise ValueError("zero element has no leading monomial")
        return max(p.terms, key=self.key)

    def leading_term(self, p: WeylElement):
        m = self.leading_monomial(p)
        return m, p.terms[m]

    def sorted_terms(self, p: WeylElement, reverse: bool = True):
        return sorted(p.terms.items(), key=lambda t: self.key(t[0]),
                      reverse=reverse)

    def __eq__(self, other):
        return type(self) is type(other) and self._ident() == other._ident()

    def __hash__(self):
        return hash((type(self).__name__, self._ident()))

    def _ident(self):
        return self.ctx

    def __repr__(self):
        return type(self).__name__


class Grevlex(TermOrder):
    """Degree-reverse-lexicographic over the full generator list."""

    def _key(self, m):
        return structural_key(m)


class Lex(TermOrder):
    """Pure lexicographic in context generator order."""

    def _key(self, m):
        return m


class BlockOrder(TermOrder):
    """Compare blocks of generators left to right, grevlex inside each.

    Conjugate pairs may not straddle a block boundary: eliminating only one
    member of a pair is unsound in the Weyl algebra.
    """

    def __init__(self, ctx: WeylContext, blocks):
        super().__init__(ctx)
        blocks = tuple(tuple(b) for b in blocks)
        seen = [i for b in blocks for i in b]
        if sorted(seen) != list(range(ctx.ngens)):
            raise ValueError("blocks must partition the generators")
        for xi, di in ctx.pairs:
            if not any(xi in b and di in b for b in blocks):
                raise ValueError("a conjugate pair straddles a block boundary")
        self.blocks = blocks

    def _key(self, m):
        return tuple(structural_key(tuple(m[i] for i in b)) for b in self.blocks)

    def _ident(self):
        return (self.ctx, self.blocks)


def eliminate_spatial(ctx: WeylContext) -> BlockOrder:
    """Block order with every (x_i, Dx_i) pair ahead of the (v, Dv) pair."""
    if not ctx.has_aux:
        raise ValueError("context has no auxiliary pair")
    spatial = tuple(range(2 * ctx.n))
    kept = (ctx.v_index, ctx.dv_index)
    rest = tuple(i for i in range(ctx.ngens) if i not in spatial + kept)
    if rest:  # h, if present, sorts in its own last block
        return BlockOrder(ctx, (spatial, kept, rest))
    return BlockOrder(ctx, (spatial, kept))


class WeightRefined(TermOrder):
    """Weight degree first, then a tie-break order.

    Well-founded (usable as a reduction order) only when every weight is
    nonnegative; for mixed-sign weights compute through the homogenized
    context instead.
    """

    def __init__(self, w: WeightVector, tie: TermOrder):
        if w.ctx != tie.ctx:
            raise ValueError("weight and tie-break contexts differ")
        super().__init__(w.ctx)
        self.w = w
        self.tie = tie

    @property
    def is_term_order(self):
        return all(x >= 0 for x in self.w.weights) and self.tie.is_term_order

    def _key(self, m):
        return (self.w.degree(m), self.tie.key(m))

    def _ident(self):
        return (self.ctx, self.w.weights, self.tie)


class HomogenizedWeightOrder(TermOrder):
    """Total degree (h included), then w-degree, then a tie-break.

    The standard device for running Buchberger with weights of mixed sign:
    in the homogenized Weyl algebra this is a genuine term order.
    """

    def __init__(self, w: WeightVector, tie: TermOrder):
        if not w.ctx.has_hom:
            raise ValueError("homogenized context required")
        if w.ctx != tie.ctx:
            raise ValueError("weight and tie-break contexts differ")
        super().__init__(w.ctx)
        self.w = w
        self.tie = tie

    def _key(self, m):
        return (sum(m), self.w.degree(m), self.tie.key(m))

    def _ident(self):
        return (self.ctx, self.w.weights, self.tie)


TIE_BREAKS = {"grevlex": Grevlex, "lex": Lex}


def tie_break_order(ctx: WeylContext, name: str) -> TermOrder:
    try:
        return TIE_BREAKS[name](ctx)
    except KeyError:
        raise ValueError(f"unknown tie-break {name!r}; choose from "
                         f"{sorted(TIE_BREAKS)}") from None


# ---------------------------------------------------------------------------
# free module orders
# ---------------------------------------------------------------------------

class ModuleOrder:
    """Position-over-term order on D^m: component priority, then base order."""

    def __init__(self, base: TermOrder, priority):
        priority = tuple(priority)
        if sorted(priority) != list(range(len(priority))):
            raise ValueError("priority must list each component exactly once")
        self.base = base
        self.ctx = base.ctx
        self.ncomps = len(priority)
        self.priority = priority
        rank = [0] * self.ncomps
        for pos, comp in enumerate(priority):
            rank[comp] = self.ncomps - 1 - pos
        self._rank = tuple(rank)
        self._cache = {}

    def key(self, cm):
        k = self._cache.get(cm)
        if k is None:
            comp, m = cm
            k = (self._rank[comp], self.base.key(m))
            self._cache[cm] = k
        return k

    def compare(self, cm1, cm2) -> int:
        k1, k2 = self.key(cm1), self.key(cm2)
        return LT if k1 < k2 else (EQ if k1 == k2 else GT)

    def __repr__(self):
        return f"ModuleOrder(priority={self.priority})"


def component_last_order(base: TermOrder, k: int) -> ModuleOrder:
    """Eliminate components 0..k-1 ahead of component k (lower index first)."""
    return ModuleOrder(base, tuple(range(k + 1)))
