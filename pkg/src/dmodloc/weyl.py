"""Exact arithmetic for normally ordered Weyl algebra elements.

An element is a finite sum of terms ``c * x^a * d^b`` with rational ``c``,
stored with every multiplication-variable factor to the left of every
derivation factor (normal order).  A :class:`WeylContext` fixes the variable
universe: ``n`` spatial pairs ``(x_i, Dx_i)``, optionally one auxiliary pair
``(v, Dv)`` and optionally a central homogenization variable ``h``.

The commutation rule is ``Dx*x = x*Dx + 1`` in ordinary contexts and
``Dx*x = x*Dx + h^2`` in homogenized ones; distinct pairs commute and ``h``
is central.  All arithmetic is exact over the rationals.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

Monomial = tuple  # exponent vector, one slot per context generator


class ContextMismatchError(ValueError):
    """Two elements from different variable universes were combined."""


def _fresh_name(base: str, taken: set) -> str:
    # never collide with a user variable or its D-prefixed partial token
    cand = base
    i = 0
    while cand in taken or ("D" + cand) in taken or cand.startswith("D"):
        i += 1
        cand = f"{base}{i}"
    return cand


class WeylContext:
    """Variable universe: spatial pairs, optional aux pair, optional h.

    Generator slots are ordered ``x_1..x_n, Dx_1..Dx_n, v, Dv, h`` (aux pair
    and h only when enabled).  Contexts compare by value, so independently
    built contexts with the same shape are interchangeable.
    """

    __slots__ = (
        "spatial", "has_aux", "has_hom", "n", "ngens", "names", "pairs",
        "v_index", "dv_index", "h_index", "_key", "_gens",
    )

    def __init__(self, spatial: Iterable[str], has_aux: bool = False,
                 has_hom: bool = False):
        spatial = tuple(spatial)
        if len(set(spatial)) != len(spatial):
            raise ValueError("duplicate variable names: %r" % (spatial,))
        self.spatial = spatial
        self.has_aux = bool(has_aux)
        self.has_hom = bool(has_hom)
        self.n = n = len(spatial)
        self.ngens = 2 * n + (2 if has_aux else 0) + (1 if has_hom else 0)

        taken = set(spatial)
        names = list(spatial) + ["D" + s for s in spatial]
        if has_aux:
            vname = _fresh_name("v", taken)
            names += [vname, "D" + vname]
            self.v_index = 2 * n
            self.dv_index = 2 * n + 1
        else:
            self.v_index = self.dv_index = -1
        if has_hom:
            names.append(_fresh_name("h", taken))
            self.h_index = self.ngens - 1
        else:
            self.h_index = -1
        self.names = tuple(names)

        pairs = [(i, n + i) for i in range(n)]
        if has_aux:
            pairs.append((self.v_index, self.dv_index))
        self.pairs = tuple(pairs)
        self._key = (spatial, self.has_aux, self.has_hom)
        self._gens = {}

    def __eq__(self, other):
        return isinstance(other, WeylContext) and self._key == other._key

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        extra = ("+aux" if self.has_aux else "") + ("+h" if self.has_hom else "")
        return f"WeylContext({', '.join(self.spatial)}{extra})"

    # -- derived contexts ------------------------------------------------

    def with_aux(self) -> "WeylContext":
        return WeylContext(self.spatial, has_aux=True, has_hom=self.has_hom)

    def without_aux(self) -> "WeylContext":
        return WeylContext(self.spatial, has_aux=False, has_hom=self.has_hom)

    def homogenized(self) -> "WeylContext":
        return WeylContext(self.spatial, has_aux=self.has_aux, has_hom=True)

    def dehomogenized(self) -> "WeylContext":
        return WeylContext(self.spatial, has_aux=self.has_aux, has_hom=False)

    # -- generators and constructors --------------------------------------

    def _gen(self, idx: int) -> "WeylElement":
        elt = self._gens.get(idx)
        if elt is None:
            mono = tuple(1 if i == idx else 0 for i in range(self.ngens))
            elt = WeylElement(self, {mono: Fraction(1)}, _clean=True)
            self._gens[idx] = elt
        return elt

    def x(self, i) -> "WeylElement":
        return self._gen(self._spatial_index(i))

    def d(self, i) -> "WeylElement":
        return self._gen(self.n + self._spatial_index(i))

    def _spatial_index(self, i) -> int:
        if isinstance(i, str):
            try:
                return self.spatial.index(i)
            except ValueError:
                raise KeyError(f"unknown variable {i!r}") from None
        if not 0 <= i < self.n:
            raise IndexError(i)
        return i

    @property
    def v(self) -> "WeylElement":
        if not self.has_aux:
            raise ValueError("context has no auxiliary pair")
        return self._gen(self.v_index)

    @property
    def dv(self) -> "WeylElement":
        if not self.has_aux:
            raise ValueError("context has no auxiliary pair")
        return self._gen(self.dv_index)

    @property
    def h(self) -> "WeylElement":
        if not self.has_hom:
            raise ValueError("context is not homogenized")
        return self._gen(self.h_index)

    def zero(self) -> "WeylElement":
        return WeylElement(self, {}, _clean=True)

    def one(self) -> "WeylElement":
        return self.constant(1)

    def constant(self, c) -> "WeylElement":
        c = Fraction(c)
        if not c:
            return self.zero()
        return WeylElement(self, {(0,) * self.ngens: c}, _clean=True)

    def element(self, terms: Mapping) -> "WeylElement":
        return WeylElement(self, terms)


def structural_key(m: Monomial):
    """Degree-reverse-lexicographic sort key on a full exponent vector."""
    return (sum(m), tuple(-e for e in reversed(m)))


def _term_product(ctx: WeylContext, m1: Monomial, m2: Monomial):
    """Normal-order ``(x^.. d^..) * (x^.. d^..)``; list of (monomial, int).

    Uses the closed-form reordering coefficient j! C(a,j) C(b,j) per
    conjugate pair; each swapped unit contributes h^2 in homogenized
    contexts.
    """
    active = [(xi, di, m1[di], m2[xi])
              for xi, di in ctx.pairs if m1[di] and m2[xi]]
    if not active:
        return [(tuple(a + b for a, b in zip(m1, m2)), 1)]
    h = ctx.h_index
    combos = [(list(map(sum, zip(m1, m2))), 1)]
    for xi, di, a, b in active:
        nxt = []
        for mono, k in combos:
            for j in range(min(a, b) + 1):
                kj = k * math.comb(a, j) * math.comb(b, j) * math.factorial(j)
                if j:
                    mm = list(mono)
                    mm[xi] -= j
                    mm[di] -= j
                    if h >= 0:
                        mm[h] += 2 * j
                    nxt.append((mm, kj))
                else:
                    nxt.append((mono, kj))
        combos = nxt
    return [(tuple(mono), k) for mono, k in combos]


def _mul_terms(ctx: WeylContext, t1: Mapping, t2: Mapping) -> dict:
    """Product of two term maps; coefficient type is preserved."""
    acc = {}
    for m1, c1 in t1.items():
        for m2, c2 in t2.items():
            c = c1 * c2
            for mono, k in _term_product(ctx, m1, m2):
                v = acc.get(mono)
                acc[mono] = c * k if v is None else v + c * k
    return {m: c for m, c in acc.items() if c}


class WeylElement:
    """A normally ordered operator: finite map monomial -> nonzero rational."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: WeylContext, terms: Mapping, _clean: bool = False):
        self.ctx = ctx
        if _clean:
            self.terms = dict(terms)
            return
        clean = {}
        for m, c in terms.items():
            m = tuple(m)
            if len(m) != ctx.ngens or any(e < 0 for e in m):
                raise ValueError(f"bad monomial {m} for {ctx!r}")
            c = Fraction(c)
            if c:
                clean[m] = c
        self.terms = clean

    # -- basic queries -----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError("not a constant")
        return self.terms.get((0,) * self.ctx.ngens, Fraction(0))

    def total_degree(self) -> int:
        if not self.terms:
            raise ValueError("zero element has no degree")
        return max(sum(m) for m in self.terms)

    def support_indices(self) -> set:
        out = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    out.add(i)
        return out

    def involves_only(self, indices) -> bool:
        allowed = set(indices)
        return all(i in allowed for i in self.support_indices())

    def is_polynomial(self) -> bool:
        """True when supported on spatial x variables only."""
        return self.involves_only(range(self.ctx.n))

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "WeylElement"):
        if self.ctx != other.ctx:
            raise ContextMismatchError(f"{self.ctx!r} vs {other.ctx!r}")

    def _coerce(self, other):
        if isinstance(other, WeylElement):
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check(other)
        acc = dict(self.terms)
        for m, c in other.terms.items():
            v = acc.get(m)
            s = c if v is None else v + c
            if s:
                acc[m] = s
            elif v is not None:
                del acc[m]
        return WeylElement(self.ctx, acc, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement(self.ctx, {m: -c for m, c in self.terms.items()},
                           _clean=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        self._check(other)
        return WeylElement(self.ctx, _mul_terms(self.ctx, self.terms, other.terms),
                           _clean=True)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "WeylElement":
        c = Fraction(c)
        if not c:
            return self.ctx.zero()
        return WeylElement(self.ctx, {m: c * v for m, v in self.terms.items()},
                           _clean=True)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = self.ctx.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ctx.constant(other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash((self.ctx, tuple(sorted(self.terms.items()))))

    def __bool__(self):
        return bool(self.terms)

    # -- presentation ----------------------------------------------------------

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: structural_key(t[0]),
                      reverse=True)

    def __str__(self):
        return format_terms(self.ctx.names, self.sorted_terms())

    def __repr__(self):
        return f"<WeylElement {self}>"


def format_terms(names, items) -> str:
    """Render ``[(exponent_tuple, coeff), ...]`` like ``-3*x*Dx+2``."""
    if not items:
        return "0"
    chunks = []
    for mono, c in items:
        factors = []
        for name, e in zip(names, mono):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append(f"{name}^{e}")
        body = "*".join(factors)
        neg = c < 0
        a = -c if neg else c
        if body:
            coeff = "" if a == 1 else f"{a}*"
            text = coeff + body
        else:
            text = str(a)
        if not chunks:
            chunks.append(("-" if neg else "") + text)
        else:
            chunks.append(("-" if neg else "+") + text)
    return "".join(chunks)


# ---------------------------------------------------------------------------
# auxiliary-pair reordering
# ---------------------------------------------------------------------------

def anti_normal_order_v(p: WeylElement) -> list:
    """Rewrite the (v, Dv) pair with Dv powers leftmost.

    Returns a list of words ``(coeff, dv_power, v_power, spatial_monomial)``
    meaning ``coeff * Dv^a * v^b * spatial``; the spatial part (x and Dx
    factors) stays normally ordered and commutes with the pair.  Summing the
    words back recovers ``p`` exactly.
    """
    ctx = p.ctx
    if not ctx.has_aux:
        raise ValueError("context has no auxiliary pair")
    vi, dvi = ctx.v_index, ctx.dv_index
    acc = {}
    for m, c in p.terms.items():
        b, a = m[vi], m[dvi]
        spatial = tuple(0 if i in (vi, dvi) else e for i, e in enumerate(m))
        for j in range(min(a, b) + 1):
            k = (-1) ** j * math.factorial(j) * math.comb(a, j) * math.comb(b, j)
            key = (a - j, b - j, spatial)
            acc[key] = acc.get(key, 0) + c * k
    words = [(c, a, b, sp) for (a, b, sp), c in acc.items() if c]
    words.sort(key=lambda w: (-w[1], -w[2], structural_key(w[3])))
    return words


def recompose_anti_words(ctx: WeylContext, words) -> WeylElement:
    """Multiply anti-ordered words back out; inverse of the reordering."""
    total = ctx.zero()
    for c, a, b, spatial in words:
        elt = (ctx.dv ** a) * (ctx.v ** b) * ctx.element({spatial: 1})
        total = total + elt.scale(c)
    return total


# ---------------------------------------------------------------------------
# homogenization
# ---------------------------------------------------------------------------

def homogenize(p: WeylElement) -> WeylElement:
    """Total-degree-homogeneous lift: pad every term with h up to max degree."""
    ctx = p.ctx
    if ctx.has_hom:
        raise ValueError("element is already homogenized")
    hctx = ctx.homogenized()
    if p.is_zero:
        return hctx.zero()
    dmax = p.total_degree()
    terms = {m + (dmax - sum(m),): c for m, c in p.terms.items()}
    return WeylElement(hctx, terms, _clean=True)


def dehomogenize(p: WeylElement) -> WeylElement:
    """Set h = 1."""
    ctx = p.ctx
    if not ctx.has_hom:
        raise ValueError("element is not homogenized")
    dctx = ctx.dehomogenized()
    acc = {}
    for m, c in p.terms.items():
        mm = m[:-1]
        v = acc.get(mm)
        s = c if v is None else v + c
        if s:
            acc[mm] = s
        elif v is not None:
            del acc[mm]
    return WeylElement(dctx, acc, _clean=True)


# ---------------------------------------------------------------------------
# context transfer and polynomial helpers
# ---------------------------------------------------------------------------

def transfer(p: WeylElement, target: WeylContext) -> WeylElement:
    """Reinterpret ``p`` in ``target``, matching generators by role and name.

    Raises if a generator actually used by ``p`` has no slot in ``target``.
    """
    src = p.ctx
    if src == target:
        return p
    slot = []
    for i in range(src.ngens):
        if i < src.n:
            j = target.spatial.index(src.spatial[i]) if src.spatial[i] in target.spatial else None
        elif i < 2 * src.n:
            name = src.spatial[i - src.n]
            j = target.n + target.spatial.index(name) if name in target.spatial else None
        elif i == src.v_index:
            j = target.v_index if target.has_aux else None
        elif i == src.dv_index:
            j = target.dv_index if target.has_aux else None
        else:
            j = target.h_index if target.has_hom else None
        slot.append(j)
    out = {}
    for m, c in p.terms.items():
        mm = [0] * target.ngens
        for i, e in enumerate(m):
            if not e:
                continue
            j = slot[i]
            if j is None:
                raise ValueError(
                    f"generator {src.names[i]!r} has no slot in {target!r}")
            mm[j] = e
        out[tuple(mm)] = c
    return WeylElement(target, out, _clean=True)


def poly_diff(p: WeylElement, i) -> WeylElement:
    """Exponent-rule derivative in the i-th spatial variable (polynomials)."""
    ctx = p.ctx
    idx = ctx._spatial_index(i)
    acc = {}
    for m, c in p.terms.items():
        e = m[idx]
        if not e:
            continue
        mm = list(m)
        mm[idx] = e - 1
        acc[tuple(mm)] = c * e
    return WeylElement(ctx, acc, _clean=True)
