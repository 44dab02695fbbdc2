"""Degree-zero integration along Dv: the truncated generator set G_k and
the annihilator of the coset of v^k.

Positive-weight parts of the localizing ideal die in the quotient by the
right ideal Dv*D_v, so for each basis element g only the shifts v^i g with
i <= k - ord_w(g) can land inside the span of v^0..v^k.  Their residues
generate the integral as a submodule of D^(k+1); intersecting with the last
free summand (an elimination order on components) yields the annihilator.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .groebner import (FreeModuleElement, GroebnerBasis, ResourceLimits,
                       _NO_LIMITS, buchberger_left, buchberger_module,
                       interreduce, module_normal_form)
from .orders import Grevlex, ModuleOrder, component_last_order, ord_w
from .twist import normal_form_mod_right_dv
from .weyl import WeylContext, WeylElement


@dataclass(frozen=True)
class IntegrationProblem:
    """A weight-adapted basis of the localizing ideal plus the bound k."""
    basis: GroebnerBasis
    k: int


def build_gk(basis, k: int) -> list:
    """Residues normalForm(v^i g, Dv*D_v) for g in the basis, 0 <= i <= k - ord_w(g).

    Every result lies in the span of v^0..v^k (the surviving v-degree of a
    residue is bounded by the w-order of the shifted element); results are
    padded to k + 1 components and zero residues are dropped.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    elements = list(basis.elements) if isinstance(basis, GroebnerBasis) else list(basis)
    out = []
    for g in elements:
        ctx = g.ctx
        top = k - ord_w(g)
        shifted = g
        for i in range(top + 1):
            if i:
                shifted = ctx.v * shifted
            nf = normal_form_mod_right_dv(shifted)
            if nf.is_zero:
                continue
            if len(nf.components) > k + 1:
                raise AssertionError(
                    "residue exceeds component bound: ord_w arithmetic broken")
            out.append(nf.padded(k + 1))
    return out


def annihilator_of_vk(gk: Sequence[FreeModuleElement], k: int,
                      limits: ResourceLimits = _NO_LIMITS) -> tuple:
    """Generators of the annihilator over D of the coset of v^k.

    Eliminates components 0..k-1 with a position-over-term order and keeps
    the component-k parts of basis elements supported there alone.  An empty
    ``gk`` gives the zero ideal; a unit in the result means the localized
    module is zero.
    """
    gk = [e for e in gk if not e.is_zero]
    if not gk:
        return ()
    ctx = gk[0].ctx
    base = Grevlex(ctx)
    if k == 0:
        # D^1 is D itself
        gb = buchberger_left([e.components[0] for e in gk], base, limits)
        return gb.elements
    order = component_last_order(base, k)
    reduced = _interreduce_module(gk, order, ctx)
    gb = buchberger_module(reduced, order, limits)
    picked = tuple(e.components[k] for e in gb.elements
                   if e.support_components() == [k])
    for p in picked:
        witness = FreeModuleElement(
            [ctx.zero()] * k + [p]).padded(k + 1)
        if not module_normal_form(witness, gb.elements, order).is_zero:
            raise AssertionError("annihilator generator fails module membership")
    return picked


def _interreduce_module(gk, order: ModuleOrder, ctx: WeylContext):
    """Drop module generators reducible to zero against the others."""
    kept: list = []
    for e in gk:
        if kept and module_normal_form(e, kept, order).is_zero:
            continue
        kept.append(e)
    return kept
