"""End-to-end localization pipeline and characteristic-ideal diagnostics.

Output contract: the returned annihilator I presents the localized module,
D/I isomorphic to (D/J) tensored with the ring of fractions R[1/f], with
generator the class of f^-(k+2); the natural map sends the class of 1 to
f^k times that generator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .bfunction import (BPolynomial, b_function_from_adapted_basis,
                        integer_roots, largest_nonneg_integer_root)
from .groebner import (GroebnerBasis, ResourceLimitExceeded, ResourceLimits,
                       _NO_LIMITS, buchberger_left, gb_adapted_to_weight)
from .integrate import annihilator_of_vk, build_gk
from .orders import Grevlex, WeightRefined, WeightVector
from .twist import build_localizing_ideal
from .weyl import WeylContext, WeylElement, format_terms, structural_key


class ZeroBFunctionError(RuntimeError):
    """The integration b-function vanished: the input is not certified
    holonomic off the zero set of f, so no generator bound exists."""


@dataclass(frozen=True)
class LocalizeConfig:
    tie_break: str = "grevlex"
    limits: ResourceLimits = _NO_LIMITS
    diagnostics: bool = True


@dataclass(frozen=True)
class CharDiagnostics:
    """Characteristic-ideal dimensions of the input and output presentations."""
    input_dimension: int
    output_dimension: Optional[int]
    input_symbols: tuple
    output_symbols: tuple


@dataclass(frozen=True)
class LocalizationResult:
    f: WeylElement
    bpoly: BPolynomial
    roots: tuple
    k: Optional[int]
    annihilator: tuple
    natural_map_factor: Optional[WeylElement]
    diagnostics: Optional[CharDiagnostics]
    stages: tuple

    @property
    def module_is_zero(self) -> bool:
        return self.k is None

    @property
    def generator_descriptor(self) -> str:
        if self.k is None:
            return "0"
        return f"f^-({self.k + 2})"


@dataclass(frozen=True)
class NaturalMapImage:
    operator: WeylElement
    descriptor: str

    def __str__(self):
        return f"({self.operator})*{self.descriptor}"


def localize_cyclic(f: WeylElement, gens_j: Sequence[WeylElement],
                    config: LocalizeConfig = LocalizeConfig()) -> LocalizationResult:
    """Present the localization of D/J at f as a quotient of D.

    Runs: localizing ideal -> weight-adapted basis -> b-function -> largest
    nonnegative integer root k -> residue generators -> annihilator of v^k.
    Raises ZeroBFunctionError when the b-function vanishes and
    ResourceLimitExceeded (tagged with the failing stage) on a cap.
    """
    stages = []
    loc = _stage(stages, "twist", lambda: build_localizing_ideal(f, gens_j),
                 lambda r: f"{len(r.generators)} generators in D_v")
    w = WeightVector.integration(loc.ctx)
    basis = _stage(
        stages, "adapted-basis",
        lambda: gb_adapted_to_weight(loc.generators, w, tie=config.tie_break,
                                     limits=config.limits),
        lambda r: f"{len(r.elements)} elements")
    b = _stage(stages, "b-function",
               lambda: b_function_from_adapted_basis(basis, w, config.limits),
               str)
    if b.is_zero:
        raise ZeroBFunctionError(
            "zero b-function: cannot certify holonomicity off the zero set "
            "of f, no generator bound exists")
    roots = tuple(integer_roots(b))
    k = largest_nonneg_integer_root(b)
    stages.append(("roots", f"integer roots {list(roots)}, k = {k}"))

    if k is None:
        ann = (f.ctx.one(),)
        stages.append(("annihilator", "no nonnegative integer root: module is zero"))
        diag = _diagnose(gens_j, ann, config) if config.diagnostics else None
        return LocalizationResult(f, b, roots, None, ann, None, diag,
                                  tuple(stages))

    gk = _stage(stages, "residues", lambda: build_gk(basis, k),
                lambda r: f"{len(r)} generators in D^{k + 1}")
    ann = _stage(stages, "annihilator",
                 lambda: annihilator_of_vk(gk, k, config.limits),
                 lambda r: f"{len(r)} generators")
    diag = _diagnose(gens_j, ann, config) if config.diagnostics else None
    return LocalizationResult(f, b, roots, k, ann, f ** k, diag, tuple(stages))


def _stage(stages: list, name: str, thunk, describe):
    try:
        result = thunk()
    except ResourceLimitExceeded as exc:
        raise ResourceLimitExceeded(f"stage {name!r}: {exc}", stage=name) from exc
    stages.append((name, describe(result)))
    return result


def _diagnose(gens_j, annihilator, config) -> CharDiagnostics:
    in_sym = char_ideal_gens(gens_j, limits=config.limits)
    in_dim = dimension_upper_bound(in_sym)
    if annihilator:
        out_sym = char_ideal_gens(annihilator, limits=config.limits)
        out_dim = dimension_upper_bound(out_sym)
    else:
        # zero ideal: the characteristic variety is the whole cotangent space
        out_sym = ()
        out_dim = dimension_upper_bound((), nvars=2 * gens_j[0].ctx.n)
    return CharDiagnostics(in_dim, out_dim, tuple(in_sym), tuple(out_sym))


def natural_map_image(result: LocalizationResult, p: WeylElement) -> NaturalMapImage:
    """Image of the coset of p under the natural map into the localization:
    the coset of p * f^k times the generator f^-(k+2)."""
    if result.k is None:
        raise ValueError("the localized module is zero")
    return NaturalMapImage(p * result.natural_map_factor,
                           result.generator_descriptor)


# ---------------------------------------------------------------------------
# characteristic ideal diagnostics
# ---------------------------------------------------------------------------

class CommutativePolynomial:
    """Commutative polynomial in (x, xi): a principal symbol."""

    __slots__ = ("names", "terms")

    def __init__(self, names, terms):
        self.names = tuple(names)
        self.terms = {tuple(m): Fraction(c) for m, c in terms.items() if c}

    @property
    def is_zero(self):
        return not self.terms

    def leading_monomial(self):
        """Largest monomial under grevlex; the input is GB-derived, so these
        generate the initial ideal of the characteristic ideal."""
        return max(self.terms, key=structural_key)

    def __eq__(self, other):
        return (isinstance(other, CommutativePolynomial)
                and self.names == other.names and self.terms == other.terms)

    def __hash__(self):
        return hash((self.names, tuple(sorted(self.terms.items()))))

    def __str__(self):
        items = sorted(self.terms.items(), key=lambda t: structural_key(t[0]),
                       reverse=True)
        return format_terms(self.names, items)

    def __repr__(self):
        return f"<CommutativePolynomial {self}>"


def char_ideal_gens(gens_j: Sequence[WeylElement],
                    limits: ResourceLimits = _NO_LIMITS) -> tuple:
    """Principal symbols of a basis adapted to the order filtration.

    Basis under the weight (x: 0, Dx: 1) refined by grevlex (nonnegative
    weights, so no homogenization is needed), then each element's top
    Dx-degree part with Dx_i replaced by the commuting symbol xi_i.
    """
    gens_j = list(gens_j)
    ctx = gens_j[0].ctx
    if ctx.has_aux or ctx.has_hom:
        raise ValueError("characteristic ideal needs a plain context")
    n = ctx.n
    w = WeightVector(ctx, [0] * n + [1] * n)
    order = WeightRefined(w, Grevlex(ctx))
    gb = buchberger_left(gens_j, order, limits)
    names = ctx.spatial + tuple("xi_" + s for s in ctx.spatial)
    out = []
    for g in gb.elements:
        top = max(sum(m[n:]) for m in g.terms)
        terms = {m: c for m, c in g.terms.items() if sum(m[n:]) == top}
        out.append(CommutativePolynomial(names, terms))
    return tuple(out)


def dimension_upper_bound(gens: Sequence[CommutativePolynomial],
                          nvars: Optional[int] = None) -> int:
    """Krull dimension of the quotient by the initial monomial ideal:
    the largest variable subset meeting no leading monomial's support.

    With no generators this is the full variable count (which must then be
    supplied); a constant generator (unit ideal) gives -1.
    """
    if not gens:
        if nvars is None:
            raise ValueError("empty generator list needs an explicit nvars")
        return nvars
    nvars = len(gens[0].names)
    supports = []
    for g in gens:
        lm = g.leading_monomial()
        supp = frozenset(i for i, e in enumerate(lm) if e)
        if not supp:
            return -1
        supports.append(supp)
    best = -1
    for mask in range(1 << nvars):
        subset = frozenset(i for i in range(nvars) if mask >> i & 1)
        if len(subset) <= best:
            continue
        if all(not s <= subset for s in supports):
            best = len(subset)
    return best
