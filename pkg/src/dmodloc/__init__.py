"""Exact Weyl-algebra engine for localizing D-modules across a hypersurface.

Quick tour::

    >>> from dmodloc import WeylContext, localize_cyclic
    >>> ctx = WeylContext(["x"])
    >>> x, dx = ctx.x(0), ctx.d(0)
    >>> result = localize_cyclic(x, [x*dx - 7])
    >>> str(result.bpoly), result.k
    ('s^2-6*s', 6)
    >>> [str(g) for g in result.annihilator]
    ['x*Dx+1']
"""

__version__ = "0.1.0"

from .weyl import (ContextMismatchError, WeylContext, WeylElement,
                   anti_normal_order_v, dehomogenize, homogenize, poly_diff,
                   recompose_anti_words, transfer)
from .orders import (BlockOrder, Grevlex, HomogenizedWeightOrder, Lex,
                     ModuleOrder, TermOrder, WeightRefined, WeightVector,
                     component_last_order, eliminate_spatial, initial_form_w,
                     ord_w, w_degree)
from .groebner import (FreeModuleElement, GroebnerBasis, ModuleGroebnerBasis,
                       ResourceLimitExceeded, ResourceLimits, buchberger_left,
                       buchberger_module, eliminate_to_subalgebra,
                       gb_adapted_to_weight, ideal_equal, initial_ideal_gens,
                       interreduce, left_normal_form, module_normal_form,
                       reduces_to_zero)
from .twist import (LocalizingIdeal, build_localizing_ideal,
                    normal_form_mod_right_dv, phi)
from .bfunction import (BFunctionCertificateError, BPolynomial,
                        ThetaPolynomial, b_function_from_adapted_basis,
                        integer_roots, integration_b_function,
                        largest_nonneg_integer_root, theta_projection)
from .integrate import IntegrationProblem, annihilator_of_vk, build_gk
from .localize import (CharDiagnostics, CommutativePolynomial, LocalizeConfig,
                       LocalizationResult, NaturalMapImage, ZeroBFunctionError,
                       char_ideal_gens, dimension_upper_bound, localize_cyclic,
                       natural_map_image)
from .oracle import (RationalFunction, TwistedFunction, apply_operator,
                     is_annihilated)
from .parsing import ParseError, parse_function, parse_operator, parse_polynomial

__all__ = [name for name in dir() if not name.startswith("_")]
