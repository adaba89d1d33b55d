"""Exact computations with finite-rank Lie conformal algebras.

Polynomials (:mod:`lcas.poly`), algebras and their module theory
(:mod:`lcas.lca`, :mod:`lcas.modules`), conformal maps (:mod:`lcas.cmap`),
derivation-type spaces (:mod:`lcas.solver`) and the ``lcas`` command line.
"""

from .cmap import ConformalMap, ConformalMap2, act, apply, bind_lam, extract_lam_coeffs, gc_bracket
from .lca import (
    AlgebraError,
    Element,
    LCAlgebra,
    adjoint,
    bracket_eval,
    check_axioms,
    current_from_lie,
    direct_sum,
    fixture,
    from_brackets,
    mutate,
    truncated_extension,
)
from .linalg import BACKEND
from .modules import SmithReport, Submodule, complement_test, derived_subalgebra, smith_form
from .poly import DEL, LAM, MU, NU, ONE, ZERO, Poly
from .solver import (
    ABGParams,
    DegreeBound,
    DerivationKind,
    SolutionSpace,
    cinn_span,
    equal,
    intersect,
    member,
    oracle_check,
    project,
    quasi_embed,
    residual,
    solve_space,
    space_ops,
    span_sum,
)

__version__ = "0.1.0"
