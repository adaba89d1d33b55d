"""Degree-bounded derivation spaces of Lie conformal algebras."""

from .ansatz import Layout, OutOfBounds
from .identities import build_system, is_zero_residual, residual
from .kinds import ABGParams, DegreeBound, DerivationKind, kind
from .spaces import (
    ResidualCheckFailed,
    SolutionSpace,
    SpaceMismatch,
    cinn_span,
    contains_space,
    equal,
    from_items,
    intersect,
    layout_for,
    map_kernel,
    member,
    project,
    solve_space,
    space_ops,
    span_sum,
)
from .embed import NoFreeComplement, decomposition, embed_span, quasi_embed
from .oracle import OracleReport, oracle_check, oracle_report
