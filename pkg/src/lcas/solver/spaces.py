"""Solution spaces: exact kernels of the identity systems and their algebra."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .. import linalg
from ..cmap import ConformalMap
from ..lca import AlgebraError, Element, LCAlgebra, adjoint
from ..poly import LAM
from .ansatz import Layout, OutOfBounds
from .identities import build_system, is_zero_residual, residual
from .kinds import DegreeBound, DerivationKind, kind as as_kind


class SpaceMismatch(ValueError):
    """Spaces over different algebras or ansatz layouts were combined."""


class ResidualCheckFailed(RuntimeError):
    """A computed basis element does not satisfy its identity symbolically."""


@dataclass(frozen=True, eq=False)
class SolutionSpace:
    algebra: LCAlgebra = field(repr=False)
    kind: DerivationKind
    bounds: DegreeBound
    layout: Layout = field(repr=False)
    vectors: tuple[dict, ...] = field(repr=False)

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    @property
    def canonical(self) -> tuple:
        """Reduced echelon coefficient rows as ``((column, value), ...)``."""
        return linalg.freeze(self.vectors)

    @property
    def basis(self) -> list[tuple]:
        """Basis tuples (width = arity) of maps, or of Elements for ``center``."""
        return [self.layout.to_items(v, self.algebra) for v in self.vectors]

    @property
    def maps(self) -> list:
        """First component of every basis tuple."""
        return [b[0] for b in self.basis]

    @property
    def arity(self) -> int:
        return self.layout.arity

    def is_zero(self) -> bool:
        return not self.vectors

    def __eq__(self, other) -> bool:
        if not isinstance(other, SolutionSpace):
            return NotImplemented
        return (
            self.algebra.same(other.algebra)
            and self.layout == other.layout
            and self.canonical == other.canonical
        )

    def __hash__(self) -> int:
        return hash((self.layout, self.canonical))

    def __contains__(self, item) -> bool:
        return member(item, self)

    def __len__(self) -> int:
        return self.dimension

    def __repr__(self) -> str:
        return f"SolutionSpace({self.kind}, bounds={self.layout.slots}, dim={self.dimension})"


def _make(R, kind, bounds, layout, vectors) -> SolutionSpace:
    return SolutionSpace(R, kind, bounds, layout, tuple(linalg.canonical(vectors, layout.size)))


def layout_for(kind: DerivationKind, R: LCAlgebra, bounds: DegreeBound) -> Layout:
    if kind.tag == "center":
        return Layout(R.rank, ((bounds.max_del, 0),), element=True)
    return Layout(R.rank, bounds.slot_bounds(R, kind.arity))


def solve_space(kind, R: LCAlgebra, bounds: DegreeBound | tuple[int, int], *, verify: bool = True) -> SolutionSpace:
    """All ansatz tuples within ``bounds`` satisfying the identity of ``kind``.

    With ``verify`` every basis tuple is re-checked through :func:`residual`.
    """
    kind = as_kind(kind)
    bounds = _bounds(bounds)
    layout = layout_for(kind, R, bounds)
    rows = build_system(kind, R, layout)
    vectors = linalg.nullspace(rows, layout.size)
    space = SolutionSpace(R, kind, bounds, layout, tuple(vectors))
    if verify:
        for items in space.basis:
            if not is_zero_residual(residual(kind, items, R)):
                raise ResidualCheckFailed(f"{kind}: basis element {items} has nonzero residual")
    return space


def _bounds(b) -> DegreeBound:
    if isinstance(b, DegreeBound):
        return b
    return DegreeBound(*b)


def from_items(kind, R: LCAlgebra, bounds, items: Sequence) -> SolutionSpace:
    """Span of explicit tuples (or single maps / elements) in the ansatz of ``kind``."""
    kind = as_kind(kind)
    bounds = _bounds(bounds)
    layout = layout_for(kind, R, bounds)
    vecs = [layout.to_vector(_as_tuple(it)) for it in items]
    return _make(R, kind, bounds, layout, vecs)


def cinn_span(R: LCAlgebra, bounds) -> SolutionSpace:
    """Span of ``lam^s ad(e_i)`` over generators and every ``s`` that fits the bounds."""
    bounds = _bounds(bounds)
    kind = DerivationKind("cder")
    maps = []
    for g in R.gens():
        ad = adjoint(g)
        if ad.is_zero():
            continue
        dd, dl = ad.degrees()
        if dd > bounds.max_del:
            continue
        for s in range(bounds.max_lam - dl + 1):
            maps.append(ad.scale(LAM**s))
    return from_items(kind, R, bounds, maps)


# -- space algebra ----------------------------------------------------------


def _as_tuple(item) -> tuple:
    if isinstance(item, (ConformalMap, Element)):
        return (item,)
    return tuple(item)


def _compatible(a: SolutionSpace, b: SolutionSpace) -> None:
    if not a.algebra.same(b.algebra):
        raise SpaceMismatch("spaces belong to different algebras")
    if a.layout != b.layout:
        raise SpaceMismatch(f"spaces have different ansatz bounds: {a.layout.slots} vs {b.layout.slots}")


def equal(a: SolutionSpace, b: SolutionSpace) -> bool:
    _compatible(a, b)
    return a.canonical == b.canonical


def member(item, space: SolutionSpace) -> bool:
    """Whether a map, element or tuple lies in ``space`` (False when outside the ansatz)."""
    items = _as_tuple(item)
    for it in items:
        if not it.algebra.same(space.algebra):
            raise SpaceMismatch("item belongs to a different algebra")
    try:
        vec = space.layout.to_vector(items)
    except OutOfBounds:
        return False
    return not linalg.reduce(vec, space.vectors)


def contains_space(big: SolutionSpace, small: SolutionSpace) -> bool:
    _compatible(big, small)
    return all(not linalg.reduce(v, big.vectors) for v in small.vectors)


def intersect(a: SolutionSpace, b: SolutionSpace) -> SolutionSpace:
    _compatible(a, b)
    vecs = linalg.intersect(a.vectors, b.vectors, a.layout.size)
    return SolutionSpace(a.algebra, a.kind, a.bounds, a.layout, tuple(vecs))


def span_sum(a: SolutionSpace, b: SolutionSpace) -> SolutionSpace:
    _compatible(a, b)
    return _make(a.algebra, a.kind, a.bounds, a.layout, list(a.vectors) + list(b.vectors))


def project(space: SolutionSpace, slot: int = 0) -> SolutionSpace:
    """Image of the tuple space under the ``slot``-th component."""
    if not 0 <= slot < space.arity:
        raise ValueError(f"slot {slot} out of range for arity {space.arity}")
    rng = space.layout.slot_range(slot)
    off = rng.start
    vecs = [{c - off: v for c, v in vec.items() if c in rng} for vec in space.vectors]
    dmax, lmax = space.layout.slots[slot]
    return _make(space.algebra, space.kind, DegreeBound(dmax, lmax), space.layout.project(slot), vecs)


def space_ops(mode: str, *args):
    """Dispatch ``equal``, ``member``, ``intersect``, ``sum`` or ``project``."""
    if mode == "equal":
        return equal(*args)
    if mode == "member":
        return member(*args)
    if mode == "intersect":
        return intersect(*args)
    if mode == "sum":
        return span_sum(*args)
    if mode == "project":
        return project(*args)
    raise ValueError(f"unknown space operation {mode!r}")


def map_kernel(D: ConformalMap, max_del: int) -> list[Element]:
    """Basis of ``{z : D_lam(z) = 0}`` among elements with del-degree at most ``max_del``."""
    R = D.algebra
    layout = Layout(R.rank, ((max_del, 0),), element=True)
    rows: dict[tuple, dict[int, object]] = {}
    for col in range(layout.size):
        (z,) = layout.unit_items(col, R)
        for k, p in enumerate(D(z)):
            for m, c in p.terms.items():
                rows.setdefault((k, m), {})[col] = c
    vecs = linalg.nullspace(rows.values(), layout.size)
    return [layout.to_items(v, R)[0] for v in vecs]


__all__ = [
    "AlgebraError",
    "ResidualCheckFailed",
    "SolutionSpace",
    "SpaceMismatch",
    "cinn_span",
    "contains_space",
    "equal",
    "from_items",
    "intersect",
    "layout_for",
    "map_kernel",
    "member",
    "project",
    "solve_space",
    "space_ops",
    "span_sum",
]
