"""Structural identities for derivation spaces, as reusable assertion helpers.

Each ``check_*`` function raises ``AssertionError`` with a short reason on
failure.  Spaces are cached per (kind, algebra, bounds) because the same
space is consulted by several identities.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from lcas.cmap import apply, extract_lam_coeffs, gc_bracket
from lcas.lca import direct_sum, fixture, truncated_extension
from lcas.modules import Submodule, derived_subalgebra, is_ideal
from lcas.solver import (
    DegreeBound,
    DerivationKind,
    contains_space,
    embed_span,
    equal,
    intersect,
    layout_for,
    map_kernel,
    member,
    project,
    quasi_embed,
    solve_space,
)
from lcas.solver.embed import element_images

F = Fraction
DELTAS = (0, F(1, 2), 1, 2, 3, -1)
SCALES = (2, -3, F(1, 2))
TRIPLES = ((1, 1, 1), (2, 1, 1), (0, 1, -1), (1, 0, 0), (1, 1, 0), (F(1, 2), 1, -1), (3, 2, 1), (1, 2, -1))


@lru_cache(maxsize=None)
def algebra(name: str):
    if name == "vir+cur":
        return direct_sum(fixture("vir"), fixture("cur_sl2"))
    if name.endswith("~"):
        return truncated_extension(algebra(name[:-1]))
    return fixture(name)


def _key(kind) -> str:
    return str(kind if isinstance(kind, DerivationKind) else DerivationKind.parse(kind))


@lru_cache(maxsize=None)
def _space(kind: str, name: str, bounds: DegreeBound):
    return solve_space(kind, algebra(name), bounds)


def space(kind, name: str, bounds):
    b = bounds if isinstance(bounds, DegreeBound) else DegreeBound(*bounds)
    return _space(_key(kind), name, b)


def abg(a, b, g, name, bounds):
    return space(DerivationKind.abg(a, b, g), name, bounds)


def first(kind, name, bounds):
    return project(space(kind, name, bounds))


# -- (alpha, beta, gamma) identities ---------------------------------------------


def check_abg_special_cases(name, bounds):
    assert equal(abg(1, 1, 1, name, bounds), space("cder", name, bounds)), "abg(1,1,1) != cder"
    assert equal(abg(0, 1, -1, name, bounds), space("qc", name, bounds)), "abg(0,1,-1) != qc"
    zd = intersect(abg(1, 0, 0, name, bounds), abg(0, 1, 0, name, bounds))
    assert equal(zd, space("zder", name, bounds)), "abg(1,0,0) meet abg(0,1,0) != zder"
    for a, b, g in TRIPLES:
        for s in SCALES:
            assert equal(abg(a, b, g, name, bounds), abg(s * a, s * b, s * g, name, bounds)), ((a, b, g), s)


def _split_triples():
    yield from TRIPLES
    for d in DELTAS:
        yield from ((d, 1, -1), (d, 1, 0), (d, 1, 1))


def check_abg_split(name, bounds):
    for a, b, g in _split_triples():
        rhs = intersect(abg(0, b - g, g - b, name, bounds), abg(2 * a, b + g, b + g, name, bounds))
        assert equal(abg(a, b, g, name, bounds), rhs), (a, b, g)


def check_abg_structure(name, bounds):
    R = algebra(name)
    full = abg(0, 0, 0, name, bounds)
    assert full.dimension == layout_for(full.kind, R, full.bounds).size, "abg(0,0,0) is not the full ansatz"
    derived = derived_subalgebra(R).generators
    for D in abg(1, 0, 0, name, bounds).maps:
        for s in derived:
            assert not any(apply(D, s)), "abg(1,0,0) map does not kill [R,R]"
    assert equal(abg(0, 1, -1, name, bounds), space("qc", name, bounds))
    kill = intersect(abg(0, 1, -1, name, bounds), abg(1, 0, 0, name, bounds))
    for d in DELTAS:
        if d != 0:
            assert equal(abg(d, 1, -1, name, bounds), kill), ("(iv)", d)
        rhs = intersect(abg(0, 1, -1, name, bounds), abg(2 * d, 1, 1, name, bounds))
        assert equal(abg(d, 1, 0, name, bounds), rhs), ("(vi)", d)


# -- inclusions between kinds -------------------------------------------------


def check_tower(name, bounds):
    from lcas.solver import cinn_span

    b = DegreeBound(*bounds) if not isinstance(bounds, DegreeBound) else bounds
    chain = [cinn_span(algebra(name), b), space("cder", name, b), first("qder", name, b), first("gder", name, b)]
    for small, big in zip(chain, chain[1:]):
        assert contains_space(big, small), f"tower breaks at {small.kind} -> {big.kind}"


def check_centroid_pairs(name, bounds):
    q = space("qder", name, bounds)
    for D in space("centroid", name, bounds).maps:
        assert member((D, D.scale(2)), q), "(D, 2D) not a quasiderivation pair"


def _partner_bounds(name, bounds) -> DegreeBound:
    R = algebra(name)
    (_, (pd, pl), _) = DegreeBound(*bounds).slot_bounds(R, 3)
    return DegreeBound(pd, pl)


def check_gder_splits(name, bounds):
    """Every generalized derivation is a quasiderivation plus a quasicentroid map."""
    pb = _partner_bounds(name, bounds)
    q = first("qder", name, pb)
    qc = space("qc", name, pb)
    half = F(1, 2)
    for D, Dp, _ in space("gder", name, bounds).basis:
        assert member((D + Dp).scale(half), q), "(D+D')/2 not in qder"
        assert member((D - Dp).scale(half), qc), "(D-D')/2 not in qc"


def bracket_coefficients(D1, D2):
    return extract_lam_coeffs(gc_bracket(D1, D2))


def check_qc_brackets(name, bounds):
    qc = space("qc", name, bounds).maps
    coeffs = [c for a in qc for b in qc for c in bracket_coefficients(a, b) if not c.is_zero()]
    if not coeffs:
        return 0
    dd = max(c.degrees()[0] for c in coeffs)
    dl = max(c.degrees()[1] for c in coeffs)
    b = DegreeBound(*bounds) if not isinstance(bounds, DegreeBound) else bounds
    raised = DegreeBound(max(dd, 2 * b.max_del), max(dl, 2 * b.max_lam))
    target = first("qder", name, raised)
    for c in coeffs:
        assert member(c, target), "lam-coefficient of a qc bracket is not in qder"
    return len(coeffs)


def check_centerless(name, del_bound=2):
    assert space("center", name, (del_bound, 0)).dimension == 0, f"{name} has a center"


def check_centroid_commutes(name, bounds):
    check_centerless(name)
    cs = space("centroid", name, bounds).maps
    qs = space("qc", name, bounds).maps
    for a in cs:
        for b in cs:
            assert gc_bracket(a, b).is_zero(), "two centroid maps do not commute"
        for b in qs:
            assert gc_bracket(a, b).is_zero(), "centroid and qc maps do not commute"


def check_centroid_ideals(name, bounds, element_del=2):
    R = algebra(name)
    maps = space("centroid", name, bounds).maps
    for D in maps:
        ker = Submodule.generated_by(R, map_kernel(D, element_del))
        img = Submodule.generated_by(R, element_images([D]))
        assert is_ideal(ker), "kernel of a centroid map is not an ideal"
        assert is_ideal(img), "image of a centroid map is not an ideal"
    return len(maps)


def _block_diagonal(m, split):
    n = len(m.entries)
    return all(
        not m.entries[i][j] for i in range(n) for j in range(n) if (i < split) != (j < split)
    )


def check_direct_sum(bounds, kinds=("gder", "qder", "centroid", "qc")):
    b = DegreeBound(*bounds) if not isinstance(bounds, DegreeBound) else bounds
    split = algebra("vir").rank
    for kind in kinds:
        whole = space(kind, "vir+cur", b)
        parts = [space(kind, "vir", b), space(kind, "cur_sl2", b)]
        assert whole.dimension == sum(p.dimension for p in parts), f"{kind}: tuple dimensions do not add"
        if whole.arity > 1:
            assert project(whole).dimension == sum(project(p).dimension for p in parts), f"{kind}: projections"
        for tup in whole.basis:
            assert all(_block_diagonal(m, split) for m in tup), f"{kind}: basis not block diagonal"


# -- embedding ------------------------------------------------------------------


def check_embedding_injective(name, bounds):
    q = space("qder", name, bounds)
    img = embed_span(algebra(name), q)
    assert img.dimension == project(q).dimension, "embedding is not injective on first components"


def check_embedding_partner_free(name, bounds):
    """Changing D' by a map that kills [R,R] leaves the image unchanged."""
    R = algebra(name)
    q = space("qder", name, bounds)
    pb = DegreeBound(*q.layout.slots[1])
    kernel = abg(1, 0, 0, name, pb).maps
    changed = 0
    for D, Dp in q.basis:
        base = quasi_embed(R, (D, Dp))
        for K in kernel:
            assert member((D, Dp + K), q), "shifted partner left the qder space"
            assert quasi_embed(R, (D, Dp + K)) == base, "image depends on the partner"
            changed += 1
    return changed
