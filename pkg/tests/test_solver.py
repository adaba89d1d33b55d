from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lcas.cmap import ConformalMap
from lcas.lca import AlgebraError, adjoint, direct_sum, fixture
from lcas.poly import DEL, LAM, ONE, Poly
from lcas.solver import (
    DegreeBound,
    DerivationKind,
    Layout,
    OutOfBounds,
    cinn_span,
    equal,
    from_items,
    intersect,
    is_zero_residual,
    kind,
    layout_for,
    member,
    project,
    quasi_embed,
    residual,
    solve_space,
    span_sum,
)
from lcas.solver.spaces import SpaceMismatch

VIR = fixture("vir")
CUR = fixture("cur_sl2")


# -- kinds and bounds -----------------------------------------------------------


def test_parse_kinds():
    assert DerivationKind.parse("cder").arity == 1
    assert DerivationKind.parse("qder").arity == 2
    assert DerivationKind.parse("gder").arity == 3
    k = DerivationKind.parse("abg(1/2, 1, -1)")
    assert k.params.alpha == Fraction(1, 2) and k.params.gamma == -1
    assert str(k) == "abg(1/2,1,-1)"
    assert DerivationKind.parse(str(k)) == k
    assert kind("abg", 2, 1, 1) == DerivationKind.parse("abg(2,1,1)")


@pytest.mark.parametrize("text", ["der", "abg(1,2)", "abg", "abg(x,1,1)", ""])
def test_bad_kinds(text):
    with pytest.raises(ValueError):
        DerivationKind.parse(text)


def test_params_only_on_abg():
    with pytest.raises(ValueError):
        kind("cder", 1, 1, 1)


def test_degree_bound_validation():
    with pytest.raises(ValueError):
        DegreeBound(-1, 2)
    with pytest.raises(ValueError):
        DegreeBound(1, 1, partner_del=-2)


def test_partner_slots():
    b = DegreeBound(2, 1)
    assert b.slot_bounds(VIR, 1) == ((2, 1),)
    assert b.slot_bounds(VIR, 3) == ((2, 1), (3, 2), (3, 2))
    assert b.slot_bounds(CUR, 2) == ((2, 1), (2, 1))
    assert b.uniform().slot_bounds(VIR, 2) == ((2, 1), (2, 1))
    assert DegreeBound(2, 1, 5, 0).slot_bounds(VIR, 2) == ((2, 1), (5, 0))


# -- layout ---------------------------------------------------------------------


def test_layout_order_and_size():
    lay = Layout(1, ((1, 1),))
    assert lay.size == 4
    assert [lay.unit(c)[3:] for c in range(4)] == [(0, 0), (1, 0), (0, 1), (1, 1)]
    assert Layout(3, ((2, 2), (1, 0))).size == 9 * 9 + 9 * 2


@settings(max_examples=40, deadline=None)
@given(st.dictionaries(st.integers(0, 2 * 4 * 6 - 1), st.integers(-5, 5).filter(bool), max_size=8))
def test_layout_round_trip(vec):
    lay = Layout(2, ((2, 3), (1, 1)))
    vec = {c: v for c, v in vec.items() if c < lay.size}
    R = fixture("rank2_LW")
    assert lay.to_vector(lay.to_items(vec, R)) == vec


def test_out_of_bounds():
    lay = Layout(1, ((1, 1),))
    with pytest.raises(OutOfBounds):
        lay.to_vector((ConformalMap(((DEL**2,),), VIR),))


# -- residuals ----------------------------------------------------------------


def test_inner_is_derivation():
    L = VIR.gen(0)
    assert is_zero_residual(residual(kind("cder"), adjoint(L), VIR))


def test_identity_maps():
    ident = ConformalMap.identity(VIR)
    assert is_zero_residual(residual(kind("abg", 2, 1, 1), ident, VIR))
    assert not is_zero_residual(residual(kind("centroid"), ident, VIR))
    assert is_zero_residual(residual(kind("centroid"), ConformalMap.identity(CUR), CUR))
    assert is_zero_residual(residual(kind("qder"), (ident, ident.scale(2)), VIR))
    assert not is_zero_residual(residual(kind("qder"), (ident, ident), VIR))


def test_center_residual():
    R = direct_sum(VIR, fixture("abelian(1)"))
    assert is_zero_residual(residual(kind("center"), R.gen(1), R))
    assert not is_zero_residual(residual(kind("center"), R.gen(0), R))


def test_residual_width():
    with pytest.raises(ValueError):
        residual(kind("qder"), ConformalMap.identity(VIR), VIR)
    with pytest.raises(AlgebraError):
        residual(kind("cder"), ConformalMap.identity(CUR), VIR)


# -- solving --------------------------------------------------------------------


@pytest.mark.parametrize("tag", ["cder", "qder", "gder", "centroid", "qc", "zder", "abg(2,1,1)"])
def test_basis_residuals_vanish(tag):
    S = solve_space(tag, CUR, (1, 1), verify=False)
    for tup in S.basis:
        assert is_zero_residual(residual(S.kind, tup, CUR))


def test_trivial_identity_is_everything():
    S = solve_space("abg(0,0,0)", CUR, (1, 2))
    assert S.dimension == layout_for(S.kind, CUR, S.bounds).size == 9 * 6


def test_center_space():
    assert solve_space("center", direct_sum(VIR, fixture("abelian(1)")), (2, 0)).dimension == 3
    assert solve_space("center", fixture("solvable_d1"), (2, 0)).dimension == 0
    assert solve_space("center", VIR, (3, 0)).dimension == 0
    assert solve_space("center", fixture("abelian(2)"), (1, 0)).dimension == 4


@pytest.mark.parametrize("name, bounds, dim", [("vir", (4, 3), 3), ("cur_sl2", (3, 2), 9), ("abelian(2)", (2, 2), 0)])
def test_cinn_span(name, bounds, dim):
    assert cinn_span(fixture(name), bounds).dimension == dim


def test_zero_map_is_member():
    S = solve_space("cder", VIR, (2, 2))
    assert member(ConformalMap.zero(VIR), S)
    assert not member(ConformalMap.identity(VIR), S)
    assert not member(ConformalMap(((DEL**5,),), VIR), S)


def test_canonical_form_is_basis_independent():
    S = solve_space("cder", VIR, (4, 3))
    maps = S.maps
    shuffled = [maps[0] + maps[1], maps[1].scale(3), maps[2] - maps[0]]
    T = from_items("cder", VIR, (4, 3), shuffled)
    assert S == T
    assert equal(S, T)


def test_space_operations():
    a = solve_space("abg(1,0,0)", VIR, (2, 2))
    b = solve_space("abg(0,1,0)", VIR, (2, 2))
    meet = intersect(a, b)
    total = span_sum(a, b)
    assert meet.dimension + total.dimension == a.dimension + b.dimension


def test_mismatch_errors():
    a = solve_space("cder", VIR, (2, 2))
    with pytest.raises(SpaceMismatch):
        equal(a, solve_space("cder", VIR, (2, 1)))
    with pytest.raises(SpaceMismatch):
        equal(a, solve_space("cder", CUR, (2, 2)))
    with pytest.raises(SpaceMismatch):
        member(ConformalMap.identity(CUR), a)


def test_project_keeps_slot_bounds():
    q = solve_space("qder", VIR, (2, 1))
    p1 = project(q, 1)
    assert p1.layout.slots == ((3, 2),)
    with pytest.raises(ValueError):
        project(q, 2)


# -- embedding ------------------------------------------------------------------


def test_zero_pair_embeds_to_zero():
    z = ConformalMap.zero(VIR)
    assert quasi_embed(VIR, (z, z)).is_zero()


def test_identity_pair_image():
    ident = ConformalMap.identity(VIR)
    image = quasi_embed(VIR, (ident, ident.scale(2)))
    assert image.rank == 2
    assert image.entries[0][0] == ONE and image.entries[1][1] == Poly.const(2)
    assert image.entries[0][1] == image.entries[1][0] == Poly.const(0)
    assert is_zero_residual(residual(kind("cder"), image, image.algebra))


def test_lam_scaled_inner_maps():
    S = solve_space("cder", VIR, (4, 3))
    ad = adjoint(VIR.gen(0))
    for s in range(3):
        assert member(ad.scale(LAM**s), S)


def test_equal_partner_is_not_a_pair():
    ident = ConformalMap.identity(VIR)
    image = quasi_embed(VIR, (ident, ident))
    assert not is_zero_residual(residual(kind("cder"), image, image.algebra))
