import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lcas.cmap import ConformalMap, apply, bind_lam, extract_lam_coeffs, gc_bracket, module_action, slot_substitute
from lcas.lca import AlgebraError, Element, adjoint, bracket_eval, fixture, lam_coefficients
from lcas.poly import DEL, LAM, MU, ONE, ZERO, Poly
from strategies import elements, polys


def maps(R):
    entry = polys(("del", "lam"), 2, 3)
    return st.lists(
        st.lists(entry, min_size=R.rank, max_size=R.rank), min_size=R.rank, max_size=R.rank
    ).map(lambda rows: ConformalMap(tuple(tuple(r) for r in rows), R))


def test_ad_of_virasoro_generator():
    R = fixture("vir")
    ad = adjoint(R.gen(0))
    two = gc_bracket(ad, ad)
    assert bind_lam(two, 0) == adjoint(R.gen(0).partial())
    coeffs = extract_lam_coeffs(two)
    assert coeffs == [adjoint(R.gen(0).partial()), ad.scale(2)]
    assert slot_substitute(two, "extract_lam_coeffs") == coeffs
    with pytest.raises(ValueError):
        slot_substitute(two, "bind_lam")


def test_module_action_multiplies_by_minus_lam():
    R = fixture("vir")
    ad = adjoint(R.gen(0))
    assert module_action(ad) == adjoint(R.gen(0).partial())


def test_identity_and_zero():
    R = fixture("cur_sl2")
    I = ConformalMap.identity(R)
    e = R.gen("e")
    assert apply(I, e) == e.coords
    assert (I - I).is_zero() and ConformalMap.zero(R).is_zero()
    assert I.degrees() == (0, 0) and ConformalMap.zero(R).degrees() == (-1, -1)
    with pytest.raises(AlgebraError):
        ConformalMap(((MU,),), fixture("vir"))


@pytest.mark.parametrize("name", ["vir", "rank2_LW", "cur_sl2"])
@settings(max_examples=20, deadline=None)
@given(data=st.data())
def test_conformal_linearity(name, data):
    R = fixture(name)
    phi = data.draw(maps(R))
    a = data.draw(elements(R))
    assert apply(phi, a.partial()) == tuple((DEL + LAM) * p for p in apply(phi, a))


@pytest.mark.parametrize("name", ["vir", "rank2_LW", "cur_sl2"])
@settings(max_examples=15, deadline=None)
@given(data=st.data())
def test_gc_bracket_skew(name, data):
    R = fixture(name)
    phi, psi = data.draw(maps(R)), data.draw(maps(R))
    a = gc_bracket(phi, psi)
    b = gc_bracket(psi, phi).substitute({"lam": MU - LAM})
    assert (a + b).is_zero()


@pytest.mark.parametrize("name", ["vir", "rank2_LW", "cur_sl2"])
@settings(max_examples=15, deadline=None)
@given(data=st.data())
def test_adjoint_is_a_homomorphism(name, data):
    """lam-coefficients of [ad a lam ad b] are the adjoints of those of [a lam b]."""
    R = fixture(name)
    a, b = data.draw(elements(R, 1)), data.draw(elements(R, 1))
    got = extract_lam_coeffs(gc_bracket(adjoint(a), adjoint(b)))
    want = lam_coefficients(bracket_eval(a, b), R)
    top = max(list(want) + [len(got) - 1, -1])
    for k in range(top + 1):
        lhs = got[k] if k < len(got) else ConformalMap.zero(R)
        rhs = adjoint(want[k]) if k in want else ConformalMap.zero(R)
        assert lhs == rhs, k
