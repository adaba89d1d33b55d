import pytest

from lcas.lca import current_from_lie, fixture, from_brackets
from lcas.modules import Submodule, complement_test, derived_subalgebra, is_ideal, smith_form
from lcas.poly import DEL, LAM, ONE, ZERO, Poly, udivmod


def test_virasoro_is_perfect():
    R = fixture("vir")
    S = derived_subalgebra(R)
    assert S.is_full()
    rep = complement_test(R, S)
    assert rep.quotient_free and rep.complement.is_zero()


def test_rank2_derived_has_torsion_quotient():
    R = fixture("rank2_LW")
    S = derived_subalgebra(R)
    assert S.contains(R.gen("L")) and S.contains(R.gen("W").partial())
    assert not S.contains(R.gen("W"))
    rep = complement_test(R, S)
    assert not rep.quotient_free and rep.complement is None
    assert rep.torsion == (DEL,)


def test_solvable_complement_is_spanned_by_a():
    R = fixture("solvable_d1")
    S = derived_subalgebra(R)
    assert S.rows == Submodule.generated_by(R, [R.gen("b")]).rows
    rep = complement_test(R, S)
    assert rep.quotient_free
    assert rep.complement.rows == Submodule.generated_by(R, [R.gen("a")]).rows


def test_abelian_derived_is_zero():
    assert derived_subalgebra(fixture("abelian(1)")).is_zero()
    rep = complement_test(fixture("abelian(1)"), derived_subalgebra(fixture("abelian(1)")))
    assert rep.quotient_free and rep.complement.is_full()


@pytest.mark.parametrize("name", ["vir", "cur_sl2", "rank2_LW", "solvable_d1", "abelian(2)"])
def test_derived_subalgebra_is_an_ideal(name):
    assert is_ideal(derived_subalgebra(fixture(name)))


def test_split_recovers_the_vector():
    R = fixture("solvable_d1")
    rep = complement_test(R, derived_subalgebra(R))
    v = (DEL**2 + 1, 3 * DEL)
    inside, outside = rep.split(v)
    assert tuple(a + b for a, b in zip(inside, outside)) == v
    assert derived_subalgebra(R).contains(inside)
    assert rep.complement.contains(outside)


def test_smith_factors_divide_successively():
    rows = [(DEL**2, DEL), (DEL * (DEL + 1), ZERO)]
    factors, V, W = smith_form(rows, 2)
    assert all(f == ZERO or f.leading()[1] == ONE for f in factors)
    assert udivmod(factors[1], factors[0])[1] == ZERO
    # W is the inverse of V
    prod = [[sum((V[i][k] * W[k][j] for k in range(2)), ZERO) for j in range(2)] for i in range(2)]
    assert prod == [[ONE, ZERO], [ZERO, ONE]]


def test_membership_with_rational_bracket():
    R = from_brackets(("a", "b"), {(0, 0): (ZERO, ZERO), (0, 1): (ZERO, LAM + 1), (1, 1): (ZERO, ZERO)})
    S = derived_subalgebra(R)
    assert S.contains((ZERO, Poly.const(1))) and not S.contains((ONE, ZERO))
    assert current_from_lie([[[0]]]).rank == 1
