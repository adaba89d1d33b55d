"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from lcas.lca import Element
from lcas.poly import Poly

rationals = st.builds(
    Fraction, st.integers(-6, 6), st.integers(1, 4)
)


def polys(variables=("del", "lam", "mu"), max_exp=3, max_terms=4):
    term = st.tuples(
        st.fixed_dictionaries({v: st.integers(0, max_exp) for v in variables}),
        rationals,
    )
    return st.lists(term, max_size=max_terms).map(
        lambda ts: sum((Poly.monomial(e, c) for e, c in ts), Poly())
    )


def elements(R, max_exp=2):
    return st.lists(polys(("del",), max_exp, 3), min_size=R.rank, max_size=R.rank).map(
        lambda cs: Element(tuple(cs), R)
    )
