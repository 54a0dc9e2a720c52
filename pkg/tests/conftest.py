from fractions import Fraction

from hypothesis import strategies as st

from idop.element import Element1, from_atoms
from idop.tensor import ElementN

coefficients = st.integers(min_value=-9, max_value=9).filter(lambda c: c != 0)

graded_atoms = st.tuples(
    st.just("v"), st.integers(min_value=-3, max_value=3), st.integers(min_value=0, max_value=3)
)
eunit_atoms = st.tuples(
    st.just("e"), st.integers(min_value=0, max_value=5), st.integers(min_value=0, max_value=5)
)
atoms = st.one_of(graded_atoms, eunit_atoms)


@st.composite
def elements1(draw, max_atoms: int = 4) -> Element1:
    pairs = draw(st.lists(st.tuples(atoms, coefficients), max_size=max_atoms))
    return from_atoms(pairs)


@st.composite
def nonzero_elements1(draw) -> Element1:
    e = draw(elements1())
    if e.is_zero():
        e = e + Element1.one()
    return e


@st.composite
def elements_n(draw, n: int = 2, max_terms: int = 3) -> ElementN:
    keys = st.tuples(*([atoms] * n))
    terms = draw(st.dictionaries(keys, coefficients, max_size=max_terms))
    return ElementN(n, terms)


@st.composite
def polys1(draw) -> dict:
    return draw(
        st.dictionaries(st.integers(min_value=0, max_value=5), coefficients, min_size=1, max_size=3)
    )


@st.composite
def polys_n(draw, n: int = 2) -> dict:
    keys = st.tuples(*([st.integers(min_value=0, max_value=3)] * n))
    return draw(st.dictionaries(keys, coefficients, min_size=1, max_size=3))


def frac(a, b=1) -> Fraction:
    return Fraction(a, b)
