"""The A/F/L split, socle classification, census, kernel witness and the
exact dimension engine."""

import random

import pytest
from hypothesis import given, settings

from idop.element import Element1
from idop.oracle import to_matrix
from idop.sampling import random_nonzero_element_n, random_weyl_word
from idop.structure import (
    MultiplicityReport,
    bimodule_filtration_dims,
    census,
    in_a_span,
    in_f_span,
    in_l_span,
    kernel_witness_check,
    multiplicity_report,
    q_dims,
    socle_level,
    socle_member,
    split,
)
from idop.tensor import ElementN, lift
from conftest import elements1

D = Element1.from_generator("d")
I = Element1.from_generator("I")
H = Element1.from_generator("H")
X = Element1.from_generator("x")
E00 = Element1(fpart={(0, 0): 1})


class TestSplit:
    def test_integral_is_complement(self):
        parts = split(I)
        assert parts.a_part.is_zero() and parts.f_part.is_zero()
        assert parts.l_part == I

    def test_x_is_weyl(self):
        parts = split(X)
        assert parts.a_part == X
        assert parts.f_part.is_zero() and parts.l_part.is_zero()

    def test_low_degree_remainder(self):
        a = Element1({2: [0, 1]})  # I^2 H: degree 1 < 2, entirely in the complement
        parts = split(a)
        assert parts.l_part == a
        assert parts.a_part.is_zero()

    def test_mixed(self):
        a = X.power(2) + I.power(2) * H + E00
        parts = split(a)
        assert parts.a_part == X.power(2)
        assert parts.l_part == I.power(2) * H
        assert parts.f_part == E00

    @given(elements1())
    @settings(max_examples=60, deadline=None)
    def test_round_trip_and_spans(self, a):
        parts = split(a)
        assert parts.total() == a
        assert in_a_span(parts.a_part)
        assert in_f_span(parts.f_part)
        assert in_l_span(parts.l_part)

    @given(elements1())
    @settings(max_examples=30, deadline=None)
    def test_oracle_re_sum(self, a):
        N = 16
        total = to_matrix(split(a).a_part, N) + to_matrix(split(a).f_part, N) + to_matrix(
            split(a).l_part, N
        )
        assert total == to_matrix(a, N)


class TestSocle:
    def test_levels(self):
        assert socle_level(lift(1, I, 2) * lift(2, I, 2)) == 2
        assert socle_level(lift(2, I, 2)) == 1
        assert socle_level(lift(1, E00, 2) * lift(2, X, 2)) == 0

    def test_zero_is_undefined(self):
        with pytest.raises(ValueError):
            socle_level(ElementN.zero(2))

    def test_membership(self):
        assert socle_member(lift(2, I, 2), 1)
        assert not socle_member(lift(1, I, 2) * lift(2, I, 2), 1)
        assert socle_member(ElementN.zero(2), 0)

    def test_cancellation_is_respected(self):
        # I^2 H(H+1) = x^2 is Weyl even though the atoms I^2 H^t are not
        a = lift(1, I.power(2) * (H * H + H), 2)
        assert socle_level(a) == 0

    def test_monotone_under_weyl_products(self):
        rng = random.Random(1)
        for _ in range(150):
            u = random_weyl_word(rng, 2)
            a = random_nonzero_element_n(rng, 2)
            v = random_weyl_word(rng, 2)
            prod = u * a * v
            if not prod.is_zero():
                assert socle_level(prod) <= socle_level(a)


class TestCensus:
    def test_mixed_element(self):
        a = ElementN.one(2) + lift(1, E00, 2) * lift(2, I, 2)
        assert census(a) == {("A", "A"), ("F", "L")}

    def test_zero(self):
        assert census(ElementN.zero(2)) == set()

    def test_full_grid(self):
        rep = Element1.one() + E00 + I
        nine = lift(1, rep, 2) * lift(2, rep, 2)
        assert len(census(nine)) == 9

    def test_additive_bound(self):
        rng = random.Random(2)
        for _ in range(50):
            a = random_nonzero_element_n(rng, 2)
            b = random_nonzero_element_n(rng, 2)
            assert census(a + b) <= census(a) | census(b)


class TestQDims:
    def test_first(self):
        assert q_dims(0) == [1]

    def test_closed_form(self):
        assert q_dims(2) == [1, 3, 6]
        got = q_dims(10)
        assert got[10] == 66
        assert got == [(i + 1) * (i + 2) // 2 for i in range(11)]


class TestKernelWitness:
    def test_base_case(self):
        assert kernel_witness_check(0, 0, 0, 1) == (True, True)

    def test_mismatched_column(self):
        h_diff = lift(1, H, 2) - lift(2, H, 2)
        e = ElementN(2, {(("e", 0, 0), ("e", 0, 1)): 1})
        assert e * h_diff == -e

    def test_small_grid(self):
        for i in range(4):
            for j in range(4):
                for k in range(4):
                    assert kernel_witness_check(i, j, k, j)[0]


class TestFiltrationDims:
    def test_e00_generator(self):
        dims = bimodule_filtration_dims([E00], 6)
        assert dims == [(i + 1) * (i + 2) // 2 for i in range(7)]

    def test_unit_generator(self):
        dims = bimodule_filtration_dims([Element1.one()], 6)
        assert dims == [(i + 1) * (i + 2) // 2 for i in range(7)]

    def test_monotone_and_order_invariant(self):
        a = bimodule_filtration_dims([Element1.one(), I], 5)
        b = bimodule_filtration_dims([I, Element1.one()], 5)
        assert a == b
        assert all(a[i] <= a[i + 1] for i in range(len(a) - 1))

    def test_validation(self):
        with pytest.raises(ValueError):
            bimodule_filtration_dims([], 3)
        with pytest.raises(ValueError):
            bimodule_filtration_dims([Element1.zero()], 3)
        with pytest.raises(ValueError):
            bimodule_filtration_dims([Element1.one()], 17)


class TestMultiplicityReport:
    def test_quadratic_multiplicity_one(self):
        dims = [(i + 1) * (i + 2) // 2 for i in range(11)]
        rep = multiplicity_report(dims)
        assert rep == MultiplicityReport(degree=2, second_difference=1, stable_from=0)

    def test_constant(self):
        rep = multiplicity_report([4] * 8)
        assert rep.degree == 0
        assert rep.stable_from == 0
        assert rep.second_difference == 0

    def test_linear(self):
        rep = multiplicity_report([3 * i + 1 for i in range(8)])
        assert rep.degree == 1
        assert rep.second_difference == 0

    def test_inconclusive(self):
        assert multiplicity_report([1, 2, 4, 8, 16, 32, 64]) is None
        assert multiplicity_report([1, 2]) is None
