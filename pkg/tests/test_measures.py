from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from combinatorics import TopSet, all_top_sets, c_coefficient
from errors import InvalidInputError
from expansion import SliceFunction
from measures import (
    ExchangeableMeasure,
    ProductMu,
    ProductNu,
    UniformSlice,
    chi_norm_sq,
    inner_product,
    monomial_moment,
    norm_sq,
    standard_measures,
)
from poly import ExponentMonomial, MultilinearPolynomial, chi_d, chi_top
from strategies import polynomials


def tops_for(n, measure):
    return all_top_sets(n, measure.k if isinstance(measure, UniformSlice) else None)


class TestMoments:
    def test_slice_moment_counts_distinct_indices(self):
        mu = UniformSlice(4, 2)
        assert monomial_moment(mu, ExponentMonomial.from_mapping({1: 2})) == Fraction(1, 2)
        assert monomial_moment(mu, ExponentMonomial.from_mapping({1: 1, 2: 2})) == Fraction(1, 6)
        assert monomial_moment(mu, ExponentMonomial.from_mapping({1: 1, 2: 1, 3: 1})) == 0

    def test_product_nu_is_centered(self):
        nu = ProductNu(Fraction(1, 3))
        assert nu.central_moment(1) == 0
        assert nu.central_moment(2) == Fraction(2, 9)
        assert nu.monomial_moment(ExponentMonomial.from_mapping({1: 1, 2: 2})) == 0

    def test_invalid_parameters(self):
        with pytest.raises(InvalidInputError):
            UniformSlice(4, 3)
        with pytest.raises(InvalidInputError):
            ProductMu(Fraction(3, 2))


class TestNorms:
    def test_slice_closed_form(self):
        assert UniformSlice(4, 2).chi_d_norm_sq(1) == Fraction(2, 3)
        assert UniformSlice(4, 2).chi_d_norm_sq(2) == Fraction(2, 3)
        assert UniformSlice(2, 1).chi_d_norm_sq(1) == 1

    def test_product_closed_form(self):
        assert ProductMu(Fraction(1, 2)).chi_d_norm_sq(2) == Fraction(1, 4)
        assert ProductNu(Fraction(1, 3)).chi_d_norm_sq(1) == Fraction(4, 9)

    @pytest.mark.parametrize("n", range(2, 9))
    def test_generic_formula_agrees_with_closed_forms(self, n):
        for measure in standard_measures(n):
            top = measure.k if isinstance(measure, UniformSlice) else n // 2
            for d in range(top + 1):
                assert ExchangeableMeasure.chi_d_norm_sq(measure, d) == measure.chi_d_norm_sq(d)

    def test_chi_d_inner_product_matches_closed_form(self):
        for measure in standard_measures(6):
            for d in range(0, (measure.k if isinstance(measure, UniformSlice) else 3) + 1):
                P = chi_d(d, 6)
                assert inner_product(P, P, measure) == measure.chi_d_norm_sq(d)

    def test_chi_norm_uses_c_coefficient(self):
        B = TopSet((3, 4), 4)
        assert chi_norm_sq(B, UniformSlice(4, 2)) == 3 * Fraction(2, 3)
        assert chi_norm_sq(B, ProductMu(Fraction(1, 2))) == c_coefficient(B) * Fraction(1, 4)


@pytest.mark.parametrize("n", range(2, 7))
def test_orthogonality_and_norms(n):
    for measure in standard_measures(n):
        tops = tops_for(n, measure)
        for A, B in combinations(tops, 2):
            assert inner_product(chi_top(A), chi_top(B), measure) == 0
        for B in tops:
            assert inner_product(chi_top(B), chi_top(B), measure) == chi_norm_sq(B, measure)


@pytest.mark.slow
@pytest.mark.parametrize("n", [7, 8])
def test_orthogonality_and_norms_large(n):
    test_orthogonality_and_norms(n)


class TestInnerProduct:
    def test_slice_function_against_polynomial(self):
        f = SliceFunction.coordinate(4, 2, 1)
        x1 = MultilinearPolynomial.variable(4, 1)
        assert inner_product(f, x1) == Fraction(1, 2)
        assert inner_product(f, x1, UniformSlice(4, 2)) == Fraction(1, 2)
        assert norm_sq(f) == Fraction(1, 2)

    def test_slice_sum_agrees_with_moment_route(self):
        mu = UniformSlice(5, 2)
        P = chi_top(TopSet((3,), 5))
        Q = chi_top(TopSet((2, 5), 5)) + P
        assert inner_product(P, Q, mu) == inner_product(SliceFunction.from_polynomial(P, 2), Q)

    def test_polynomials_need_a_measure(self):
        x1 = MultilinearPolynomial.variable(3, 1)
        with pytest.raises(InvalidInputError):
            inner_product(x1, x1)

    def test_slice_function_rejects_other_measures(self):
        f = SliceFunction.coordinate(4, 2, 1)
        with pytest.raises(InvalidInputError):
            inner_product(f, f, ProductMu(Fraction(1, 2)))


class TestExchangeability:
    @given(st.integers(2, 8), st.data())
    def test_moment_is_invariant_under_relabeling(self, n, data):
        measure = data.draw(st.sampled_from(standard_measures(n)))
        exponents = data.draw(st.dictionaries(st.integers(1, n), st.integers(1, 3), max_size=n))
        image = data.draw(st.permutations(range(1, n + 1)))
        relabeled = {image[i - 1]: e for i, e in exponents.items()}
        assert monomial_moment(measure, ExponentMonomial.from_mapping(exponents)) == monomial_moment(
            measure, ExponentMonomial.from_mapping(relabeled)
        )


class TestZeroNorm:
    @given(st.integers(2, 8), st.data())
    def test_slice_norm_vanishes_exactly_above_k(self, n, data):
        k = data.draw(st.integers(1, n // 2))
        B = data.draw(st.sampled_from(all_top_sets(n)))
        mu = UniformSlice(n, k)
        assert (chi_norm_sq(B, mu) == 0) == (len(B) > k)

    @pytest.mark.parametrize("n, k", [(4, 1), (6, 2), (7, 1)])
    def test_high_degree_basis_elements_vanish_on_the_slice(self, n, k):
        for B in all_top_sets(n):
            if len(B) > k:
                assert SliceFunction.from_polynomial(chi_top(B), k) == SliceFunction.constant(n, k, 0)
                assert inner_product(chi_top(B), chi_top(B), UniformSlice(n, k)) == 0


def _check_moment_routes(n, data):
    k = data.draw(st.integers(1, n // 2))
    P, Q = data.draw(polynomials(n)), data.draw(polynomials(n))
    mu = UniformSlice(n, k)
    via_moments = inner_product(P, Q, mu)
    assert via_moments == inner_product(SliceFunction.from_polynomial(P, k), Q)
    assert via_moments == inner_product(P, SliceFunction.from_polynomial(Q, k), mu)


class TestMomentRoutes:
    @given(st.integers(2, 6), st.data())
    def test_polynomial_and_point_sums_agree(self, n, data):
        _check_moment_routes(n, data)

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [7, 8])
    @given(data=st.data())
    def test_polynomial_and_point_sums_agree_large(self, n, data):
        _check_moment_routes(n, data)
