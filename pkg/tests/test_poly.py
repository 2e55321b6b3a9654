from fractions import Fraction

import pytest
import sympy
from hypothesis import given

from combinatorics import Sequence, TopSet, count_top_sets, enumerate_top_sets
from errors import InvalidInputError
from poly import (
    ExponentMonomial,
    MultilinearPolynomial,
    add,
    chi_d,
    chi_pair,
    chi_top,
    dimension,
    frankl_graham_basis,
    harmonic_defect,
    harmonic_subspace_dimension,
    harmonicity_witness,
    is_harmonic,
    multiply_to_exponents,
    polynomial_rank,
    scale,
)
from strategies import top_sets


def poly(n, terms):
    return MultilinearPolynomial(n, terms)


def x(n, i):
    return MultilinearPolynomial.variable(n, i)


def to_sympy(P):
    symbols = sympy.symbols(f"x1:{P.n + 1}")
    expression = sympy.Integer(0)
    for monomial, coefficient in P.terms.items():
        term = sympy.Rational(coefficient.numerator, coefficient.denominator)
        for i in monomial:
            term *= symbols[i - 1]
        expression += term
    return expression, symbols


class TestMultilinearPolynomial:
    def test_merges_and_prunes(self):
        P = poly(3, {(2, 1): 1, (1, 2): -1, (3,): Fraction(1, 2)})
        assert P.terms == {(3,): Fraction(1, 2)}

    def test_rejects_squares(self):
        with pytest.raises(InvalidInputError):
            poly(3, {(1, 1): 1})

    def test_rejects_out_of_range(self):
        with pytest.raises(InvalidInputError):
            poly(3, {(4,): 1})

    def test_degree_and_str(self):
        P = x(3, 1) - x(3, 2)
        assert P.degree == 1
        assert str(P) == "x1 - x2"
        assert MultilinearPolynomial.zero(3).degree == -1

    def test_evaluate_on_subset(self):
        P = chi_top(TopSet((2, 4), 4))
        assert P.evaluate_on_subset((1, 3)) == 1
        assert P.evaluate_on_subset((1, 4)) == -1
        assert P.evaluate_on_subset((1, 2)) == 0

    def test_evaluate_at_point(self):
        P = poly(2, {(1, 2): 3, (): 1})
        assert P.evaluate({1: Fraction(1, 3), 2: 2}) == 3


class TestArithmetic:
    def test_add_cancels(self):
        assert add(x(3, 1) - x(3, 2), x(3, 2)) == x(3, 1)
        assert add(x(3, 1), x(3, 1) * -1).is_zero

    def test_scale(self):
        assert scale(x(3, 1) - x(3, 2), Fraction(1, 2)) == poly(3, {(1,): Fraction(1, 2), (2,): Fraction(-1, 2)})
        assert scale(x(3, 1), 0).is_zero

    def test_square_keeps_exponents(self):
        P = x(2, 1) - x(2, 2)
        assert multiply_to_exponents(P, P) == {
            ExponentMonomial.from_mapping({1: 2}): 1,
            ExponentMonomial.from_mapping({1: 1, 2: 1}): -2,
            ExponentMonomial.from_mapping({2: 2}): 1,
        }

    def test_product_of_disjoint_differences(self):
        left, right = x(4, 1) - x(4, 2), x(4, 3) - x(4, 4)
        assert multiply_to_exponents(left, right) == {
            ExponentMonomial.from_mapping({1: 1, 3: 1}): 1,
            ExponentMonomial.from_mapping({1: 1, 4: 1}): -1,
            ExponentMonomial.from_mapping({2: 1, 3: 1}): -1,
            ExponentMonomial.from_mapping({2: 1, 4: 1}): 1,
        }

    def test_different_ambients(self):
        with pytest.raises(InvalidInputError):
            add(x(3, 1), x(4, 1))


class TestYoungBasis:
    def test_chi_pair(self):
        assert chi_pair(Sequence((1,), 3), Sequence((2,), 3)) == x(3, 1) - x(3, 2)

    def test_chi_pair_rejects_overlap(self):
        with pytest.raises(InvalidInputError):
            chi_pair(Sequence((1,), 3), Sequence((1,), 3))

    def test_chi_top_degree_one(self):
        assert chi_top(TopSet((3,), 4)) == x(4, 1) + x(4, 2) - x(4, 3) * 2

    def test_chi_top_single_companion(self):
        expected = poly(4, {(1, 3): 1, (1, 4): -1, (2, 3): -1, (2, 4): 1})
        assert chi_top(TopSet((2, 4), 4)) == expected

    def test_chi_d_is_first_top_set(self):
        assert chi_d(2, 4) == chi_top(TopSet((2, 4), 4))
        assert chi_d(0, 3) == MultilinearPolynomial.constant(3, 1)

    @given(top_sets(max_n=7))
    def test_basis_elements_are_harmonic_and_homogeneous(self, B):
        P = chi_top(B)
        assert is_harmonic(P)
        assert P.is_homogeneous(len(B))

    @given(top_sets(max_n=6))
    def test_defect_matches_symbolic_derivative(self, B):
        P = chi_top(B) + x(B.n, 1)
        expression, symbols = to_sympy(P)
        symbolic = sympy.expand(sum(sympy.diff(expression, s) for s in symbols))
        defect, _ = to_sympy(harmonic_defect(P))
        assert sympy.expand(symbolic - defect) == 0

    def test_frankl_graham_degree_one(self):
        assert frankl_graham_basis(4, 1) == [x(4, 1) - x(4, 2), x(4, 1) - x(4, 3), x(4, 1) - x(4, 4)]

    def test_not_harmonic(self):
        assert harmonic_defect(x(3, 1)) == MultilinearPolynomial.constant(3, 1)


class TestDimensions:
    def test_dimension_values(self):
        assert dimension(4, 2) == (6, 2)
        assert dimension(6, 3) == (20, 5)
        assert dimension(5, 0) == (1, 1)

    def test_dimension_out_of_range(self):
        with pytest.raises(InvalidInputError):
            dimension(3, 2)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_constraint_rank_matches_formula(self, n):
        for d in range(n // 2 + 1):
            assert harmonic_subspace_dimension(n, d) == dimension(n, d)[1]

    @pytest.mark.parametrize("n", range(2, 7))
    def test_young_and_frankl_graham_bases_are_independent(self, n):
        for d in range(n // 2 + 1):
            young = [chi_top(B) for B in enumerate_top_sets(n, d)]
            assert polynomial_rank(young) == count_top_sets(n, d)
            assert polynomial_rank(frankl_graham_basis(n, d)) == count_top_sets(n, d)

    def test_rank_of_dependent_set(self):
        P, Q = x(3, 1), x(3, 2)
        assert polynomial_rank([P, Q, P + Q]) == 2
        assert polynomial_rank([]) == 0


class TestHarmonicityWitness:
    def test_small_case(self):
        P = harmonicity_witness(4, 2)
        assert P.is_homogeneous(2)
        assert harmonic_defect(P) == x(4, 1)

    @pytest.mark.parametrize("n", range(2, 8))
    def test_defect_is_leading_product(self, n):
        for d in range(1, n // 2 + 1):
            P = harmonicity_witness(n, d)
            assert P.is_homogeneous(d)
            assert harmonic_defect(P) == poly(n, {tuple(range(1, d)): 1})

    def test_out_of_range(self):
        with pytest.raises(InvalidInputError):
            harmonicity_witness(4, 0)
