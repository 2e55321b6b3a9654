from fractions import Fraction
from math import comb

import pytest
from hypothesis import given

from combinatorics import (
    Sequence,
    TopSet,
    all_top_sets,
    ballot_encoding,
    c_coefficient,
    companion_sequence,
    count_top_sets,
    enumerate_top_sets,
    is_top_set,
    smaller_sequence_count,
    smaller_sequences,
)
from errors import InvalidInputError
from strategies import top_sets


def entries(sets):
    return [B.entries for B in sets]


class TestTopSets:
    def test_ballot_encoding_starts_with_plus_one(self):
        assert ballot_encoding((2, 4), 4) == [1, 1, -1, 1, -1]

    @pytest.mark.parametrize(
        "candidate, n, expected",
        [
            ((2, 4), 4, True),
            ((3, 4), 4, True),
            ((), 3, True),
            ((1,), 4, False),
            ((2, 3), 4, False),
            ((2,), 2, True),
        ],
    )
    def test_is_top_set(self, candidate, n, expected):
        assert is_top_set(candidate, n) is expected

    def test_is_top_set_rejects_unsorted_input(self):
        with pytest.raises(InvalidInputError):
            is_top_set((4, 2), 4)

    def test_enumerate_small_cases(self):
        assert entries(enumerate_top_sets(4, 2)) == [(2, 4), (3, 4)]
        assert entries(enumerate_top_sets(4, 1)) == [(2,), (3,), (4,)]
        assert entries(enumerate_top_sets(4, 0)) == [()]

    def test_enumerate_above_half_is_empty(self):
        assert enumerate_top_sets(3, 2) == []

    @pytest.mark.parametrize("n", range(1, 13))
    def test_count_matches_enumeration(self, n):
        for d in range(n // 2 + 1):
            assert len(enumerate_top_sets(n, d)) == count_top_sets(n, d) == comb(n, d) - (comb(n, d - 1) if d else 0)

    def test_count_out_of_range(self):
        with pytest.raises(InvalidInputError):
            count_top_sets(3, 2)

    def test_all_top_sets_is_degree_major(self):
        assert entries(all_top_sets(4)) == [(), (2,), (3,), (4,), (2, 4), (3, 4)]
        assert entries(all_top_sets(4, max_degree=1)) == [(), (2,), (3,), (4,)]

    def test_top_set_validation(self):
        with pytest.raises(InvalidInputError):
            TopSet((1,), 4)
        with pytest.raises(InvalidInputError):
            TopSet((2, 2), 4)
        with pytest.raises(InvalidInputError):
            TopSet((6,), 4)

    def test_intersection_size(self):
        B = TopSet((2, 4), 5)
        assert [B.intersection_size(m) for m in range(1, 6)] == [0, 1, 1, 2, 2]


class TestSmallerSequences:
    def test_companion_is_greedy(self):
        assert companion_sequence(TopSet((2, 4), 4)).entries == (1, 3)
        assert companion_sequence(TopSet((3, 4), 4)).entries == (1, 2)
        assert companion_sequence(TopSet((), 4)).entries == ()

    def test_smaller_sequences_lexicographic(self):
        found = [A.entries for A in smaller_sequences(TopSet((3, 4), 4))]
        assert found == [(1, 2), (2, 1)]

    def test_sequence_order(self):
        assert Sequence((2, 1), 4).is_smaller_than(Sequence((3, 4), 4))
        assert not Sequence((1, 3), 4).is_smaller_than(Sequence((3, 4), 4))

    @given(top_sets())
    def test_count_formula(self, B):
        smaller = smaller_sequences(B)
        assert len(smaller) == smaller_sequence_count(B)
        assert all(A.is_smaller_than(Sequence(B.entries, B.n)) for A in smaller)
        assert companion_sequence(B).entries in {A.entries for A in smaller}


class TestCoefficient:
    @pytest.mark.parametrize(
        "B, expected",
        [((), 1), ((2,), 1), ((3,), 3), ((4,), 6), ((2, 4), 1), ((3, 4), 3)],
    )
    def test_small_values(self, B, expected):
        assert c_coefficient(TopSet(B, 4)) == expected

    @given(top_sets())
    def test_is_a_positive_integer(self, B):
        value = c_coefficient(B)
        assert isinstance(value, Fraction)
        assert value.denominator == 1 and value >= 1
