"""Tests for permutation characters, Solomon's formula and the MacMahon side."""

import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.services.characters import (
    binomial_collapse,
    character_table,
    composition_to_subset,
    compositions,
    coset_fixed_points,
    epsilon,
    macmahon_series,
    macmahon_series_coefficient,
    macmahon_solomon_bridge,
    merris_watkins_coefficient,
    ordered_set_partitions,
    pi_J,
    solomon_check,
    solomon_reordered_sum,
    solomon_sum,
    subset_to_composition,
    symmetric_pi,
    theorem3_check,
)
from app.services.conjugacy import conjugacy_classes
from app.services.coxeter import (
    CoxeterError,
    SubsetJ,
    enumerate_elements,
    longest_element,
)
from app.services.parabolic import parabolic_elements
from app.services.polynomial import PolynomialError, permutation_monomial


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def _subsets(home):
    return [SubsetJ(mask, home.rank) for mask in range(1 << home.rank)]


def _brute_collapse(A, B):
    free = sorted(B - A)
    return sum((-1) ** (len(A) + k) for k in range(len(free) + 1)
               for _ in itertools.combinations(free, k))


small_sets = st.frozensets(st.integers(0, 9), max_size=10)


# ---------------------------------------------------------------------------
# Permutation characters
# ---------------------------------------------------------------------------

class TestPermutationCharacters:
    @pytest.mark.parametrize('text', ['A3', 'B3', 'I2:5'])
    def test_identity_counts_every_coset(self, system, text):
        home = system(text)
        for J in _subsets(home):
            assert pi_J(home.identity(), J) == home.order // len(parabolic_elements(home, J))

    @pytest.mark.parametrize('text', ['A3', 'B3'])
    def test_trivial_and_regular_characters(self, system, text):
        home = system(text)
        for w in enumerate_elements(home):
            assert pi_J(w, home.full_subset()) == 1
            assert pi_J(w, SubsetJ.empty(home.rank)) == (home.order if w.is_identity() else 0)

    @pytest.mark.parametrize('text', ['A3', 'B3', 'I2:6'])
    def test_agrees_with_fixed_cosets(self, system, text):
        home = system(text)
        for J in _subsets(home):
            for w in enumerate_elements(home):
                assert pi_J(w, J) == coset_fixed_points(w, J)

    def test_a1(self, system):
        home = system('A1')
        s = home.generator(0)
        empty = SubsetJ.empty(1)
        assert [pi_J(home.identity(), empty), pi_J(s, empty)] == [2, 0]
        assert epsilon(s) == -1 and epsilon(home.identity()) == 1

    def test_class_function(self, system):
        home = system('B3')
        J = SubsetJ.from_labels(3, [2, 3])
        for w in enumerate_elements(home):
            assert all(pi_J(w.conjugate(x), J) == pi_J(w, J) for x in home.generators())


# ---------------------------------------------------------------------------
# Solomon's alternating sum
# ---------------------------------------------------------------------------

class TestSolomon:
    @pytest.mark.parametrize('text', ['A3', 'B3', 'D4', 'I2:5'])
    def test_alternating_sum_is_the_sign(self, system, text):
        home = system(text)
        for w in enumerate_elements(home):
            assert solomon_sum(w) == epsilon(w)
            assert solomon_reordered_sum(w) == epsilon(w)

    @pytest.mark.parametrize('text', ['B3', 'D4', 'H3', 'I2:7', 'F4'])
    def test_check_on_class_samples(self, system, text):
        assert solomon_check(system(text), samples=3, seed=1)

    @pytest.mark.slow
    def test_check_on_e6(self, system):
        assert solomon_check(system('E6'), samples=1)

    @settings(max_examples=100, deadline=None)
    @given(small_sets, small_sets)
    def test_binomial_collapse(self, A, extra):
        B = A | extra
        assert binomial_collapse(A, B) == _brute_collapse(A, B)
        assert binomial_collapse(A, B) == ((-1) ** len(A) if A == B else 0)

    def test_binomial_collapse_needs_a_subset(self):
        assert binomial_collapse(frozenset({1}), frozenset({2})) == 0


class TestCharacterTable:
    def test_a2_table(self, system):
        table = character_table(system('A2'))
        assert table.values.shape == (3, 4)
        assert table.value(0, SubsetJ.empty(2)) == 6
        assert table.signs == (1, -1, 1)
        assert all(table.value(p, SubsetJ.full(2)) == 1 for p in range(3))

    def test_csv(self, system):
        lines = character_table(system('A2')).to_csv().splitlines()
        assert lines[0] == 'class,rep,J={},J={1},J={2},"J={1,2}",epsilon'
        assert lines[1] == '1,,6,3,3,1,1'
        assert len(lines) == 4


# ---------------------------------------------------------------------------
# Unique solutions for minimal elements
# ---------------------------------------------------------------------------

class TestUniqueConjugators:
    @pytest.mark.parametrize('text', ['A1', 'A2', 'A3', 'B3', 'D4', 'I2:5', 'H3'])
    def test_unique_solutions(self, system, text):
        home = system(text)
        w_0 = longest_element(home, home.full_subset())
        for record in conjugacy_classes(home):
            w_J, w_J_w0 = theorem3_check(record.rep_min)
            assert w_J == longest_element(home, record.J)
            assert w_J_w0 == w_J * w_0

    def test_non_minimal_rejected(self, system):
        with pytest.raises(CoxeterError):
            theorem3_check(system('A2').from_labels([1, 2, 1]))


# ---------------------------------------------------------------------------
# Compositions
# ---------------------------------------------------------------------------

class TestCompositions:
    @pytest.mark.parametrize('n', [1, 2, 3, 5])
    def test_count(self, n):
        assert len(compositions(n)) == 2 ** (n - 1)
        assert all(sum(c) == n for c in compositions(n))

    def test_subset_of_a_composition(self):
        assert composition_to_subset((2, 2)) == SubsetJ.from_labels(3, [1, 3])
        assert composition_to_subset((1, 1, 1)) == SubsetJ.empty(2)
        assert composition_to_subset((3,)) == SubsetJ.full(2)

    @pytest.mark.parametrize('n', [2, 3, 4, 5])
    def test_round_trip(self, n):
        for composition in compositions(n):
            assert subset_to_composition(composition_to_subset(composition), n) == composition

    def test_rejects_bad_compositions(self):
        with pytest.raises(PolynomialError):
            composition_to_subset((2, 0, 1))

    def test_ordered_set_partitions(self):
        blocks = list(ordered_set_partitions([1, 2, 3, 4], (2, 2)))
        assert len(blocks) == math.comb(4, 2)
        assert ((1, 2), (3, 4)) in blocks


# ---------------------------------------------------------------------------
# MacMahon master theorem
# ---------------------------------------------------------------------------

class TestMacMahon:
    @pytest.mark.parametrize('n', [1, 2, 3])
    def test_permutation_coefficients_are_one(self, n):
        for images in itertools.permutations(range(1, n + 1)):
            assert macmahon_series_coefficient(n, images) == 1

    def test_series_for_n2(self):
        series = macmahon_series(2)
        assert series.coefficient(permutation_monomial((1, 2))) == 1
        assert series.coefficient(permutation_monomial((2, 1))) == 1
        assert series.coefficient((0, 0, 0, 0)) == 1

    def test_merris_watkins_transposition(self):
        assert merris_watkins_coefficient(3, (1, 2), (1, 3, 2)) == -1
        assert symmetric_pi(3, (1, 2), (1, 3, 2)) == -1

    def test_merris_watkins_double_transposition(self):
        assert merris_watkins_coefficient(4, (2, 2), (2, 1, 4, 3)) == 2
        assert symmetric_pi(4, (2, 2), (2, 1, 4, 3)) == 2

    def test_single_block_is_the_sign(self):
        for images in itertools.permutations(range(1, 4)):
            assert merris_watkins_coefficient(3, (3,), images) == symmetric_pi(3, (3,), images)

    @pytest.mark.parametrize('n', [1, 2, 3, 4])
    def test_bridge(self, n):
        assert macmahon_solomon_bridge(n)

    @pytest.mark.slow
    def test_bridge_sampled_n5(self):
        assert macmahon_solomon_bridge(5, sample=20, seed=3)

    @pytest.mark.parametrize('call', [
        lambda: macmahon_series_coefficient(3, (1, 2, 3), order=2),
        lambda: macmahon_series_coefficient(7, tuple(range(1, 8))),
        lambda: macmahon_series_coefficient(3, (1, 1, 2)),
        lambda: merris_watkins_coefficient(3, (2, 2), (1, 2, 3)),
        lambda: macmahon_series(2, order=0),
    ])
    def test_rejections(self, call):
        with pytest.raises(PolynomialError):
            call()

    def test_higher_order_does_not_change_the_coefficient(self):
        assert macmahon_series_coefficient(3, (2, 3, 1), order=5) == Fraction(1)
