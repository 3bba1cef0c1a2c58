"""Tests for conjugacy classes, centralizers and normalizers."""

from dataclasses import replace

import pytest

from app.services.conjugacy import (
    ConjClassRecord,
    centralizer,
    centralizer_in_parabolic,
    check_centralizer_cosets_normalize,
    check_class_is_union_of_parabolic_classes,
    check_conjugate_supports,
    check_cuspidal_classes_do_not_fuse,
    check_minimal_representatives,
    check_minimal_supports_conjugate,
    class_members,
    class_of,
    class_partition,
    conjugacy_classes,
    howlett_splitting,
    is_minimal_length,
    min_length_class_element,
    normalizer_complement,
    normalizer_of_parabolic,
    parabolic_class,
    quotient_map_check,
    verify_theorem2,
)
from app.services.coxeter import (
    CoxeterError,
    SubsetJ,
    ascent_set,
    coxeter_element,
    enumerate_elements,
    length,
    longest_element,
)
from app.services.signed_perm import DoublePartition


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

FAST_GROUPS = ['A1', 'A2', 'A3', 'B2', 'B3', 'D4', 'I2:5', 'I2:6']


def _subsets(home):
    return [SubsetJ(mask, home.rank) for mask in range(1 << home.rank)]


def _reps(home):
    return [record.rep_min for record in conjugacy_classes(home)]


# ---------------------------------------------------------------------------
# Classes
# ---------------------------------------------------------------------------

class TestClasses:
    @pytest.mark.parametrize('text,count', [
        ('A1', 2), ('A2', 3), ('A3', 5), ('A4', 7), ('B2', 5), ('B3', 10),
        ('D4', 13), ('I2:5', 4), ('I2:6', 6), ('H3', 10), ('F4', 25),
    ])
    def test_class_counts(self, system, text, count):
        assert len(conjugacy_classes(system(text))) == count

    @pytest.mark.slow
    def test_e6_has_25_classes(self, system):
        assert len(conjugacy_classes(system('E6'))) == 25

    @pytest.mark.parametrize('text', FAST_GROUPS)
    def test_sizes_add_up(self, system, text):
        home = system(text)
        records = conjugacy_classes(home)
        assert sum(r.class_size for r in records) == home.order
        assert all(home.order % r.class_size == 0 for r in records)
        assert records[0].rep_min.is_identity()

    def test_classes_are_closed_under_conjugation(self, system):
        home = system('B3')
        partition = class_partition(home)
        for w in enumerate_elements(home):
            for x in home.generators():
                assert partition.labels[w.conjugate(x).index] == partition.labels[w.index]

    def test_class_of_and_members(self, system):
        home = system('A3')
        s1 = home.generator(0)
        record = class_of(s1)
        assert record.class_size == 6
        assert record.centralizer_order == 4
        assert len(class_members(s1)) == 6
        assert all(length(w) % 2 == 1 for w in class_members(s1))

    def test_cuspidal_counts(self, system):
        assert sum(r.cuspidal for r in conjugacy_classes(system('A3'))) == 1
        assert sum(r.cuspidal for r in conjugacy_classes(system('B3'))) == 3

    @pytest.mark.parametrize('m', range(3, 13))
    def test_dihedral_classes_are_cuspidal_or_involutions(self, system, m):
        for record in conjugacy_classes(system(f'I2:{m}')):
            w = record.rep_min
            assert record.cuspidal or (w * w).is_identity(), record.position

    def test_record_round_trip(self, system):
        home = system('B3')
        for record in conjugacy_classes(home):
            assert ConjClassRecord.from_dict(home, record.to_dict()) == record

    def test_record_dict(self, system):
        data = conjugacy_classes(system('A3'))[0].to_dict()
        assert data['rep_min'] == [] and data['length'] == 0
        assert data['class_size'] == 1 and data['centralizer_order'] == 24
        assert data['label'] == '((1,1,1,1),())'

    @pytest.mark.parametrize('label', [
        DoublePartition((10,)),
        DoublePartition((1, 12), (10, 10)),
        DoublePartition((2, 10), primed=True),
    ])
    def test_record_round_trip_with_wide_parts(self, system, label):
        home = system('A1')
        record = replace(conjugacy_classes(home)[0], label=label)
        assert ConjClassRecord.from_dict(home, record.to_dict()).label == label


# ---------------------------------------------------------------------------
# Minimal length elements
# ---------------------------------------------------------------------------

class TestMinimalLength:
    def test_reps_are_minimal(self, system):
        home = system('D4')
        for record in conjugacy_classes(home):
            assert is_minimal_length(record.rep_min)

    def test_non_minimal_element(self, system):
        home = system('A2')
        assert is_minimal_length(home.from_labels([1]))
        assert not is_minimal_length(home.from_labels([1, 2, 1]))

    @pytest.mark.parametrize('text', ['A4', 'B3', 'D4', 'H3', 'I2:8'])
    def test_w0_w_J_has_as_many_ascents_as_J(self, system, text):
        home = system(text)
        w0 = longest_element(home, home.full_subset())
        for record in conjugacy_classes(home):
            assert is_minimal_length(record.rep_min)
            assert len(ascent_set(w0 * longest_element(home, record.J))) == len(record.J)

    @pytest.mark.parametrize('text', ['A3', 'B3', 'I2:5'])
    def test_conjugating_word_reaches_the_rep(self, system, text):
        home = system(text)
        for w in enumerate_elements(home):
            rep, x = min_length_class_element(w)
            assert w.conjugate(x) == rep
            assert is_minimal_length(rep)

    @pytest.mark.parametrize('text', FAST_GROUPS + ['H3'])
    def test_parity_and_cuspidality_of_reps(self, system, text):
        assert check_minimal_representatives(system(text))

    def test_parabolic_class(self, system):
        home = system('A3')
        J = SubsetJ.from_labels(3, [1, 2])
        local = parabolic_class(home.generator(0), J)
        assert len(local) == 3
        assert home.from_labels([2]) in local and home.from_labels([3]) not in local


# ---------------------------------------------------------------------------
# Centralizers and normalizers
# ---------------------------------------------------------------------------

class TestCentralizers:
    def test_longest_element_of_b3_is_central(self, system):
        home = system('B3')
        assert len(centralizer(longest_element(home, home.full_subset()))) == 48

    @pytest.mark.parametrize('text,h', [('A3', 4), ('B3', 6), ('I2:7', 7), ('H3', 10)])
    def test_coxeter_element_centralizer_is_cyclic_of_order_h(self, system, text, h):
        home = system(text)
        cent = centralizer(coxeter_element(home))
        assert len(cent) == h
        assert cent.is_subgroup()

    @pytest.mark.parametrize('text', ['A3', 'B3', 'D4'])
    def test_orbit_stabilizer(self, system, text):
        home = system(text)
        for record in conjugacy_classes(home):
            assert len(centralizer(record.rep_min)) == record.centralizer_order

    def test_centralizer_in_parabolic(self, system):
        home = system('A3')
        J = SubsetJ.from_labels(3, [1, 2])
        assert len(centralizer_in_parabolic(home.generator(0), J)) == 2

    def test_normalizer_of_a_reflection_subgroup(self, system):
        home = system('A3')
        J = SubsetJ.from_labels(3, [1])
        assert len(normalizer_of_parabolic(home, J)) == 4
        assert len(normalizer_complement(home, J)) == 2

    def test_full_and_empty_subsets(self, system):
        home = system('B3')
        assert len(normalizer_of_parabolic(home, home.full_subset())) == 48
        assert len(normalizer_complement(home, home.full_subset())) == 1
        assert len(normalizer_complement(home, SubsetJ.empty(3))) == 48

    @pytest.mark.parametrize('text', ['A3', 'A4', 'B3', 'D4', 'I2:6'])
    def test_normalizer_splits(self, system, text):
        home = system(text)
        assert all(howlett_splitting(home, J) for J in _subsets(home))


# ---------------------------------------------------------------------------
# Structure theorems on minimal elements
# ---------------------------------------------------------------------------

class TestStructure:
    @pytest.mark.parametrize('text', FAST_GROUPS)
    def test_centralizer_covers_normalizer(self, system, text):
        home = system(text)
        assert all(verify_theorem2(w) for w in _reps(home))

    @pytest.mark.parametrize('text', FAST_GROUPS)
    def test_quotient_map(self, system, text):
        home = system(text)
        for w in _reps(home):
            report = quotient_map_check(w)
            assert report.holds, (w, report)

    @pytest.mark.slow
    @pytest.mark.parametrize('text', ['A5', 'B4', 'D5', 'H3', 'F4'])
    def test_quotient_map_larger_groups(self, system, text):
        home = system(text)
        assert all(verify_theorem2(w) and quotient_map_check(w).holds for w in _reps(home))

    @pytest.mark.parametrize('text', ['A3', 'B3', 'D4', 'I2:5'])
    def test_class_decompositions(self, system, text):
        home = system(text)
        for w in _reps(home):
            assert check_class_is_union_of_parabolic_classes(w)
            assert check_centralizer_cosets_normalize(w)
            assert check_conjugate_supports(w)
            assert check_minimal_supports_conjugate(w)

    @pytest.mark.parametrize('text', ['B3', 'D4'])
    def test_cuspidal_classes_do_not_fuse(self, system, text):
        home = system(text)
        assert all(check_cuspidal_classes_do_not_fuse(home, J) for J in _subsets(home))

    def test_non_minimal_input_rejected(self, system):
        home = system('A2')
        w = home.from_labels([1, 2, 1])
        with pytest.raises(CoxeterError):
            verify_theorem2(w)
        with pytest.raises(CoxeterError):
            quotient_map_check(w)
