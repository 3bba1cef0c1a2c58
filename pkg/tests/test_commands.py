"""Tests for the command line surface and its exit codes."""

import json

import pytest

from app.middleware.exit_codes import EXIT_BUDGET, EXIT_PASS, EXIT_USAGE


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def _json(result):
    assert result.exit_code == EXIT_PASS, result.output
    return json.loads(result.output)


# ---------------------------------------------------------------------------
# group-info
# ---------------------------------------------------------------------------

class TestGroupInfo:
    def test_text(self, runner):
        result = runner.invoke(args=['group-info', 'A3'])
        assert result.exit_code == EXIT_PASS
        assert 'order:          24' in result.output

    def test_json(self, runner):
        data = _json(runner.invoke(args=['group-info', 'I2:7', '--output', 'json']))
        assert data['schema'] == 1
        assert data['order'] == 14
        assert data['coxeter_matrix'] == [[1, 7], [7, 1]]
        assert data['degrees'] == [2, 7]

    def test_enumerate(self, runner):
        data = _json(runner.invoke(args=['group-info', 'A3', '--enumerate', '--output', 'json']))
        assert data['longest_length'] == 6
        assert len(data['longest_element']) == 6

    def test_csv(self, runner):
        result = runner.invoke(args=['group-info', 'B3', '--output', 'csv'])
        assert result.exit_code == EXIT_PASS
        assert result.output.splitlines()[0] == 'key,value'
        assert 'order,48' in result.output.splitlines()

    @pytest.mark.parametrize('group', ['X9', 'D3', 'I2:1'])
    def test_bad_group(self, runner, group):
        assert runner.invoke(args=['group-info', group]).exit_code == EXIT_USAGE

    def test_bad_budget(self, runner):
        assert runner.invoke(args=['group-info', 'A3', '--budget', '0']).exit_code == EXIT_USAGE


# ---------------------------------------------------------------------------
# classes and characters
# ---------------------------------------------------------------------------

class TestClasses:
    def test_csv_rows(self, runner):
        result = runner.invoke(args=['classes', 'A3', '--output', 'csv'])
        assert result.exit_code == EXIT_PASS
        lines = result.output.splitlines()
        assert lines[0].startswith('position,rep_min,length')
        assert len(lines) == 1 + 5

    def test_json_is_the_cached_payload(self, runner):
        data = _json(runner.invoke(args=['classes', 'B3', '--output', 'json']))
        assert data['group'] == 'B3'
        assert data['order'] == 48
        assert len(data['classes']) == 10

    def test_second_run_hits_the_memo(self, runner):
        first = runner.invoke(args=['classes', 'A2'])
        second = runner.invoke(args=['classes', 'A2'])
        assert '(computed)' in first.output.splitlines()[0]
        assert '(memo)' in second.output.splitlines()[0]

    def test_refresh(self, runner):
        runner.invoke(args=['classes', 'A2'])
        result = runner.invoke(args=['classes', 'A2', '--refresh'])
        assert '(computed)' in result.output.splitlines()[0]

    def test_budget_exit_code(self, runner):
        result = runner.invoke(args=['classes', 'A5', '--budget', '100'])
        assert result.exit_code == EXIT_BUDGET

    def test_characters_csv(self, runner):
        result = runner.invoke(args=['characters', 'A2'])
        assert result.exit_code == EXIT_PASS
        assert result.output.splitlines()[0] == 'class,rep,J={},J={1},J={2},"J={1,2}",epsilon'

    def test_characters_json(self, runner):
        data = _json(runner.invoke(args=['characters', 'A1', '--output', 'json']))
        assert data['subsets'] == [[], [1]]
        assert [c['values'] for c in data['classes']] == [[2, 1], [0, 1]]
        assert [c['epsilon'] for c in data['classes']] == [1, -1]


# ---------------------------------------------------------------------------
# complement
# ---------------------------------------------------------------------------

class TestComplement:
    def test_d5_counterexample(self, runner):
        result = runner.invoke(args=['complement', 'D5', '--lambda', '(1),(2,2)'])
        assert result.exit_code == EXIT_PASS
        assert 'no-involution-in-coset' in result.output
        assert '|C_W(w)| = 32, |C_W_J(w)| = 16' in result.output

    def test_b4_found(self, runner):
        data = _json(runner.invoke(args=['complement', 'B4', '--lambda', '(2,2),()', '--output', 'json']))
        assert data['status'] == 'found'
        assert data['certificate']['kind'] == 'pro-M'

    def test_type_a_label(self, runner):
        data = _json(runner.invoke(args=['complement', 'A4', '--lambda', '(1,2,2)', '--output', 'json']))
        assert data['status'] == 'found'

    def test_coxeter_class(self, runner):
        data = _json(runner.invoke(args=['complement', 'I2:5', '--class', 'coxeter', '--output', 'json']))
        assert data['status'] == 'found'
        assert data['J'] == [1, 2]

    def test_class_position_and_word(self, runner):
        by_position = _json(runner.invoke(args=['complement', 'A3', '--class', '2', '--output', 'json']))
        by_word = _json(runner.invoke(args=['complement', 'A3', '--class', 'word:3', '--output', 'json']))
        assert by_position['element'] == by_word['element'] == [1]

    @pytest.mark.parametrize('args', [
        ['complement', 'A3'],
        ['complement', 'A3', '--class', '9'],
        ['complement', 'A3', '--class', 'word:1,5'],
        ['complement', 'A3', '--class', 'longest'],
        ['complement', 'H3', '--lambda', '(3)'],
        ['complement', 'D4', '--lambda', '(1),(3)'],
    ])
    def test_usage_errors(self, runner, args):
        assert runner.invoke(args=args).exit_code == EXIT_USAGE


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------

class TestChecks:
    def test_solomon(self, runner):
        result = runner.invoke(args=['solomon', 'B3'])
        assert result.exit_code == EXIT_PASS
        assert 'solomon B3: pass' in result.output

    def test_solomon_json(self, runner):
        data = _json(runner.invoke(args=['solomon', 'I2:5', '--output', 'json']))
        assert data == {'schema': 1, 'check': 'solomon', 'subject': 'I2:5', 'passed': True}

    def test_macmahon(self, runner):
        result = runner.invoke(args=['macmahon', '3'])
        assert result.exit_code == EXIT_PASS
        assert 'macmahon n=3: pass' in result.output

    def test_macmahon_rank_limit(self, runner):
        assert runner.invoke(args=['macmahon', '9']).exit_code == EXIT_USAGE

    def test_theorem3(self, runner):
        result = runner.invoke(args=['theorem3', 'A1'])
        assert result.exit_code == EXIT_PASS
        assert 'theorem3 A1: pass' in result.output

    @pytest.mark.parametrize('group', ['A3', 'A4', 'B3', 'D4', 'I2:6', 'I2:8'])
    def test_verify(self, runner, group):
        assert runner.invoke(args=['verify', group]).exit_code == EXIT_PASS

    @pytest.mark.slow
    def test_verify_d5(self, runner):
        result = runner.invoke(args=['verify', 'D5'])
        assert result.exit_code == EXIT_PASS
        assert 'no-involution-in-coset' in result.output

    @pytest.mark.slow
    def test_verify_e6(self, runner):
        result = runner.invoke(args=['verify', 'E6'])
        assert result.exit_code == EXIT_PASS
        assert 'subgroup-search' in result.output

    def test_verify_budget(self, runner):
        assert runner.invoke(args=['verify', 'B4', '--budget', '10']).exit_code == EXIT_BUDGET
