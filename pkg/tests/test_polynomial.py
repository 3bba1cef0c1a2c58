"""Tests for sparse polynomials and minors of the variable matrix."""

from fractions import Fraction
from itertools import permutations

import pytest
from sympy.combinatorics import Permutation

from app.services.polynomial import (
    NO_PRUNING,
    PolynomialError,
    Pruning,
    SparsePolynomial,
    minor_determinant,
    monomial_support,
    permutation_monomial,
    principal_minor,
    variable_index,
)


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def _sign(images):
    return Permutation([i - 1 for i in images]).signature()


# ---------------------------------------------------------------------------
# Arithmetic
# ---------------------------------------------------------------------------

class TestArithmetic:
    def test_square_of_a_binomial(self):
        x = SparsePolynomial.variable(2, 0)
        one = SparsePolynomial.constant(2, 1)
        square = (x + one) * (x + one)
        assert square.coefficient((2, 0)) == 1
        assert square.coefficient((1, 0)) == 2
        assert square.coefficient((0, 0)) == 1
        assert square.degree() == 2

    def test_multilinear_pruning_drops_squares(self):
        pruning = Pruning()
        x = SparsePolynomial.variable(2, 0, pruning)
        one = SparsePolynomial.constant(2, 1, pruning)
        square = (x + one) * (x + one)
        assert square.coefficient((2, 0)) == 0
        assert len(square) == 2

    def test_allowed_variables(self):
        pruning = Pruning(allowed=frozenset({1}))
        assert SparsePolynomial.variable(2, 0, pruning).is_zero()
        assert not SparsePolynomial.variable(2, 1, pruning).is_zero()

    def test_cancellation_removes_terms(self):
        x = SparsePolynomial.variable(3, 2)
        assert (x - x).is_zero()
        assert SparsePolynomial.constant(3, 0).is_zero()

    def test_scalars(self):
        x = SparsePolynomial.variable(1, 0)
        assert (x * 3).coefficient((1,)) == 3
        assert (Fraction(1, 2) * x).coefficient((1,)) == Fraction(1, 2)

    def test_mismatched_variable_sets(self):
        with pytest.raises(PolynomialError):
            SparsePolynomial.variable(2, 0) * SparsePolynomial.variable(3, 0)


# ---------------------------------------------------------------------------
# Determinants
# ---------------------------------------------------------------------------

class TestDeterminants:
    def test_variable_index(self):
        assert variable_index(3, 1, 1) == 0
        assert variable_index(3, 2, 3) == 5

    def test_two_by_two(self):
        det = principal_minor(2, {1, 2})
        assert len(det) == 2
        assert det.coefficient(permutation_monomial((1, 2))) == 1
        assert det.coefficient(permutation_monomial((2, 1))) == -1

    @pytest.mark.parametrize('n', [3, 4])
    def test_leibniz_expansion(self, n):
        det = principal_minor(n, range(1, n + 1))
        assert len(det) == len(list(permutations(range(n))))
        for images in permutations(range(1, n + 1)):
            assert det.coefficient(permutation_monomial(images)) == _sign(images)

    def test_empty_minor_is_one(self):
        det = principal_minor(3, ())
        assert det.coefficient((0,) * 9) == 1

    def test_off_diagonal_minor(self):
        det = minor_determinant(3, (1, 2), (2, 3))
        x12, x13 = variable_index(3, 1, 2), variable_index(3, 1, 3)
        x22, x23 = variable_index(3, 2, 2), variable_index(3, 2, 3)
        expected = {x12: 1, x23: 1}, {x13: 1, x22: 1}
        coeffs = []
        for spots in expected:
            exponents = [0] * 9
            for var, e in spots.items():
                exponents[var] = e
            coeffs.append(det.coefficient(exponents))
        assert coeffs == [1, -1]

    def test_pruning_to_one_monomial(self):
        images = (2, 3, 1)
        pruning = Pruning(allowed=monomial_support(images))
        det = principal_minor(3, {1, 2, 3}, pruning)
        assert len(det) == 1
        assert det.coefficient(permutation_monomial(images)) == _sign(images) == 1

    def test_pruning_keeps_the_matching_principal_minor(self):
        images = (2, 1, 3)
        pruning = Pruning(allowed=monomial_support(images))
        assert principal_minor(3, {1, 2}, pruning).coefficient(permutation_monomial(images)) == 0
        restricted = principal_minor(3, {1, 2}, pruning)
        assert len(restricted) == 1
        assert principal_minor(3, {3}, pruning).coefficient(
            [1 if v == variable_index(3, 3, 3) else 0 for v in range(9)]) == 1
        assert NO_PRUNING.keeps((2, 0))
