"""Tests for exact arithmetic in Q(2cos(pi/m))."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.services.numberfield import (
    AlgebraicNumber,
    FieldError,
    RATIONALS,
    minimal_polynomial,
    number_field,
    theta_interval,
)


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

F7 = number_field(7)


def _poly_at(coeffs, x):
    return sum(float(c) * x ** i for i, c in enumerate(coeffs))


elements_of_f7 = st.tuples(*[st.integers(-5, 5)] * 3).map(
    lambda cs: AlgebraicNumber(F7, tuple(Fraction(c) for c in cs))
)


# ---------------------------------------------------------------------------
# Minimal polynomials
# ---------------------------------------------------------------------------

class TestMinimalPolynomial:
    """2cos(pi/m) is a root of a monic rational polynomial of degree phi(2m)/2."""

    @pytest.mark.parametrize('m,expected', [
        (1, (2, 1)),
        (2, (0, 1)),
        (3, (-1, 1)),
        (4, (-2, 0, 1)),
        (5, (-1, -1, 1)),
        (6, (-3, 0, 1)),
        (7, (1, -2, -1, 1)),
    ])
    def test_known_polynomials(self, m, expected):
        assert minimal_polynomial(m) == tuple(Fraction(c) for c in expected)

    @pytest.mark.parametrize('m', [5, 7, 8, 9, 10, 12])
    def test_theta_is_a_root(self, m):
        coeffs = minimal_polynomial(m)
        assert coeffs[-1] == 1
        assert abs(_poly_at(coeffs, 2 * math.cos(math.pi / m))) < 1e-9

    @pytest.mark.parametrize('m,degree', [(8, 4), (9, 3), (12, 4)])
    def test_degrees(self, m, degree):
        assert number_field(m).degree == degree

    def test_rejects_nonpositive_m(self):
        with pytest.raises(FieldError):
            minimal_polynomial(0)


# ---------------------------------------------------------------------------
# Field arithmetic
# ---------------------------------------------------------------------------

class TestFieldArithmetic:
    def test_golden_ratio_relation(self):
        F = number_field(5)
        theta = F.theta()
        assert theta * theta == theta + 1

    def test_sqrt2_squares_to_two(self):
        theta = number_field(4).theta()
        assert theta * theta == 2

    def test_rationals_are_degree_one(self):
        assert RATIONALS.degree == 1
        assert RATIONALS(Fraction(1, 2)) * 4 == 2

    def test_mixed_fields_rejected(self):
        with pytest.raises(FieldError):
            number_field(5).theta() + number_field(7).theta()

    def test_coercion_rejects_foreign_elements(self):
        with pytest.raises(FieldError):
            number_field(5)(number_field(7).theta())

    def test_sign(self):
        F = number_field(5)
        assert (F.theta() - 2).sign() == -1
        assert (F.theta() - 1).sign() == 1
        assert F(0).sign() == 0

    def test_sign_far_below_float_resolution(self):
        # consecutive Fibonacci ratios straddle the golden ratio 2cos(pi/5)
        theta = number_field(5).theta()
        assert (theta - Fraction(165580141, 102334155)).sign() == -1
        assert (theta - Fraction(267914296, 165580141)).sign() == 1

    @pytest.mark.parametrize('m', [4, 5, 7, 9, 12])
    def test_theta_interval(self, m):
        low, high = theta_interval(m)
        assert 0 <= high - low <= Fraction(1, 2 ** 64)
        assert math.isclose(float(low), 2 * math.cos(math.pi / m), abs_tol=1e-12)

    def test_bool_and_hash(self):
        F = number_field(5)
        assert not F(0)
        assert hash(F.theta() + 0) == hash(F.theta())


class TestTwoCos:
    """2cos(pi/k) inside Q(2cos(pi/m)) for k dividing m."""

    def test_small_k(self):
        F = number_field(5)
        assert F.two_cos(1) == -2
        assert F.two_cos(2) == 0
        assert F.two_cos(3) == 1

    def test_k_equal_to_m_is_theta(self):
        F = number_field(7)
        assert F.two_cos(7) == F.theta()

    def test_divisor(self):
        F = number_field(10)
        assert math.isclose(float(F.two_cos(5)), 2 * math.cos(math.pi / 5), abs_tol=1e-12)

    def test_non_divisor_rejected(self):
        with pytest.raises(FieldError):
            number_field(5).two_cos(4)


# ---------------------------------------------------------------------------
# Ring axioms
# ---------------------------------------------------------------------------

class TestRingAxioms:
    """Property checks in the cubic field Q(2cos(pi/7))."""

    @settings(max_examples=60, deadline=None)
    @given(elements_of_f7, elements_of_f7, elements_of_f7)
    def test_associative_and_distributive(self, a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) + c == a + (b + c)

    @settings(max_examples=60, deadline=None)
    @given(elements_of_f7, elements_of_f7)
    def test_commutative(self, a, b):
        assert a * b == b * a
        assert a + b == b + a
        assert a - b == -(b - a)

    @settings(max_examples=60, deadline=None)
    @given(elements_of_f7, elements_of_f7)
    def test_float_is_a_ring_homomorphism(self, a, b):
        assert math.isclose(float(a * b), float(a) * float(b), rel_tol=1e-9, abs_tol=1e-7)
        assert math.isclose(float(a + b), float(a) + float(b), rel_tol=1e-9, abs_tol=1e-9)

    @settings(max_examples=60, deadline=None)
    @given(elements_of_f7, elements_of_f7)
    def test_sign_is_multiplicative(self, a, b):
        assert (a * b).sign() == a.sign() * b.sign()
        assert (-a).sign() == -a.sign()
