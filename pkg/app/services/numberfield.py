"""Exact arithmetic in the real fields Q(2cos(pi/m)).

An element is a polynomial in theta = 2cos(pi/m) with rational
coefficients, reduced modulo the minimal polynomial of theta.

The minimal polynomial comes from the Chebyshev recurrence: with
P_m(x) = 2 T_m(x/2) we have P_m(2cos t) = 2cos(mt), so theta is a root of
P_m + 2, and the irreducible factor of P_m + 2 that vanishes at theta is
its minimal polynomial. For m <= 3 the field is Q itself.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import sympy

logger = logging.getLogger(__name__)


class FieldError(ArithmeticError):
    """Raised for mixed fields and elements outside a field."""

    def __init__(self, detail):
        self.detail = detail
        super().__init__(detail)


@lru_cache(maxsize=None)
def minimal_polynomial(m: int) -> tuple[Fraction, ...]:
    """Monic minimal polynomial of 2cos(pi/m), coefficients low degree first."""
    if m < 1:
        raise FieldError(f'2cos(pi/{m}) is not defined')
    if m <= 3:
        return (Fraction(-{1: -2, 2: 0, 3: 1}[m]), Fraction(1))
    x = sympy.Symbol('x')
    chebyshev = sympy.chebyshevt_poly(m, x).subs(x, x / 2)
    target = sympy.Poly(sympy.expand(2 * chebyshev + 2), x, domain='QQ')
    # theta is the largest real root of P_m + 2
    (low, high), _ = max(target.sqf_part().intervals(), key=lambda iv: iv[0][1])
    _, factors = target.factor_list()
    best = next(f for f, _ in factors if f.count_roots(low, high))
    coeffs = best.monic().all_coeffs()
    result = tuple(_fraction(c) for c in reversed(coeffs))
    logger.debug('minimal polynomial of 2cos(pi/%d): %s', m, result)
    return result


@lru_cache(maxsize=None)
def theta_interval(m: int, bits: int = 64) -> tuple[Fraction, Fraction]:
    """Rational interval of width below 2^-bits containing 2cos(pi/m) and no other conjugate."""
    x = sympy.Symbol('x')
    modulus = sympy.Poly([sympy.Rational(c.numerator, c.denominator)
                          for c in reversed(minimal_polynomial(m))], x, domain='QQ')
    (low, high), _ = max(modulus.intervals(), key=lambda iv: iv[0][1])
    if low != high:
        low, high = modulus.refine_root(low, high, eps=sympy.Rational(1, 2 ** bits))
    return _fraction(low), _fraction(high)


def _fraction(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


@dataclass(frozen=True)
class NumberField:
    """The field Q(theta), theta = 2cos(pi/m)."""

    m: int
    modulus: tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    @property
    def theta_value(self) -> float:
        return 2 * math.cos(math.pi / self.m)

    def __call__(self, value) -> 'AlgebraicNumber':
        if isinstance(value, AlgebraicNumber):
            if value.field != self:
                raise FieldError(f'cannot coerce {value!r} into Q(2cos(pi/{self.m}))')
            return value
        return AlgebraicNumber(self, (Fraction(value),) + (Fraction(0),) * (self.degree - 1))

    def theta(self) -> 'AlgebraicNumber':
        if self.degree == 1:
            return self(-self.modulus[0])
        coeffs = [Fraction(0)] * self.degree
        coeffs[1] = Fraction(1)
        return AlgebraicNumber(self, tuple(coeffs))

    def two_cos(self, k: int) -> 'AlgebraicNumber':
        """2cos(pi/k) as an element of this field."""
        if k in (1, 2, 3):
            return self({1: -2, 2: 0, 3: 1}[k])
        if self.m % k:
            raise FieldError(f'2cos(pi/{k}) does not lie in Q(2cos(pi/{self.m}))')
        # P_j(theta) = 2cos(j*pi/m) with j = m/k
        theta = self.theta()
        prev, cur = self(2), theta
        for _ in range(self.m // k - 1):
            prev, cur = cur, theta * cur - prev
        return cur

    def __str__(self):
        return 'Q' if self.degree == 1 else f'Q(2cos(pi/{self.m}))'


@lru_cache(maxsize=None)
def number_field(m: int) -> NumberField:
    return NumberField(m, minimal_polynomial(m))


RATIONALS = number_field(1)


@dataclass(frozen=True)
class AlgebraicNumber:
    """Residue of a rational polynomial in theta; `coeffs` has field.degree entries."""

    field: NumberField
    coeffs: tuple[Fraction, ...]

    def _coerce(self, other) -> 'AlgebraicNumber':
        if isinstance(other, AlgebraicNumber):
            if other.field != self.field:
                raise FieldError(f'mixed fields {self.field} and {other.field}')
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return AlgebraicNumber(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicNumber(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return AlgebraicNumber(self.field, tuple(a * other for a in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = self.field.degree
        product = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    product[i + j] += a * b
        modulus = self.field.modulus
        for k in range(len(product) - 1, d - 1, -1):
            c = product[k]
            if c:
                for i in range(d):
                    product[k - d + i] -= c * modulus[i]
                product[k] = Fraction(0)
        return AlgebraicNumber(self.field, tuple(product[:d]))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field(other)
        if not isinstance(other, AlgebraicNumber):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.m, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __float__(self):
        theta = self.field.theta_value
        return float(sum(float(c) * theta ** i for i, c in enumerate(self.coeffs)))

    def sign(self) -> int:
        """Exact sign, decided on a shrinking rational interval around theta."""
        if not self:
            return 0
        if not any(self.coeffs[1:]):
            return 1 if self.coeffs[0] > 0 else -1
        bits = 64
        while True:
            low, high = theta_interval(self.field.m, bits)
            value = sum(c * low ** i for i, c in enumerate(self.coeffs))
            reach = max(abs(low), abs(high))
            slope = sum(i * abs(c) * reach ** (i - 1) for i, c in enumerate(self.coeffs) if i)
            # |p(t) - p(low)| <= slope * (high - low) on the whole interval
            if abs(value) > slope * (high - low):
                return 1 if value > 0 else -1
            bits *= 2

    def __repr__(self):
        if self.field.degree == 1:
            return str(self.coeffs[0])
        terms = [f'{c}*t^{i}' if i else str(c) for i, c in enumerate(self.coeffs) if c]
        return ' + '.join(terms) or '0'
