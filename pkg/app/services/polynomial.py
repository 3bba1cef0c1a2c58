"""Sparse polynomials with exact rational coefficients in the variables x_ij.

Terms map exponent vectors to Fractions; zero coefficients are never
stored. A polynomial may be pruned to multilinear terms over an allowed
variable set, which is all the permutation-monomial computations need.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .coxeter import CoxeterError

logger = logging.getLogger(__name__)


class PolynomialError(CoxeterError):
    pass


@dataclass(frozen=True)
class Pruning:
    """Drop terms with a squared variable and terms using variables outside `allowed`."""

    multilinear: bool = True
    allowed: frozenset[int] | None = None

    def keeps(self, exponents: tuple[int, ...]) -> bool:
        for var, e in enumerate(exponents):
            if e and (self.allowed is not None and var not in self.allowed):
                return False
            if self.multilinear and e > 1:
                return False
        return True


NO_PRUNING = Pruning(multilinear=False)


@dataclass(frozen=True)
class SparsePolynomial:
    n_vars: int
    terms: dict = field(default_factory=dict)
    pruning: Pruning = NO_PRUNING

    @classmethod
    def constant(cls, n_vars, value, pruning=NO_PRUNING):
        value = Fraction(value)
        return cls(n_vars, {(0,) * n_vars: value} if value else {}, pruning)

    @classmethod
    def variable(cls, n_vars, var, pruning=NO_PRUNING):
        exponents = tuple(1 if i == var else 0 for i in range(n_vars))
        terms = {exponents: Fraction(1)} if pruning.keeps(exponents) else {}
        return cls(n_vars, terms, pruning)

    def _like(self, terms):
        return SparsePolynomial(self.n_vars, {k: v for k, v in terms.items() if v}, self.pruning)

    def __add__(self, other):
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, Fraction(0)) + v
        return self._like(terms)

    def __neg__(self):
        return self._like({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor) -> 'SparsePolynomial':
        factor = Fraction(factor)
        return self._like({k: v * factor for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if other.n_vars != self.n_vars:
            raise PolynomialError('polynomials over different variable sets')
        terms = {}
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                exponents = tuple(a + b for a, b in zip(ka, kb))
                if self.pruning.keeps(exponents):
                    terms[exponents] = terms.get(exponents, Fraction(0)) + va * vb
        return self._like(terms)

    __rmul__ = __mul__

    def coefficient(self, exponents) -> Fraction:
        return self.terms.get(tuple(exponents), Fraction(0))

    def degree(self) -> int:
        return max((sum(k) for k in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)


# ---------------------------------------------------------------------------
# The matrix X = (x_ij)
# ---------------------------------------------------------------------------

def variable_index(n: int, i: int, j: int) -> int:
    """Index of x_ij (1-based i, j) in an n x n matrix of variables."""
    return (i - 1) * n + (j - 1)


def permutation_monomial(images) -> tuple[int, ...]:
    """Exponent vector of x_{1 w(1)} ... x_{n w(n)}."""
    n = len(images)
    exponents = [0] * (n * n)
    for i, image in enumerate(images, start=1):
        exponents[variable_index(n, i, image)] = 1
    return tuple(exponents)


def monomial_support(images) -> frozenset[int]:
    n = len(images)
    return frozenset(variable_index(n, i, image) for i, image in enumerate(images, start=1))


@lru_cache(maxsize=None)
def minor_determinant(n: int, rows: tuple[int, ...], cols: tuple[int, ...],
                      pruning: Pruning = NO_PRUNING) -> SparsePolynomial:
    """det of the submatrix of X on `rows` x `cols` (1-based), by Laplace expansion on the first row."""
    size = n * n
    if not rows:
        return SparsePolynomial.constant(size, 1, pruning)
    first, rest = rows[0], rows[1:]
    total = SparsePolynomial(size, {}, pruning)
    for position, col in enumerate(cols):
        entry = SparsePolynomial.variable(size, variable_index(n, first, col), pruning)
        if entry.is_zero():
            continue
        minor = minor_determinant(n, rest, cols[:position] + cols[position + 1:], pruning)
        term = entry * minor
        total = total - term if position % 2 else total + term
    return total


def principal_minor(n: int, subset, pruning: Pruning = NO_PRUNING) -> SparsePolynomial:
    """det X_I for I a subset of {1..n}."""
    points = tuple(sorted(subset))
    return minor_determinant(n, points, points, pruning)
