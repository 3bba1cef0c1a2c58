"""Finite Coxeter groups realised on their root systems.

Every group element is stored as the permutation it induces on the full
root set: positive roots occupy indices 0..N-1 (the simple roots first),
and the negation of root i sits at index i+N.

Products are read left to right: `a * b` applies a first, then b, so the
root permutation of a*b is `b.perm[a.perm]`. Conjugation is w^x = x^-1 w x.
"""

import logging
import math
import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache, reduce

import numpy as np

from .numberfield import RATIONALS, AlgebraicNumber, number_field

logger = logging.getLogger(__name__)

DEFAULT_ORDER_BUDGET = 10 ** 7

_CLASSICAL = ('A', 'B', 'D')
_EXCEPTIONAL_RANKS = {'E6': 6, 'E7': 7, 'E8': 8, 'F4': 4, 'H3': 3, 'H4': 4}
FAMILIES = ('A', 'B', 'D', 'I2', 'E6', 'E7', 'E8', 'F4', 'H3', 'H4')

_GROUP_PATTERN = re.compile(r'^\s*([A-Za-z])(\d+)(?:\s*[:(]\s*(\d+)\s*\)?)?\s*$')


# ---------------------------------------------------------------------------
# Errors
# ---------------------------------------------------------------------------

class CoxeterError(Exception):
    """Base error for the engine; `detail` is the user facing message."""

    def __init__(self, detail):
        self.detail = detail
        super().__init__(detail)


class InvalidTypeError(CoxeterError):
    def __init__(self, spec, detail):
        self.spec = spec
        super().__init__(f'invalid group {spec!r}: {detail}')


class BudgetExceeded(CoxeterError):
    def __init__(self, order, budget):
        self.order = order
        self.budget = budget
        super().__init__(f'group order {order} exceeds the enumeration budget {budget}')


class MixedSystemError(CoxeterError):
    def __init__(self, left, right):
        super().__init__(f'cannot combine elements of {left} and {right}')


class InvariantViolation(CoxeterError):
    """A checked identity failed; `name` identifies the identity."""

    def __init__(self, name, detail):
        self.name = name
        super().__init__(f'{name}: {detail}')


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoxeterType:
    family: str
    rank: int
    m: int | None = None

    def __post_init__(self):
        family, rank = self.family, self.rank
        if family not in FAMILIES:
            raise InvalidTypeError(str(family), 'unknown family')
        minimum = {'A': 1, 'B': 2, 'D': 4}.get(family)
        if minimum is not None:
            if rank < minimum:
                raise InvalidTypeError(f'{family}{rank}', f'type {family} needs rank >= {minimum}')
        elif family == 'I2':
            if rank != 2 or self.m is None or self.m < 3:
                raise InvalidTypeError(f'I2:{self.m}', 'dihedral type needs m >= 3')
        elif rank != _EXCEPTIONAL_RANKS[family]:
            raise InvalidTypeError(f'{family}/{rank}', f'{family} has rank {_EXCEPTIONAL_RANKS[family]}')
        if family != 'I2' and self.m is not None:
            raise InvalidTypeError(str(self), 'only I2 takes a parameter')

    def __str__(self):
        if self.family in _CLASSICAL:
            return f'{self.family}{self.rank}'
        if self.family == 'I2':
            return f'I2:{self.m}'
        return self.family


def parse_group(text: str) -> CoxeterType:
    """Parse `A3`, `b4`, `E6`, `I2:7` or `I2(7)`."""
    match = _GROUP_PATTERN.match(text or '')
    if not match:
        raise InvalidTypeError(text, 'expected a family letter and rank, e.g. A3, E6 or I2:7')
    letter, digits, param = match.group(1).upper(), int(match.group(2)), match.group(3)
    if letter in _CLASSICAL:
        if param is not None:
            raise InvalidTypeError(text, 'only I2 takes a parameter')
        return CoxeterType(letter, digits)
    family = f'{letter}{digits}'
    if family == 'I2':
        if param is None:
            raise InvalidTypeError(text, 'dihedral type needs m, e.g. I2:5')
        return CoxeterType('I2', 2, int(param))
    if family not in _EXCEPTIONAL_RANKS or param is not None:
        raise InvalidTypeError(text, 'unknown family')
    return CoxeterType(family, _EXCEPTIONAL_RANKS[family])


@dataclass(frozen=True, order=True)
class SubsetJ:
    """Subset of the simple generators, stored as a bitmask over 0-based nodes."""

    mask: int
    rank: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.rank:
            raise CoxeterError(f'subset mask {self.mask:#x} outside rank {self.rank}')

    @classmethod
    def of(cls, rank, nodes=()):
        return cls(reduce(lambda acc, s: acc | (1 << s), nodes, 0), rank)

    @classmethod
    def from_labels(cls, rank, labels):
        labels = list(labels)
        if any(not 1 <= s <= rank for s in labels):
            raise CoxeterError(f'generator labels {labels} outside 1..{rank}')
        return cls.of(rank, (s - 1 for s in labels))

    @classmethod
    def full(cls, rank):
        return cls((1 << rank) - 1, rank)

    @classmethod
    def empty(cls, rank):
        return cls(0, rank)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(s for s in range(self.rank) if self.mask >> s & 1)

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(s + 1 for s in self.members)

    def _check(self, other):
        if not isinstance(other, SubsetJ) or other.rank != self.rank:
            raise CoxeterError('subsets of different generating sets')

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return bin(self.mask).count('1')

    def __contains__(self, node):
        return 0 <= node < self.rank and bool(self.mask >> node & 1)

    def __or__(self, other):
        self._check(other)
        return SubsetJ(self.mask | other.mask, self.rank)

    def __and__(self, other):
        self._check(other)
        return SubsetJ(self.mask & other.mask, self.rank)

    def __sub__(self, other):
        self._check(other)
        return SubsetJ(self.mask & ~other.mask, self.rank)

    def complement(self):
        return SubsetJ(((1 << self.rank) - 1) & ~self.mask, self.rank)

    def issubset(self, other):
        self._check(other)
        return self.mask & ~other.mask == 0

    def __str__(self):
        return '{' + ','.join(str(s) for s in self.labels) + '}'


# ---------------------------------------------------------------------------
# Coxeter data
# ---------------------------------------------------------------------------

def _chain(rank, labels=None):
    """Edges of a path diagram 0-1-...-(rank-1); `labels` overrides edge weights."""
    labels = labels or {}
    return {(i, i + 1): labels.get(i, 3) for i in range(rank - 1)}


def _diagram_edges(ctype: CoxeterType) -> dict[tuple[int, int], int]:
    family, rank = ctype.family, ctype.rank
    if family == 'A':
        return _chain(rank)
    if family == 'B':
        return _chain(rank, {0: 4})
    if family == 'D':
        edges = {(i, i + 1): 3 for i in range(1, rank - 1)}
        edges[(0, 2)] = 3
        return edges
    if family == 'I2':
        return {(0, 1): ctype.m}
    if family in ('E6', 'E7', 'E8'):
        # Bourbaki: 1-3-4-5-6(-7-8) with 2 attached to 4
        edges = {(0, 2): 3, (1, 3): 3}
        edges.update({(i, i + 1): 3 for i in range(2, rank - 1)})
        return edges
    if family == 'F4':
        return _chain(4, {1: 4})
    return _chain(rank, {0: 5})  # H3, H4


def coxeter_matrix(ctype: CoxeterType) -> tuple[tuple[int, ...], ...]:
    rank = ctype.rank
    matrix = [[1 if i == j else 2 for j in range(rank)] for i in range(rank)]
    for (i, j), m in _diagram_edges(ctype).items():
        matrix[i][j] = matrix[j][i] = m
    return tuple(tuple(row) for row in matrix)


def epsilon_basis(ctype: CoxeterType) -> list[tuple[int, ...]]:
    """Simple roots of A, B and D in the standard basis e_1..e_n."""
    rank = ctype.rank
    n = rank + 1 if ctype.family == 'A' else rank
    if ctype.family == 'A':
        return [_diff(n, k + 1, k) for k in range(rank)]
    roots = [_diff(n, k, k - 1) for k in range(1, rank)]
    if ctype.family == 'B':
        first = tuple(1 if i == 0 else 0 for i in range(n))
    elif ctype.family == 'D':
        first = tuple(1 if i in (0, 1) else 0 for i in range(n))
    else:
        raise InvalidTypeError(str(ctype), 'no signed permutation model')
    return [first] + roots


def _diff(n, plus, minus):
    return tuple(1 if i == plus else -1 if i == minus else 0 for i in range(n))


def _field_for(ctype: CoxeterType):
    if ctype.family in ('H3', 'H4'):
        return number_field(5)
    if ctype.family == 'I2':
        return number_field(ctype.m)
    return RATIONALS


def gram_matrix(ctype: CoxeterType, field) -> list[list[AlgebraicNumber]]:
    rank = ctype.rank
    if ctype.family in _CLASSICAL:
        basis = epsilon_basis(ctype)
        return [[field(sum(a * b for a, b in zip(u, v))) for v in basis] for u in basis]
    gram = [[field(0) for _ in range(rank)] for _ in range(rank)]
    if ctype.family == 'F4':
        for i, norm in enumerate((2, 2, 1, 1)):
            gram[i][i] = field(norm)
        for i, j, value in ((0, 1, -1), (1, 2, -1), (2, 3, Fraction(-1, 2))):
            gram[i][j] = gram[j][i] = field(value)
        return gram
    for i in range(rank):
        gram[i][i] = field(2)
    for (i, j), m in _diagram_edges(ctype).items():
        gram[i][j] = gram[j][i] = -field.two_cos(m)
    return gram


def group_degrees(ctype: CoxeterType) -> tuple[int, ...]:
    family, n = ctype.family, ctype.rank
    if family == 'A':
        return tuple(range(2, n + 2))
    if family == 'B':
        return tuple(range(2, 2 * n + 1, 2))
    if family == 'D':
        return tuple(sorted(list(range(2, 2 * n - 1, 2)) + [n]))
    if family == 'I2':
        return (2, ctype.m)
    return {
        'E6': (2, 5, 6, 8, 9, 12),
        'E7': (2, 6, 8, 10, 12, 14, 18),
        'E8': (2, 8, 12, 14, 18, 20, 24, 30),
        'F4': (2, 6, 8, 12),
        'H3': (2, 6, 10),
        'H4': (2, 12, 20, 30),
    }[family]


def group_order_from_degrees(ctype: CoxeterType) -> int:
    return math.prod(group_degrees(ctype))


def positive_root_count(ctype: CoxeterType) -> int:
    return sum(d - 1 for d in group_degrees(ctype))


def _build_roots(cartan, field, rank):
    """Positive roots in simple-root coordinates, by closing the simple roots under S."""
    zero, one = field(0), field(1)
    positive = [tuple(one if k == i else zero for k in range(rank)) for i in range(rank)]
    seen = set(positive)
    head = 0
    while head < len(positive):
        beta = positive[head]
        head += 1
        for s in range(rank):
            image = _reflect(beta, s, cartan)
            if _is_positive(image) and image not in seen:
                seen.add(image)
                positive.append(image)
    return positive


def _reflect(beta, s, cartan):
    coeff = sum((b * c for b, c in zip(beta, cartan[s])), beta[0].field(0))
    image = list(beta)
    image[s] = beta[s] - coeff
    return tuple(image)


def _is_positive(root):
    for c in root:
        sign = c.sign()
        if sign:
            return sign > 0
    return False


# ---------------------------------------------------------------------------
# Systems and elements
# ---------------------------------------------------------------------------

class CoxeterSystem:
    """Immutable group context: Coxeter matrix, roots and generator actions."""

    def __init__(self, ctype: CoxeterType, budget: int = DEFAULT_ORDER_BUDGET):
        self.ctype = ctype
        self.rank = ctype.rank
        self.budget = budget
        self.coxeter_matrix = coxeter_matrix(ctype)
        self.field = _field_for(ctype)
        self.gram = gram_matrix(ctype, self.field)
        self.cartan = [
            [self.gram[i][j] * Fraction(2) * _inverse_rational(self.gram[i][i]) for j in range(self.rank)]
            for i in range(self.rank)
        ]
        positive = _build_roots(self.cartan, self.field, self.rank)
        self.n_positive = len(positive)
        if self.n_positive != positive_root_count(ctype):
            raise CoxeterError(
                f'{ctype}: found {self.n_positive} positive roots, expected {positive_root_count(ctype)}'
            )
        self.roots = positive + [tuple(-c for c in root) for root in positive]
        lookup = {root: i for i, root in enumerate(self.roots)}
        action = np.empty((self.rank, len(self.roots)), dtype=np.int16)
        for s in range(self.rank):
            for k, root in enumerate(self.roots):
                action[s, k] = lookup[_reflect(root, s, self.cartan)]
        action.flags.writeable = False
        self.simple_action = action
        self.order = group_order_from_degrees(ctype)
        self._store = None
        self._store_lock = threading.Lock()
        logger.info('Built %s: order %d, %d positive roots', ctype, self.order, self.n_positive)

    def __repr__(self):
        return f'CoxeterSystem({self.ctype})'

    @property
    def n_roots(self) -> int:
        return 2 * self.n_positive

    def identity(self) -> 'Element':
        return Element(self, np.arange(self.n_roots, dtype=np.int16))

    def generator(self, s: int) -> 'Element':
        return Element(self, self.simple_action[s])

    def generators(self) -> list['Element']:
        return [self.generator(s) for s in range(self.rank)]

    def from_word(self, word) -> 'Element':
        """Element of a word of 0-based generator indices."""
        perm = np.arange(self.n_roots, dtype=np.int16)
        for s in word:
            if not 0 <= s < self.rank:
                raise CoxeterError(f'generator {s + 1} outside 1..{self.rank}')
            perm = self.simple_action[s][perm]
        return Element(self, perm)

    def from_labels(self, labels) -> 'Element':
        return self.from_word([s - 1 for s in labels])

    def full_subset(self) -> SubsetJ:
        return SubsetJ.full(self.rank)

    def empty_subset(self) -> SubsetJ:
        return SubsetJ.empty(self.rank)

    def element_store(self) -> 'ElementStore':
        if self._store is None:
            if self.order > self.budget:
                raise BudgetExceeded(self.order, self.budget)
            with self._store_lock:
                if self._store is None:
                    self._store = ElementStore(self)
        return self._store

    @cached_property
    def generator_lookup(self) -> dict[bytes, int]:
        return {self.simple_action[s].tobytes(): s for s in range(self.rank)}

    @cached_property
    def epsilon_roots(self) -> np.ndarray:
        """Roots in the standard basis (types A, B, D only)."""
        basis = np.array(epsilon_basis(self.ctype), dtype=np.int64)
        coords = np.array([[int(c.coeffs[0]) for c in root] for root in self.roots], dtype=np.int64)
        return coords @ basis


def _inverse_rational(value: AlgebraicNumber) -> Fraction:
    if any(value.coeffs[1:]):
        raise CoxeterError('root norms must be rational')
    return 1 / value.coeffs[0]


@lru_cache(maxsize=None)
def build_system(ctype: CoxeterType, budget: int = DEFAULT_ORDER_BUDGET) -> CoxeterSystem:
    return CoxeterSystem(ctype, budget)


class Element:
    """A group element as a permutation of root indices."""

    __slots__ = ('home', 'perm')

    def __init__(self, home: CoxeterSystem, perm: np.ndarray):
        self.home = home
        self.perm = perm

    def __mul__(self, other):
        return multiply(self, other)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.home is other.home and bool(np.array_equal(self.perm, other.perm))

    def __hash__(self):
        return hash(self.perm.tobytes())

    def __repr__(self):
        return f'Element({self.home.ctype}: {list(self.word_labels())})'

    @property
    def index(self) -> int:
        return self.home.element_store().index_of(self)

    def length(self) -> int:
        return length(self)

    def inverse(self) -> 'Element':
        return Element(self.home, np.argsort(self.perm).astype(np.int16))

    def conjugate(self, x: 'Element') -> 'Element':
        """w^x = x^-1 w x."""
        return x.inverse() * self * x

    def is_identity(self) -> bool:
        return bool(np.all(self.perm == np.arange(self.home.n_roots)))

    def is_involution(self) -> bool:
        return not self.is_identity() and (self * self).is_identity()

    def order(self) -> int:
        power, k = self, 1
        while not power.is_identity():
            power, k = power * self, k + 1
        return k

    def reduced_word(self) -> tuple[int, ...]:
        return reduce_word(self)

    def word_labels(self) -> tuple[int, ...]:
        return tuple(s + 1 for s in reduce_word(self))


def _check_same(a: Element, b: Element):
    if a.home is not b.home:
        raise MixedSystemError(a.home.ctype, b.home.ctype)


def multiply(a: Element, b: Element) -> Element:
    _check_same(a, b)
    return Element(a.home, b.perm[a.perm])


def length(w: Element) -> int:
    n = w.home.n_positive
    return int(np.count_nonzero(w.perm[:n] >= n))


def descent_mask(w: Element) -> int:
    n = w.home.n_positive
    return sum(1 << s for s in range(w.home.rank) if w.perm[s] >= n)


def descent_set(w: Element) -> SubsetJ:
    """Left descents: s with l(s*w) < l(w)."""
    return SubsetJ(descent_mask(w), w.home.rank)


def ascent_set(w: Element) -> SubsetJ:
    return descent_set(w).complement()


def right_descent_set(w: Element) -> SubsetJ:
    return descent_set(w.inverse())


def reduce_word(w: Element) -> tuple[int, ...]:
    """Reduced word, always stripping the smallest left descent first."""
    home, n = w.home, w.home.n_positive
    perm = w.perm
    word = []
    while True:
        for s in range(home.rank):
            if perm[s] >= n:
                break
        else:
            return tuple(word)
        word.append(s)
        perm = perm[home.simple_action[s]]


def longest_element(home: CoxeterSystem, J: SubsetJ) -> Element:
    n = home.n_positive
    perm = np.arange(home.n_roots, dtype=np.int16)
    while True:
        ascents = [s for s in J if perm[s] < n]
        if not ascents:
            return Element(home, perm)
        perm = perm[home.simple_action[ascents[0]]]


def coxeter_element(home: CoxeterSystem) -> Element:
    return home.from_word(range(home.rank))


def enumerate_elements(home: CoxeterSystem):
    """All elements by length, then lexicographically smallest reduced word."""
    store = home.element_store()
    for i in range(home.order):
        yield store.element(i)


def diagram_automorphism_of_w0(home: CoxeterSystem) -> tuple[int, ...]:
    """The permutation s -> w0 s w0 of the simple generators."""
    w0 = longest_element(home, home.full_subset())
    images = []
    for s in range(home.rank):
        conj = w0 * home.generator(s) * w0
        images.append(home.generator_lookup[conj.perm.tobytes()])
    return tuple(images)


def irreducible_components(home: CoxeterSystem, J: SubsetJ) -> list[SubsetJ]:
    remaining = set(J)
    components = []
    matrix = home.coxeter_matrix
    while remaining:
        start = min(remaining)
        stack, comp = [start], {start}
        while stack:
            s = stack.pop()
            for t in list(remaining):
                if t not in comp and matrix[s][t] >= 3:
                    comp.add(t)
                    stack.append(t)
        remaining -= comp
        components.append(SubsetJ.of(home.rank, comp))
    return sorted(components, key=lambda c: c.members[0])


def _neighbours(home, K, s):
    return [t for t in K if t != s and home.coxeter_matrix[s][t] >= 3]


def component_label(home: CoxeterSystem, K: SubsetJ) -> str:
    """Type name of an irreducible component, e.g. 'A3', 'D5', 'E6', 'I2:5'."""
    nodes = K.members
    k = len(nodes)
    if k == 0:
        return ''
    if k == 1:
        return 'A1'
    weights = sorted(home.coxeter_matrix[s][t] for i, s in enumerate(nodes) for t in nodes[i + 1:]
                     if home.coxeter_matrix[s][t] >= 3)
    if k == 2:
        m = weights[0]
        return {3: 'A2', 4: 'B2'}.get(m, f'I2:{m}')
    if 5 in weights:
        return f'H{k}'
    if 4 in weights:
        return 'F4' if k == 4 and _is_inner_edge(home, K, 4) else f'B{k}'
    branches = [s for s in nodes if len(_neighbours(home, K, s)) == 3]
    if not branches:
        return f'A{k}'
    arms = sorted(len(arm) for arm in _arms(home, K, branches[0]))
    if arms[:2] == [1, 1]:
        return f'D{k}'
    return f'E{k}'


def _is_inner_edge(home, K, weight):
    for s in K:
        for t in K:
            if s < t and home.coxeter_matrix[s][t] == weight:
                return len(_neighbours(home, K, s)) == 2 and len(_neighbours(home, K, t)) == 2
    return False


def _arms(home, K, branch):
    arms = []
    for start in _neighbours(home, K, branch):
        arm, prev, cur = [start], branch, start
        while True:
            nxt = [t for t in _neighbours(home, K, cur) if t != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            arm.append(cur)
        arms.append(arm)
    return arms


def type_d_labelling(home: CoxeterSystem, K: SubsetJ) -> tuple[int, ...]:
    """Nodes of a D_k component in the order (u, s_1, s_2, ..., s_{k-1})."""
    if not component_label(home, K).startswith('D'):
        raise CoxeterError(f'{K} is not of type D')
    branch = next(s for s in K if len(_neighbours(home, K, s)) == 3)
    arms = sorted(_arms(home, K, branch), key=lambda arm: (len(arm), arm[0]))
    u, s1 = arms[0][0], arms[1][0]
    return (u, s1, branch) + tuple(arms[2])


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

class ElementStore:
    """All elements of W with a perfect index and multiplication tables.

    perms[i] is the root permutation of element i. Elements appear by length,
    then by lexicographically smallest reduced word, so index 0 is e and the
    first element of any class in index order has minimal length.
    """

    def __init__(self, home: CoxeterSystem):
        self.home = home
        rank, n = home.rank, home.n_positive
        self._base = np.uint64(home.n_roots)
        self._powers = np.array([home.n_roots ** i for i in range(rank)], dtype=np.uint64)

        level = np.arange(home.n_roots, dtype=np.int16)[None, :]
        support = np.zeros(1, dtype=np.int64)
        levels, supports, lengths = [level], [support], [np.zeros(1, dtype=np.int16)]
        depth = 0
        while True:
            candidates, candidate_support = [], []
            for s in range(rank):
                ascent = level[:, s] < n
                if ascent.any():
                    candidates.append(level[ascent][:, home.simple_action[s]])
                    candidate_support.append(support[ascent] | (1 << s))
            if not candidates:
                break
            stacked = np.concatenate(candidates)
            _, first = np.unique(self._encode(stacked), return_index=True)
            first.sort()
            level = stacked[first]
            support = np.concatenate(candidate_support)[first]
            depth += 1
            levels.append(level)
            supports.append(support)
            lengths.append(np.full(len(level), depth, dtype=np.int16))

        self.perms = np.concatenate(levels)
        self.perms.flags.writeable = False
        if len(self.perms) != home.order:
            raise CoxeterError(f'{home.ctype}: enumerated {len(self.perms)} elements, expected {home.order}')
        self.support = np.concatenate(supports)
        self.lengths = np.concatenate(lengths)

        keys = self._encode(self.perms)
        self._key_order = np.argsort(keys)
        self._sorted_keys = keys[self._key_order]

        self.left_mul = np.stack([self.locate(self.perms[:, home.simple_action[s]]) for s in range(rank)])
        self.right_mul = np.stack([self.locate(home.simple_action[s][self.perms]) for s in range(rank)])
        self.inverse = self.locate(np.argsort(self.perms, axis=1))
        self.left_descents = np.zeros(home.order, dtype=np.int64)
        for s in range(rank):
            self.left_descents |= (self.perms[:, s] >= n).astype(np.int64) << s
        self.right_descents = self.left_descents[self.inverse]
        self.generator_index = tuple(int(i) for i in self.left_mul[:, 0])
        self.lowest_bit = np.array([(m & -m).bit_length() - 1 for m in range(1 << rank)], dtype=np.int64)
        logger.info('Enumerated %s: %d elements, maximal length %d', home.ctype, home.order, depth)

    def _encode(self, perms: np.ndarray) -> np.ndarray:
        cols = perms[:, :self.home.rank].astype(np.uint64)
        return cols @ self._powers

    def locate(self, perms: np.ndarray) -> np.ndarray:
        """Store indices of a stack of root permutations."""
        keys = self._encode(perms)
        pos = np.searchsorted(self._sorted_keys, keys)
        pos = np.minimum(pos, len(self._sorted_keys) - 1)
        if not np.all(self._sorted_keys[pos] == keys):
            raise CoxeterError('permutation is not an element of the group')
        return self._key_order[pos]

    def index_of(self, w: Element) -> int:
        if w.home is not self.home:
            raise MixedSystemError(w.home.ctype, self.home.ctype)
        return int(self.locate(w.perm[None, :])[0])

    def element(self, i) -> Element:
        return Element(self.home, self.perms[int(i)])

    def conjugate_indices(self, w: int, xs: np.ndarray) -> np.ndarray:
        """Indices of x^-1 w x for every x in `xs`."""
        xs = np.asarray(xs, dtype=np.int64)
        forward = self.perms[xs]
        backward = self.perms[self.inverse[xs]]
        inner = self.perms[w][backward]
        return self.locate(np.take_along_axis(forward, inner.astype(np.int64), axis=1))

    def conjugate_indices_by(self, x: Element, ws) -> np.ndarray:
        """Indices of x^-1 w x for every w in `ws`."""
        x_inv = np.argsort(x.perm)
        return self.locate(x.perm[self.perms[np.asarray(ws, dtype=np.int64)][:, x_inv]])

    def right_products(self, xs: np.ndarray, g: Element) -> np.ndarray:
        """Indices of x*g for every x in `xs`."""
        return self.locate(g.perm[self.perms[np.asarray(xs, dtype=np.int64)]])

    def left_products(self, g: Element, xs: np.ndarray) -> np.ndarray:
        """Indices of g*x for every x in `xs`."""
        return self.locate(self.perms[np.asarray(xs, dtype=np.int64)][:, g.perm])

    def all_indices(self) -> np.ndarray:
        return np.arange(self.home.order, dtype=np.int64)


class ElementSet:
    """A set of elements of one system, backed by sorted store indices."""

    __slots__ = ('home', 'indices')

    def __init__(self, home: CoxeterSystem, indices):
        self.home = home
        self.indices = np.unique(np.asarray(indices, dtype=np.int64))

    @classmethod
    def from_mask(cls, home, mask):
        return cls(home, np.flatnonzero(mask))

    @classmethod
    def of(cls, home, elements):
        store = home.element_store()
        return cls(home, [store.index_of(w) for w in elements])

    def __len__(self):
        return int(self.indices.size)

    def __iter__(self):
        store = self.home.element_store()
        return (store.element(i) for i in self.indices)

    def __contains__(self, w):
        if isinstance(w, Element):
            w = self.home.element_store().index_of(w)
        pos = np.searchsorted(self.indices, w)
        return bool(pos < self.indices.size and self.indices[pos] == w)

    def __eq__(self, other):
        if not isinstance(other, ElementSet):
            return NotImplemented
        return self.home is other.home and np.array_equal(self.indices, other.indices)

    def __and__(self, other):
        return ElementSet(self.home, np.intersect1d(self.indices, other.indices, assume_unique=True))

    def __or__(self, other):
        return ElementSet(self.home, np.union1d(self.indices, other.indices))

    def __sub__(self, other):
        return ElementSet(self.home, np.setdiff1d(self.indices, other.indices, assume_unique=True))

    def __le__(self, other):
        return bool(np.isin(self.indices, other.indices, assume_unique=True).all())

    def __repr__(self):
        return f'ElementSet({self.home.ctype}, {len(self)} elements)'

    def mask(self) -> np.ndarray:
        result = np.zeros(self.home.order, dtype=bool)
        result[self.indices] = True
        return result

    def is_subgroup(self) -> bool:
        if 0 not in self:
            return False
        store = self.home.element_store()
        members = self.mask()
        for s in self.generators():
            if not members[store.right_products(self.indices, s)].all():
                return False
        return True

    def generators(self) -> list[Element]:
        """A small generating set, chosen greedily in index order."""
        chosen, span = [], np.zeros(self.home.order, dtype=bool)
        span[0] = True
        store = self.home.element_store()
        for i in self.indices:
            if not span[i]:
                chosen.append(store.element(i))
                span = generate_subgroup(self.home, chosen).mask()
        return chosen


def generate_subgroup(home: CoxeterSystem, generators, limit: int | None = None) -> ElementSet | None:
    """Closure of `generators`; None once the closure grows past `limit`."""
    store = home.element_store()
    members = np.zeros(home.order, dtype=bool)
    members[0] = True
    frontier = np.zeros(1, dtype=np.int64)
    count = 1
    generators = list(generators)
    while frontier.size:
        fresh_levels = []
        for g in generators:
            images = store.right_products(frontier, g)
            fresh = np.unique(images[~members[images]])
            members[fresh] = True
            count += fresh.size
            if limit is not None and count > limit:
                return None
            fresh_levels.append(fresh)
        frontier = np.concatenate(fresh_levels) if fresh_levels else np.zeros(0, dtype=np.int64)
    return ElementSet.from_mask(home, members)
