"""Signed permutations: the classical models of types A, B and D.

A signed permutation of {1..n} is stored as its images w(1), ..., w(n); it
extends to -n..n by w(-i) = -w(i). Composition follows the group engine:
(a * b)(i) = b(a(i)).

Cycle notation: "(1,2)-(3,4,5)-(6)(7)(8,9)". A trailing "-" marks a
negative cycle (i1,...,ik)^- which maps ik to -i1.
"""

import logging
import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .coxeter import CoxeterError, CoxeterSystem, CoxeterType, Element

logger = logging.getLogger(__name__)

_CYCLE = re.compile(r'\(([^()]*)\)(-?)')


class PermutationError(CoxeterError):
    """Malformed signed permutation, partition or block range."""


# ---------------------------------------------------------------------------
# Partitions
# ---------------------------------------------------------------------------

def _check_parts(parts, name):
    parts = tuple(int(p) for p in parts)
    if any(p < 1 for p in parts):
        raise PermutationError(f'{name} parts must be positive: {parts}')
    if list(parts) != sorted(parts):
        raise PermutationError(f'{name} parts must be weakly increasing: {parts}')
    return parts


def is_even(parts) -> bool:
    """All parts even (vacuously true for the empty partition)."""
    return all(p % 2 == 0 for p in parts)


def multiplicities(parts) -> dict[int, int]:
    return dict(sorted(Counter(parts).items()))


@lru_cache(maxsize=None)
def partitions(n: int, smallest: int = 1) -> tuple[tuple[int, ...], ...]:
    """Weakly increasing partitions of n with parts >= smallest."""
    if n == 0:
        return ((),)
    result = []
    for first in range(smallest, n + 1):
        for rest in partitions(n - first, first):
            result.append((first,) + rest)
    return tuple(result)


@dataclass(frozen=True)
class DoublePartition:
    """Cycle type (plus, minus); `primed` marks the second of a split D class."""

    plus: tuple[int, ...] = ()
    minus: tuple[int, ...] = ()
    primed: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'plus', _check_parts(self.plus, 'positive'))
        object.__setattr__(self, 'minus', _check_parts(self.minus, 'negative'))
        if self.primed and (self.minus or not self.plus or not is_even(self.plus)):
            raise PermutationError('only classes with empty negative part and even positive part split')

    @property
    def size(self) -> int:
        return sum(self.plus) + sum(self.minus)

    @property
    def splits(self) -> bool:
        """True when the type D class of this label splits in two."""
        return not self.minus and bool(self.plus) and is_even(self.plus)

    def unprimed(self) -> 'DoublePartition':
        return DoublePartition(self.plus, self.minus)

    def compact(self) -> str:
        """Concatenated-digit form, e.g. '(112,23)'. Parts above 9 make it ambiguous, so it is for display only."""
        plus = ''.join(str(p) for p in self.plus)
        minus = ''.join(str(p) for p in self.minus)
        return f"({plus},{minus})" + ("'" if self.primed else '')

    def __str__(self):
        plus = ','.join(str(p) for p in self.plus)
        minus = ','.join(str(p) for p in self.minus)
        return f"(({plus}),({minus}))" + ("'" if self.primed else '')

    @classmethod
    def parse(cls, text: str) -> 'DoublePartition':
        """Accepts '(1,1,2),(2,3)', '((1),(2,2))', '(2,2),()' and a trailing quote for primed."""
        raw = text.strip()
        primed = raw.endswith("'")
        raw = raw.rstrip("'").strip()
        if raw.startswith('((') and raw.endswith('))'):
            raw = raw[1:-1]
        groups = re.findall(r'\(([^()]*)\)', raw)
        if len(groups) != 2 or re.sub(r'\([^()]*\)', '', raw).strip(' ,'):
            raise PermutationError(f'cannot parse double partition {text!r}')
        try:
            plus, minus = (tuple(sorted(int(p) for p in g.split(',') if p.strip())) for g in groups)
        except ValueError:
            raise PermutationError(f'cannot parse double partition {text!r}')
        return cls(plus, minus, primed)


def double_partitions(n: int) -> list[DoublePartition]:
    result = []
    for k in range(n + 1):
        for minus in partitions(k):
            for plus in partitions(n - k):
                result.append(DoublePartition(plus, minus))
    return result


def type_d_labels(n: int) -> list[DoublePartition]:
    """Class labels of W(D_n), split classes followed by their primed twin."""
    result = []
    for label in double_partitions(n):
        if len(label.minus) % 2:
            continue
        result.append(label)
        if label.splits:
            result.append(DoublePartition(label.plus, label.minus, primed=True))
    return result


def block_offsets(label: DoublePartition, family: str) -> dict[int, int]:
    """o_m for each positive part size m: the first point of the m-blocks."""
    base = sum(label.minus) if family in ('B', 'D') else 0
    offsets, running = {}, base
    for m, a in multiplicities(label.plus).items():
        offsets[m] = running
        running += m * a
    return offsets


# ---------------------------------------------------------------------------
# Signed permutations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Cycle:
    entries: tuple[int, ...]
    negative: bool = False

    def __len__(self):
        return len(self.entries)

    def __str__(self):
        return '(' + ','.join(str(i) for i in self.entries) + ')' + ('-' if self.negative else '')


@dataclass(frozen=True)
class SignedPermutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(abs(i) for i in images) != list(range(1, len(images) + 1)):
            raise PermutationError(f'{images} is not a signed permutation')
        object.__setattr__(self, 'images', images)

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        image = self.images[abs(i) - 1]
        return image if i > 0 else -image

    def __mul__(self, other: 'SignedPermutation') -> 'SignedPermutation':
        if other.n != self.n:
            raise PermutationError(f'cannot compose permutations of {self.n} and {other.n} points')
        return SignedPermutation(tuple(other(i) for i in self.images))

    def inverse(self) -> 'SignedPermutation':
        result = [0] * self.n
        for i, image in enumerate(self.images, start=1):
            result[abs(image) - 1] = i if image > 0 else -i
        return SignedPermutation(tuple(result))

    def is_even(self) -> bool:
        """Membership in W(D_n): an even number of sign changes."""
        return sum(1 for i in self.images if i < 0) % 2 == 0

    def is_unsigned(self) -> bool:
        return all(i > 0 for i in self.images)

    def cycles(self) -> list[Cycle]:
        """Normalised cycles: smallest absolute entry first and positive."""
        seen, result = set(), []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            entries, cur = [], start
            while True:
                entries.append(cur)
                seen.add(abs(cur))
                cur = self(cur)
                if abs(cur) == start:
                    break
            result.append(Cycle(tuple(entries), negative=cur < 0))
        return result

    def cycle_type(self) -> DoublePartition:
        plus = sorted(len(c) for c in self.cycles() if not c.negative)
        minus = sorted(len(c) for c in self.cycles() if c.negative)
        return DoublePartition(tuple(plus), tuple(minus))

    def class_label(self, family: str = 'B') -> DoublePartition:
        """Cycle type, primed when this is a split type D class containing w_lambda'."""
        label = self.cycle_type()
        if family == 'D' and label.splits:
            negatives = sum(1 for c in self.cycles() for i in c.entries if i < 0)
            if negatives % 2:
                return DoublePartition(label.plus, label.minus, primed=True)
        return label

    def __str__(self):
        return ''.join(str(c) for c in self.cycles())

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> 'SignedPermutation':
        compact = re.sub(r'\s+', '', text)
        cycles = _CYCLE.findall(compact)
        if _CYCLE.sub('', compact):
            raise PermutationError(f'cannot parse cycle notation {text!r}')
        parsed = []
        try:
            for body, sign in cycles:
                parsed.append(([int(e) for e in body.split(',') if e], sign == '-'))
        except ValueError:
            raise PermutationError(f'cannot parse cycle notation {text!r}')
        points = [abs(e) for entries, _ in parsed for e in entries]
        if len(points) != len(set(points)) or 0 in points:
            raise PermutationError(f'cycles of {text!r} are not disjoint')
        size = n if n is not None else max(points, default=0)
        if points and max(points) > size:
            raise PermutationError(f'{text!r} moves points beyond {size}')
        return cls.from_cycles(size, parsed)

    @classmethod
    def from_cycles(cls, n: int, cycles) -> 'SignedPermutation':
        images = list(range(1, n + 1))

        def assign(i, image):
            images[abs(i) - 1] = image if i > 0 else -image

        for entries, negative in cycles:
            for a, b in zip(entries, entries[1:]):
                assign(a, b)
            if entries:
                assign(entries[-1], -entries[0] if negative else entries[0])
        return cls(tuple(images))

    # --- root system view -------------------------------------------------

    def to_element(self, home: CoxeterSystem) -> Element:
        family = home.ctype.family
        points = _points(home.ctype)
        if self.n != points:
            raise PermutationError(f'{self} has {self.n} points, {home.ctype} acts on {points}')
        if family == 'A' and not self.is_unsigned():
            raise PermutationError(f'{self} is not a permutation')
        if family == 'D' and not self.is_even():
            raise PermutationError(f'{self} has an odd number of sign changes, not in {home.ctype}')
        matrix = np.zeros((self.n, self.n), dtype=np.int64)
        for i, image in enumerate(self.images):
            matrix[abs(image) - 1, i] = 1 if image > 0 else -1
        moved = home.epsilon_roots @ matrix.T
        return Element(home, _locate_roots(home, moved))

    @classmethod
    def from_element(cls, w: Element) -> 'SignedPermutation':
        home = w.home
        n = _points(home.ctype)
        if n == 1:
            return cls.identity(1)
        index = _root_index(home)
        eps = home.epsilon_roots
        images = []
        for i in range(n):
            k = (i + 1) % n
            diff = np.zeros(n, dtype=np.int64)
            diff[i], diff[k] = 1, -1
            image_diff = eps[w.perm[index[diff.tobytes()]]]
            if home.ctype.family == 'A':
                a = int(np.flatnonzero(image_diff == 1)[0])
                images.append(a + 1)
                continue
            total = diff.copy()
            total[k] = 1
            image = (image_diff + eps[w.perm[index[total.tobytes()]]]) // 2
            a = int(np.flatnonzero(image)[0])
            images.append((a + 1) * int(image[a]))
        return cls(tuple(images))


def _points(ctype: CoxeterType) -> int:
    if ctype.family == 'A':
        return ctype.rank + 1
    if ctype.family in ('B', 'D'):
        return ctype.rank
    raise PermutationError(f'{ctype} has no signed permutation model')


@lru_cache(maxsize=None)
def _root_index(home):
    return {vec.tobytes(): k for k, vec in enumerate(np.ascontiguousarray(home.epsilon_roots))}


def _locate_roots(home, moved):
    index = _root_index(home)
    try:
        perm = [index[np.ascontiguousarray(vec).tobytes()] for vec in moved]
    except KeyError:
        raise PermutationError('signed permutation does not preserve the root system')
    return np.array(perm, dtype=np.int16)


def to_element(w: SignedPermutation, home: CoxeterSystem) -> Element:
    return w.to_element(home)


def from_element(w: Element) -> SignedPermutation:
    return SignedPermutation.from_element(w)


def class_label(w: Element) -> DoublePartition:
    return SignedPermutation.from_element(w).class_label(w.home.ctype.family)


# ---------------------------------------------------------------------------
# Canonical representatives and block generators
# ---------------------------------------------------------------------------

def w_lambda(ctype: CoxeterType, label: DoublePartition) -> SignedPermutation:
    """Minimal length class representative with consecutive increasing cycles."""
    n = _points(ctype)
    if label.size != n:
        raise PermutationError(f'{label} is not a double partition of {n}')
    if ctype.family == 'A' and (label.minus or label.primed):
        raise PermutationError(f'{label} is not a type A label')
    if ctype.family == 'D' and len(label.minus) % 2:
        raise PermutationError(f'{label} has an odd number of negative cycles, not a type D label')
    if ctype.family == 'B' and label.primed:
        raise PermutationError('primed labels only exist in type D')
    cycles, pos = [], 0
    for part in label.minus:
        cycles.append((list(range(pos + 1, pos + part + 1)), True))
        pos += part
    for part in label.plus:
        cycles.append((list(range(pos + 1, pos + part + 1)), False))
        pos += part
    if label.primed:
        entries, _ = cycles[0]
        entries[0] = -entries[0]
    return SignedPermutation.from_cycles(n, cycles)


def _check_range(top, n, what):
    if top > n:
        raise PermutationError(f'{what} reaches point {top}, beyond {n}')


def block_swap(o: int, m: int, n: int) -> SignedPermutation:
    """s(o, m): swap {o+1..o+m} with {o+m+1..o+2m} pointwise."""
    if o < 0 or m < 0:
        raise PermutationError(f's({o},{m}) needs non-negative arguments')
    _check_range(o + 2 * m, n, f's({o},{m})')
    images = list(range(1, n + 1))
    for i in range(o + 1, o + m + 1):
        images[i - 1], images[i + m - 1] = i + m, i
    return SignedPermutation(tuple(images))


def block_reverse(o: int, m: int, n: int) -> SignedPermutation:
    """r(o, m): reverse {o+1..o+m}."""
    if o < 0 or m < 0:
        raise PermutationError(f'r({o},{m}) needs non-negative arguments')
    _check_range(o + m, n, f'r({o},{m})')
    images = list(range(1, n + 1))
    for i in range(o + 1, o + m + 1):
        images[i - 1] = 2 * o + m + 1 - i
    return SignedPermutation(tuple(images))


def block_negate(o: int, m: int, n: int) -> SignedPermutation:
    """t(o, m): act as -1 on {o+1..o+m}."""
    if o < 0 or m < 0:
        raise PermutationError(f't({o},{m}) needs non-negative arguments')
    _check_range(o + m, n, f't({o},{m})')
    images = list(range(1, n + 1))
    for i in range(o + 1, o + m + 1):
        images[i - 1] = -i
    return SignedPermutation(tuple(images))
