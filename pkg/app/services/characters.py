"""Permutation characters pi_J, the sign character and Solomon's formula.

pi_J(w) counts the cosets W_J x fixed by w, i.e. the x in X_J with
x w x^-1 in W_J. The MacMahon master theorem side is evaluated with exact
sparse polynomials in the entries of a symbolic n x n matrix.
"""

import csv
import io
import itertools
import math
import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .conjugacy import ConjClassRecord, class_partition, conjugacy_classes, is_minimal_length
from .coxeter import (
    CoxeterError,
    CoxeterSystem,
    CoxeterType,
    Element,
    InvariantViolation,
    SubsetJ,
    build_system,
    length,
    longest_element,
)
from .parabolic import coset_representatives_of, min_coset_reps
from .polynomial import (
    Pruning,
    PolynomialError,
    SparsePolynomial,
    monomial_support,
    permutation_monomial,
    principal_minor,
)
from .signed_perm import SignedPermutation

logger = logging.getLogger(__name__)

MAX_MACMAHON_RANK = 6


def epsilon(w: Element) -> int:
    return -1 if length(w) % 2 else 1


def _conjugated_supports(w: Element) -> np.ndarray:
    """J(x w x^-1) for every x in W, indexed by x."""
    store = w.home.element_store()
    everything = store.all_indices()
    return store.support[store.conjugate_indices(w.index, store.inverse[everything])]


def pi_J(w: Element, J: SubsetJ) -> int:
    store = w.home.element_store()
    reps = min_coset_reps(w.home, J).indices
    conj = store.conjugate_indices(w.index, store.inverse[reps])
    return int(np.count_nonzero((store.support[conj] & ~J.mask) == 0))


def coset_fixed_points(w: Element, J: SubsetJ) -> int:
    """#{x in X_J : W_J x w = W_J x}, counted on the coset space directly."""
    home = w.home
    reps = min_coset_reps(home, J).indices
    moved = coset_representatives_of(home, J, home.element_store().right_products(reps, w))
    return int(np.count_nonzero(moved == reps))


def _subset_counts(w: Element) -> np.ndarray:
    """pi_J(w) for every J, indexed by the bitmask of J."""
    home = w.home
    store = home.element_store()
    supports = _conjugated_supports(w)
    descents = store.left_descents
    counts = np.zeros(1 << home.rank, dtype=np.int64)
    for mask in range(1 << home.rank):
        counts[mask] = np.count_nonzero(((descents & mask) == 0) & ((supports & ~mask) == 0))
    return counts


def _popcount_signs(rank: int) -> np.ndarray:
    return np.array([-1 if bin(m).count('1') % 2 else 1 for m in range(1 << rank)], dtype=np.int64)


def solomon_sum(w: Element) -> int:
    """sum over J of (-1)^|J| pi_J(w)."""
    return int(_subset_counts(w) @ _popcount_signs(w.home.rank))


def solomon_reordered_sum(w: Element) -> int:
    """sum over x with J(x w x^-1) = A(x) of (-1)^|A(x)|, A(x) the left ascents."""
    home = w.home
    store = home.element_store()
    ascents = ((1 << home.rank) - 1) & ~store.left_descents
    hits = ascents[_conjugated_supports(w) == ascents]
    return int(_popcount_signs(home.rank)[hits].sum())


def binomial_collapse(A: frozenset, B: frozenset) -> int:
    """sum over A <= J <= B of (-1)^|J|."""
    if not A <= B:
        return 0
    free = sorted(B - A)
    return sum((-1) ** (len(A) + k) * math.comb(len(free), k)
               for k in range(len(free) + 1))


@dataclass(frozen=True)
class CharacterValueTable:
    group: str
    subsets: tuple[SubsetJ, ...]
    classes: tuple[ConjClassRecord, ...]
    values: np.ndarray
    signs: tuple[int, ...]

    def value(self, position: int, J: SubsetJ) -> int:
        return int(self.values[position, J.mask])

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator='\n')
        writer.writerow(['class', 'rep'] + [f'J={J}' for J in self.subsets] + ['epsilon'])
        for record, row, sign in zip(self.classes, self.values, self.signs):
            rep = ' '.join(str(s) for s in record.rep_min.word_labels())
            writer.writerow([record.position + 1, rep] + [int(v) for v in row] + [sign])
        return out.getvalue()


def character_table(home: CoxeterSystem) -> CharacterValueTable:
    records = conjugacy_classes(home)
    values = np.stack([_subset_counts(r.rep_min) for r in records])
    logger.info('Character values for %s: %d classes x %d subsets', home.ctype, len(records), values.shape[1])
    return CharacterValueTable(
        group=str(home.ctype),
        subsets=tuple(SubsetJ(m, home.rank) for m in range(1 << home.rank)),
        classes=records,
        values=values,
        signs=tuple(epsilon(r.rep_min) for r in records),
    )


def solomon_check(home: CoxeterSystem, samples: int = 3, seed: int = 0) -> bool:
    """The alternating sum equals epsilon on every class, at rep_min and at random members."""
    store = home.element_store()
    partition = class_partition(home)
    rng = np.random.default_rng(seed)
    for record in conjugacy_classes(home):
        members = partition.members(record.position)
        picks = rng.choice(members, size=min(samples, members.size), replace=False)
        for i in [record.rep_min.index, *picks]:
            w = store.element(i)
            if solomon_sum(w) != epsilon(w):
                logger.error('Solomon sum fails in %s at %s', home.ctype, w.word_labels())
                return False
    return True


def theorem3_check(w: Element) -> tuple[Element, Element]:
    """The unique v with J(w^v) = D(v^-1) is w_J; the unique v with J(w^v) = A(v^-1) is w_J w0."""
    if not is_minimal_length(w):
        raise CoxeterError(f'{w!r} does not have minimal length in its class')
    home = w.home
    store = home.element_store()
    full = (1 << home.rank) - 1
    everything = store.all_indices()
    supports = store.support[store.conjugate_indices(w.index, everything)]
    descents = store.left_descents[store.inverse]
    J = SubsetJ(int(store.support[w.index]), home.rank)
    w_J = longest_element(home, J)
    w_0 = longest_element(home, home.full_subset())
    expected = (w_J.index, (w_J * w_0).index)
    found = (np.flatnonzero(supports == descents), np.flatnonzero(supports == (full & ~descents)))
    for name, hits, target in zip(('descent', 'ascent'), found, expected):
        if hits.tolist() != [target]:
            raise InvariantViolation(
                f'theorem3-{name}',
                f'{home.ctype} at {w.word_labels()}: solutions {hits.tolist()[:5]}, expected [{target}]',
            )
    return store.element(expected[0]), store.element(expected[1])


# ---------------------------------------------------------------------------
# Compositions and the symmetric group
# ---------------------------------------------------------------------------

def compositions(n: int) -> list[tuple[int, ...]]:
    result = []
    for cuts in range(1 << max(n - 1, 0)):
        parts, last = [], 0
        for p in range(1, n):
            if cuts >> (p - 1) & 1:
                parts.append(p - last)
                last = p
        parts.append(n - last)
        result.append(tuple(parts))
    return result


def _check_composition(composition, n):
    composition = tuple(int(p) for p in composition)
    if not composition or any(p < 1 for p in composition) or sum(composition) != n:
        raise PolynomialError(f'{composition} is not a composition of {n}')
    return composition


def composition_to_subset(composition) -> SubsetJ:
    """J = {s_i : i not a partial sum} inside S_n, n = sum(composition)."""
    n = sum(composition)
    composition = _check_composition(composition, n)
    cuts = set(itertools.accumulate(composition[:-1]))
    return SubsetJ.of(n - 1, [i - 1 for i in range(1, n) if i not in cuts])


def subset_to_composition(J: SubsetJ, n: int) -> tuple[int, ...]:
    parts, last = [], 0
    for i in range(1, n):
        if (i - 1) not in J:
            parts.append(i - last)
            last = i
    parts.append(n - last)
    return tuple(parts)


def ordered_set_partitions(points, sizes):
    """Ordered tuples of disjoint blocks with the given sizes covering `points`."""
    if not sizes:
        yield ()
        return
    for block in itertools.combinations(points, sizes[0]):
        rest = [p for p in points if p not in block]
        for tail in ordered_set_partitions(rest, sizes[1:]):
            yield (block,) + tail


def _check_rank(n):
    if not 1 <= n <= MAX_MACMAHON_RANK:
        raise PolynomialError(f'n must lie in 1..{MAX_MACMAHON_RANK}, got {n}')


def _check_images(images, n):
    images = tuple(int(i) for i in images)
    if sorted(images) != list(range(1, n + 1)):
        raise PolynomialError(f'{images} is not a permutation of 1..{n}')
    return images


def _det_sum(n: int, pruning: Pruning) -> SparsePolynomial:
    """sum over nonempty I of (-1)^(|I|-1) det X_I, so det(Id - X) = 1 - this."""
    total = SparsePolynomial(n * n, {}, pruning)
    for k in range(1, n + 1):
        for subset in itertools.combinations(range(1, n + 1), k):
            minor = principal_minor(n, subset, pruning)
            total = total + minor if k % 2 else total - minor
    return total


def _geometric_series(base: SparsePolynomial, order: int) -> SparsePolynomial:
    series = power = SparsePolynomial.constant(base.n_vars, 1, base.pruning)
    for _ in range(order):
        power = power * base
        series = series + power
    return series


def macmahon_series(n: int, order: int | None = None) -> SparsePolynomial:
    """Multilinear part of 1/det(Id - X) truncated at total degree `order`."""
    _check_rank(n)
    order = n if order is None else order
    if order < 1:
        raise PolynomialError('truncation order must be positive')
    return _geometric_series(_det_sum(n, Pruning(multilinear=True)), order)


def macmahon_series_coefficient(n: int, images, order: int | None = None) -> Fraction:
    """Coefficient of x_{1 w(1)} ... x_{n w(n)} in 1/det(Id - X)."""
    _check_rank(n)
    images = _check_images(images, n)
    order = n if order is None else order
    if order < n:
        raise PolynomialError(f'truncation order {order} is below n={n}')
    pruning = Pruning(multilinear=True, allowed=monomial_support(images))
    series = _geometric_series(_det_sum(n, pruning), order)
    return series.coefficient(permutation_monomial(images))


def merris_watkins_coefficient(n: int, composition, images) -> int:
    """Coefficient of the permutation monomial in the sum of det X_I1 ... det X_Ik
    over ordered set partitions with |I_j| = composition[j]."""
    _check_rank(n)
    composition = _check_composition(composition, n)
    images = _check_images(images, n)
    pruning = Pruning(multilinear=True, allowed=monomial_support(images))
    target = permutation_monomial(images)
    total = Fraction(0)
    for blocks in ordered_set_partitions(list(range(1, n + 1)), composition):
        product = SparsePolynomial.constant(n * n, 1, pruning)
        for block in blocks:
            product = product * principal_minor(n, block, pruning)
            if product.is_zero():
                break
        total += product.coefficient(target)
    return int(total)


def symmetric_pi(n: int, composition, images) -> int:
    """(-1)^l(w) pi_J(w) in S_n for the subset J of the composition."""
    if n == 1:
        return 1
    home = build_system(CoxeterType('A', n - 1))
    w = SignedPermutation(tuple(images)).to_element(home)
    return epsilon(w) * pi_J(w, composition_to_subset(composition))


def macmahon_solomon_bridge(n: int, sample: int | None = None, seed: int = 0) -> bool:
    """For each permutation w: sum over compositions of (-1)^(n-k) times the
    Merris-Watkins coefficient is 1, agrees termwise with (-1)^l(w) pi_J(w),
    and matches the master theorem coefficient."""
    _check_rank(n)
    perms = list(itertools.permutations(range(1, n + 1)))
    if sample is not None and sample < len(perms):
        rng = np.random.default_rng(seed)
        perms = [perms[i] for i in sorted(rng.choice(len(perms), size=sample, replace=False))]
    for images in perms:
        total = 0
        for composition in compositions(n):
            coefficient = merris_watkins_coefficient(n, composition, images)
            if coefficient != symmetric_pi(n, composition, images):
                logger.error('Merris-Watkins term differs at w=%s, composition %s', images, composition)
                return False
            total += (-1) ** (n - len(composition)) * coefficient
        if total != 1 or macmahon_series_coefficient(n, images) != 1:
            logger.error('Master theorem coefficient differs from 1 at w=%s', images)
            return False
    logger.info('MacMahon/Solomon bridge holds for n=%d on %d permutations', n, len(perms))
    return True
