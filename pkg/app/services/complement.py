"""Complements of C_{W_J}(w) in C_W(w).

For w of minimal length in its class and J = J(w), the parabolic
centralizer C_{W_J}(w) is normal in C_W(w) with quotient N_W(W_J)/W_J.
This module builds complements constructively for the classical types,
searches for them in general, and certifies when none exists.

A subgroup M of C_W(w) is a complement as soon as M & W_J = {e} and
|M| = |C_W(w) : C_{W_J}(w)|.
"""

import logging
from dataclasses import asdict, dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np

from .conjugacy import (
    centralizer,
    class_partition,
    min_length_class_element,
    normalizer_complement,
    parabolic_class_walk,
)
from .coxeter import (
    CoxeterError,
    CoxeterSystem,
    CoxeterType,
    Element,
    ElementSet,
    SubsetJ,
    build_system,
    component_label,
    generate_subgroup,
    irreducible_components,
    longest_element,
    reduce_word,
    type_d_labelling,
)
from .parabolic import J_of, parabolic_elements
from .signed_perm import (
    DoublePartition,
    SignedPermutation,
    block_negate,
    block_offsets,
    block_swap,
    class_label,
    is_even,
    multiplicities,
    w_lambda,
)

logger = logging.getLogger(__name__)

DEFAULT_SEARCH_BUDGET = 20000


class ComplementError(CoxeterError):
    """A proposed complement fails a defining condition."""


class SearchOutcome(str, Enum):
    EXISTS = 'exists'
    NOT_EXISTS = 'not-exists'
    UNKNOWN = 'unknown'


@dataclass(frozen=True)
class Certificate:
    kind: str
    centralizer_order: int
    parabolic_centralizer_order: int
    complement_order: int | None = None
    detail: str = ''

    @property
    def index(self) -> int:
        return self.centralizer_order // self.parabolic_centralizer_order

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class SearchStats:
    v_tried: int = 0
    tuples_tried: int = 0
    closures: int = 0

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class ComplementResult:
    """Outcome for `element`, the minimal representative actually searched.

    `conjugator` satisfies input^conjugator = element; `generators`
    centralize `element`.
    """

    status: str
    element: Element
    conjugator: Element
    J: SubsetJ
    generators: tuple[Element, ...]
    certificate: Certificate
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def found(self) -> bool:
        return self.status == 'found'

    @property
    def non_existence_proven(self) -> bool:
        return self.certificate.kind in ('no-involution-in-coset', 'subgroup-search')

    def group(self) -> ElementSet:
        return generate_subgroup(self.element.home, self.generators)

    def to_dict(self) -> dict:
        return {
            'status': self.status,
            'element': list(self.element.word_labels()),
            'conjugator': list(self.conjugator.word_labels()),
            'J': list(self.J.labels),
            'generators': [list(g.word_labels()) for g in self.generators],
            'certificate': self.certificate.to_dict(),
            'stats': self.stats.to_dict(),
        }


def _centralizers(w: Element, J: SubsetJ) -> tuple[ElementSet, ElementSet]:
    cent = centralizer(w)
    return cent, cent & parabolic_elements(w.home, J)


# ---------------------------------------------------------------------------
# Certification
# ---------------------------------------------------------------------------

def certify_complement(w: Element, J: SubsetJ, generators) -> Certificate:
    home = w.home
    generators = list(generators)
    cent, cent_j = _centralizers(w, J)
    index = len(cent) // len(cent_j)
    for g in generators:
        if g * w != w * g:
            raise ComplementError(f'{g!r} does not centralize {w!r}')
    group = generate_subgroup(home, generators, limit=index)
    if group is None:
        raise ComplementError(f'generated group is larger than the index {index}')
    if len(group & parabolic_elements(home, J)) != 1:
        raise ComplementError(f'generated group meets W_{J} nontrivially')
    if len(group) != index:
        raise ComplementError(f'generated group has order {len(group)}, index is {index}')
    return Certificate('pro-M', len(cent), len(cent_j), len(group),
                       detail=f'order {len(group)}, trivial intersection with W_{J}')


def certify_no_complement_order2(w: Element, J: SubsetJ) -> bool:
    """True iff the coset C_W(w) - C_{W_J}(w) holds no involution."""
    home = w.home
    cent, cent_j = _centralizers(w, J)
    if len(cent) != 2 * len(cent_j):
        raise ComplementError(f'index of C_W_J(w) is {len(cent) // len(cent_j)}, not 2')
    coset = home.element_store().perms[(cent - cent_j).indices].astype(np.int64)
    squares = np.take_along_axis(coset, coset, axis=1)
    involutions = np.all(squares == np.arange(home.n_roots), axis=1)
    return not bool(involutions.any())


class _BudgetSpent(Exception):
    pass


def exhaustive_complement_search(w: Element, J: SubsetJ,
                                 budget: int = DEFAULT_SEARCH_BUDGET) -> SearchOutcome:
    """Search subgroups generated by lifts of a generating set of the quotient."""
    home = w.home
    store = home.element_store()
    cent, cent_j = _centralizers(w, J)
    index = len(cent) // len(cent_j)
    if index == 1:
        return SearchOutcome.EXISTS

    base = cent_j.generators()
    span = cent_j.mask()
    representatives = []
    for i in cent.indices:
        if not span[i]:
            representatives.append(store.element(i))
            span = generate_subgroup(home, base + representatives).mask()
    lifts = [store.left_products(c, cent_j.indices) for c in representatives]
    inside = parabolic_elements(home, J).mask()
    closures = 0

    def extend(depth, chosen):
        nonlocal closures
        for lift in lifts[depth]:
            closures += 1
            if closures > budget:
                raise _BudgetSpent
            gens = chosen + [store.element(lift)]
            group = generate_subgroup(home, gens, limit=index)
            if group is None or inside[group.indices].sum() != 1:
                continue
            if depth + 1 == len(lifts):
                if len(group) == index:
                    return True
            elif extend(depth + 1, gens):
                return True
        return False

    try:
        outcome = SearchOutcome.EXISTS if extend(0, []) else SearchOutcome.NOT_EXISTS
    except _BudgetSpent:
        outcome = SearchOutcome.UNKNOWN
    logger.info('Exhaustive complement search in %s: %s after %d closures',
                home.ctype, outcome.value, min(closures, budget))
    return outcome


# ---------------------------------------------------------------------------
# Search algorithm
# ---------------------------------------------------------------------------

def involution_generators_of_NJ(home: CoxeterSystem, J: SubsetJ) -> list[Element]:
    store = home.element_store()
    complement = normalizer_complement(home, J)
    if len(complement) == 1:
        return []
    perms = store.perms[complement.indices].astype(np.int64)
    squares = np.take_along_axis(perms, perms, axis=1)
    involutions = complement.indices[np.all(squares == np.arange(home.n_roots), axis=1)]
    involutions = involutions[involutions != 0]

    chosen = []
    span = np.zeros(home.order, dtype=bool)
    span[0] = True
    for i in involutions:
        if not span[i]:
            chosen.append(int(i))
            span = generate_subgroup(home, [store.element(c) for c in chosen]).mask()
    if span.sum() < len(complement):
        logger.warning('N_J for J=%s in %s is not generated by involutions', J, home.ctype)
        for i in complement.indices:
            if not span[i]:
                chosen.append(int(i))
                span = generate_subgroup(home, [store.element(c) for c in chosen]).mask()

    for g in reversed(list(chosen)):
        rest = [c for c in chosen if c != g]
        if len(generate_subgroup(home, [store.element(c) for c in rest])) == len(complement):
            chosen = rest
    return [store.element(c) for c in chosen]


def _submasks_by_size(mask: int) -> list[int]:
    subs, sub = [], mask
    while True:
        subs.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & mask
    return sorted(subs, key=lambda m: (bin(m).count('1'), m))


def centralizer_complement(w: Element, *, search_budget: int = DEFAULT_SEARCH_BUDGET) -> ComplementResult:
    home = w.home
    store = home.element_store()
    rep, conjugator = min_length_class_element(w)
    J = SubsetJ(int(store.support[rep.index]), home.rank)
    stats = SearchStats()
    cent, cent_j = _centralizers(rep, J)
    index = len(cent) // len(cent_j)
    generators = involution_generators_of_NJ(home, J)
    limit = len(normalizer_complement(home, J))
    inside = parabolic_elements(home, J).mask()

    def result(status, gens, certificate):
        return ComplementResult(status, rep, conjugator, J, tuple(gens), certificate, stats)

    if not generators:
        return result('found', [], certify_complement(rep, J, []))

    longest = {m: longest_element(home, SubsetJ(m, home.rank)) for m in _submasks_by_size(J.mask)}
    walk = parabolic_class_walk(rep, J)
    minimal = sorted(i for i in walk if store.lengths[i] == store.lengths[rep.index])

    def search(candidates, depth, chosen):
        for y in candidates[depth]:
            gens = chosen + [y]
            stats.closures += 1
            group = generate_subgroup(home, gens, limit=limit)
            last = depth + 1 == len(candidates)
            stats.tuples_tried += last
            if group is None or inside[group.indices].sum() != 1:
                continue
            if last:
                return gens
            found = search(candidates, depth + 1, gens)
            if found:
                return found
        return None

    for vi in minimal:
        stats.v_tried += 1
        v = store.element(vi)
        candidates = []
        for x in generators:
            if v.conjugate(x) == v:
                candidates.append([x])
                continue
            target = v.conjugate(x.inverse())
            options = [wl * x for wl in longest.values()
                       if x.conjugate(wl) == x and v.conjugate(wl) == target]
            candidates.append(options)
        if not all(candidates):
            continue
        logger.debug('v=%s: candidate set sizes %s', v.word_labels(), [len(c) for c in candidates])
        found = search(candidates, 0, [])
        if found:
            back = home.from_word(walk[vi]).inverse()
            gens = [y.conjugate(back) for y in found]
            certificate = certify_complement(rep, J, gens)
            logger.info('Complement found in %s for %s: order %d after %d v, %d closures',
                        home.ctype, rep.word_labels(), certificate.complement_order,
                        stats.v_tried, stats.closures)
            return result('found', gens, certificate)

    if index == 2:
        proven = certify_no_complement_order2(rep, J)
        kind = 'no-involution-in-coset' if proven else 'unproven'
        detail = ('the coset C_W(w) - C_W_J(w) contains no involution' if proven
                  else 'an involution exists in the nontrivial coset')
    else:
        outcome = exhaustive_complement_search(rep, J, search_budget)
        kind = 'subgroup-search' if outcome is SearchOutcome.NOT_EXISTS else 'unproven'
        detail = f'exhaustive search: {outcome.value}'
    if kind == 'unproven':
        logger.warning('Complement search failed in %s for %s without a certificate (%s)',
                       home.ctype, rep.word_labels(), detail)
    else:
        logger.info('No complement in %s for %s: %s', home.ctype, rep.word_labels(), detail)
    return result('fail', [], Certificate(kind, len(cent), len(cent_j), None, detail))


def restriction_check(result: ComplementResult, L: SubsetJ) -> bool:
    """C_{W_L}(w) = C_{W_J}(w) x| (N & W_L) for a found complement N and J <= L."""
    if not result.found:
        raise ComplementError('restriction needs a found complement')
    w, J = result.element, result.J
    if not J.issubset(L):
        raise ComplementError(f'J={J} is not contained in L={L}')
    home = w.home
    local = parabolic_elements(home, L)
    cent_l = centralizer(w) & local
    cent_j = cent_l & parabolic_elements(home, J)
    restricted = result.group() & local
    return (
        restricted <= cent_l
        and len(restricted & cent_j) == 1
        and len(cent_l) == len(cent_j) * len(restricted)
    )


# ---------------------------------------------------------------------------
# Non-compliant classes
# ---------------------------------------------------------------------------

def is_non_compliant_partition(label: DoublePartition) -> bool:
    """A single odd positive part and a nonempty even negative part with an even number of parts."""
    return (
        len(label.plus) == 1
        and label.plus[0] % 2 == 1
        and bool(label.minus)
        and is_even(label.minus)
        and len(label.minus) % 2 == 0
    )


def d_label_is_non_compliant(label: DoublePartition) -> bool:
    """Type D_n criterion: plus not even, minus nonempty and even."""
    return not is_even(label.plus) and bool(label.minus) and is_even(label.minus)


def _d_generators(k: int) -> list[SignedPermutation]:
    """u, s_1, ..., s_{k-1} of W(D_k) as signed permutations."""
    u = SignedPermutation.parse('(1,-2)', k)
    return [u] + [block_swap(i - 1, 1, k) for i in range(1, k)]


@lru_cache(maxsize=None)
def parabolic_scan_positions(home: CoxeterSystem) -> frozenset[int]:
    """Classes meeting some W_M whose D_k component (k odd, k >= 5) sees a non-compliant type."""
    store = home.element_store()
    partition = class_partition(home)
    flagged = set()
    full = (1 << home.rank) - 1
    for mask in range(1, full + 1):
        K = SubsetJ(mask, home.rank)
        if len(K) < 5 or len(K) % 2 == 0 or len(irreducible_components(home, K)) != 1:
            continue
        if not component_label(home, K).startswith('D'):
            continue
        border = 0
        for s in K:
            for t in range(home.rank):
                if t not in K and home.coxeter_matrix[s][t] >= 3:
                    border |= 1 << t
        M = SubsetJ(full & ~border, home.rank)
        position = {node: i for i, node in enumerate(type_d_labelling(home, K))}
        gens = _d_generators(len(K))
        for idx in parabolic_elements(home, M).indices:
            if int(partition.labels[idx]) in flagged:
                continue
            projection = SignedPermutation.identity(len(K))
            for s in reduce_word(store.element(idx)):
                if s in position:
                    projection = projection * gens[position[s]]
            if is_non_compliant_partition(projection.cycle_type()):
                flagged.add(int(partition.labels[idx]))
    return frozenset(flagged)


@lru_cache(maxsize=None)
def non_compliant_positions(home: CoxeterSystem) -> frozenset[int]:
    if home.ctype.family == 'D':
        store = home.element_store()
        reps = class_partition(home).reps
        return frozenset(p for p, i in enumerate(reps) if d_label_is_non_compliant(class_label(store.element(i))))
    return parabolic_scan_positions(home)


def non_compliant_classes(home: CoxeterSystem) -> list[int]:
    return sorted(non_compliant_positions(home))


def class_is_non_compliant(record, home: CoxeterSystem) -> bool:
    if home.ctype.family == 'D':
        return d_label_is_non_compliant(record.label)
    return record.position in non_compliant_positions(home)


# ---------------------------------------------------------------------------
# Constructive complements
# ---------------------------------------------------------------------------

def type_a_generators(parts) -> list[SignedPermutation]:
    """s(o_m + k m, m) for every part size m, 0 <= k <= a_m - 2."""
    label = DoublePartition(tuple(parts))
    n = label.size
    offsets = block_offsets(label, 'A')
    return [block_swap(offsets[m] + k * m, m, n)
            for m, a in multiplicities(label.plus).items() for k in range(a - 1)]


def type_b_generators(label: DoublePartition) -> list[SignedPermutation]:
    """t(o_m, m) and s(o_m + k m, m) for every positive part size m."""
    n = label.size
    offsets = block_offsets(label, 'B')
    gens = []
    for m, a in multiplicities(label.plus).items():
        gens.append(block_negate(offsets[m], m, n))
        gens.extend(block_swap(offsets[m] + k * m, m, n) for k in range(a - 1))
    return gens


def type_d_generators(label: DoublePartition) -> list[SignedPermutation]:
    """Generators of a complement for w_lambda in W(D_n), when one is known."""
    if d_label_is_non_compliant(label):
        raise ComplementError(f'{label.compact()} is non-compliant: no complement exists')
    n = label.size
    base = type_b_generators(label.unprimed())
    if is_even(label.plus):
        if not label.primed:
            return base
        t1 = block_negate(0, 1, n)
        return [t1 * g * t1 for g in base]
    if not label.minus:
        return _even_subgroup_generators(base, n)
    k = _first_odd_prefix(label.minus)
    twist = block_negate(0, k, n)
    offsets = block_offsets(label, 'D')
    gens = []
    for m, a in multiplicities(label.plus).items():
        negate = block_negate(offsets[m], m, n)
        gens.append(twist * negate if m % 2 else negate)
        gens.extend(block_swap(offsets[m] + j * m, m, n) for j in range(a - 1))
    return gens


def _first_odd_prefix(parts) -> int:
    running = 0
    for p in parts:
        running += p
        if running % 2:
            return running
    raise ComplementError(f'negative part {parts} has no odd prefix sum')


def _even_subgroup_generators(generators, n) -> list[SignedPermutation]:
    """Generators of <generators> & W(D_n), found by closing the group."""
    identity = SignedPermutation.identity(n)
    group = _close(generators, identity)
    even = sorted((g for g in group if g.is_even() and g != identity), key=lambda g: g.images)
    chosen, span = [], {identity}
    for g in even:
        if g not in span:
            chosen.append(g)
            span = _close(chosen, identity)
    return chosen


def _close(generators, identity):
    group, frontier = {identity}, [identity]
    while frontier:
        nxt = []
        for g in frontier:
            for h in generators:
                gh = g * h
                if gh not in group:
                    group.add(gh)
                    nxt.append(gh)
        frontier = nxt
    return group


def _constructive(ctype: CoxeterType, label: DoublePartition, generators) -> tuple[Element, ElementSet]:
    home = build_system(ctype)
    w = w_lambda(ctype, label).to_element(home)
    gens = [g.to_element(home) for g in generators]
    certificate = certify_complement(w, J_of(w), gens)
    logger.info('Constructive complement for %s %s: order %d', ctype, label.compact(),
                certificate.complement_order)
    return w, generate_subgroup(home, gens)


def complement_type_A(parts) -> ElementSet:
    label = DoublePartition(tuple(parts))
    if label.size < 2:
        raise ComplementError('type A needs at least two points')
    return _constructive(CoxeterType('A', label.size - 1), label, type_a_generators(parts))[1]


def complement_type_B(label: DoublePartition) -> ElementSet:
    return _constructive(CoxeterType('B', label.size), label, type_b_generators(label))[1]


def complement_type_D(label: DoublePartition) -> ElementSet:
    return _constructive(CoxeterType('D', label.size), label, type_d_generators(label))[1]


# ---------------------------------------------------------------------------
# Types B and D side by side
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TypeComparison:
    """Orders for the same signed permutation w_lambda inside W(B_n) and W(D_n)."""

    label: DoublePartition
    centralizer_b: int
    centralizer_d: int
    parabolic_b: int
    parabolic_d: int
    parabolic_centralizer_b: int
    parabolic_centralizer_d: int

    @property
    def quotient_b(self) -> int:
        return self.centralizer_b // self.parabolic_centralizer_b

    @property
    def quotient_d(self) -> int:
        return self.centralizer_d // self.parabolic_centralizer_d


def compare_types_b_and_d(label: DoublePartition) -> TypeComparison:
    n = label.size
    sides = {}
    for family in ('B', 'D'):
        ctype = CoxeterType(family, n)
        home = build_system(ctype)
        w = w_lambda(ctype, label if family == 'D' else label.unprimed()).to_element(home)
        J = J_of(w)
        cent, cent_j = _centralizers(w, J)
        sides[family] = (len(cent), len(parabolic_elements(home, J)), len(cent_j))
    return TypeComparison(label, sides['B'][0], sides['D'][0], sides['B'][1], sides['D'][1],
                          sides['B'][2], sides['D'][2])
