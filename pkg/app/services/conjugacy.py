"""Conjugacy classes, centralizers and normalizers of standard parabolics.

Classes are the connected components of the graph joining w to s w s for
every generator s; scipy does the component labelling. Classes are
numbered by their first element in enumeration order, which is also the
minimal length representative `rep_min`.
"""

import logging
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .coxeter import (
    CoxeterError,
    CoxeterSystem,
    Element,
    ElementSet,
    SubsetJ,
)
from .parabolic import (
    coset_representatives_of,
    conjugate_subset,
    double_coset_reps,
    left_coset_representatives_of,
    min_coset_reps,
    parabolic_elements,
)
from .signed_perm import DoublePartition, class_label

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConjClassRecord:
    position: int
    rep_min: Element
    class_size: int
    J: SubsetJ
    cuspidal: bool
    label: DoublePartition | None
    non_compliant: bool

    @property
    def centralizer_order(self) -> int:
        return self.rep_min.home.order // self.class_size

    def to_dict(self) -> dict:
        return {
            'position': self.position,
            'rep_min': list(self.rep_min.word_labels()),
            'length': len(self.rep_min.word_labels()),
            'class_size': self.class_size,
            'centralizer_order': self.centralizer_order,
            'J': list(self.J.labels),
            'cuspidal': self.cuspidal,
            'label': str(self.label) if self.label is not None else None,
            'non_compliant': self.non_compliant,
        }

    @classmethod
    def from_dict(cls, home: CoxeterSystem, data: dict) -> 'ConjClassRecord':
        label = data.get('label')
        return cls(
            position=data['position'],
            rep_min=home.from_labels(data['rep_min']),
            class_size=data['class_size'],
            J=SubsetJ.from_labels(home.rank, data['J']),
            cuspidal=data['cuspidal'],
            label=DoublePartition.parse(label) if label else None,
            non_compliant=data['non_compliant'],
        )


@dataclass(frozen=True)
class ClassPartition:
    labels: np.ndarray
    reps: np.ndarray
    sizes: np.ndarray

    def members(self, position: int) -> np.ndarray:
        return np.flatnonzero(self.labels == position)


@lru_cache(maxsize=None)
def class_partition(home: CoxeterSystem) -> ClassPartition:
    store = home.element_store()
    order = home.order
    src = np.tile(np.arange(order, dtype=np.int64), home.rank)
    dst = np.concatenate([store.left_mul[s][store.right_mul[s]] for s in range(home.rank)])
    graph = csr_matrix((np.ones(src.size, dtype=np.int8), (src, dst)), shape=(order, order))
    count, raw = connected_components(graph, directed=False)
    firsts = np.full(count, order, dtype=np.int64)
    np.minimum.at(firsts, raw, np.arange(order, dtype=np.int64))
    ranking = np.argsort(firsts)
    position = np.empty(count, dtype=np.int64)
    position[ranking] = np.arange(count)
    labels = position[raw]
    logger.info('%s has %d conjugacy classes', home.ctype, count)
    return ClassPartition(labels, firsts[ranking], np.bincount(labels, minlength=count))


@lru_cache(maxsize=None)
def conjugacy_classes(home: CoxeterSystem) -> tuple[ConjClassRecord, ...]:
    from .complement import non_compliant_positions

    store = home.element_store()
    partition = class_partition(home)
    full = (1 << home.rank) - 1
    not_cuspidal = np.bincount(partition.labels[store.support != full], minlength=len(partition.reps))
    flagged = non_compliant_positions(home)
    records = []
    for position, rep in enumerate(partition.reps):
        w = store.element(rep)
        label = class_label(w) if home.ctype.family in ('A', 'B', 'D') else None
        records.append(ConjClassRecord(
            position=position,
            rep_min=w,
            class_size=int(partition.sizes[position]),
            J=SubsetJ(int(store.support[rep]), home.rank),
            cuspidal=bool(not_cuspidal[position] == 0),
            label=label,
            non_compliant=position in flagged,
        ))
    return tuple(records)


def class_of(w: Element) -> ConjClassRecord:
    position = class_partition(w.home).labels[w.index]
    return conjugacy_classes(w.home)[position]


def class_members(w: Element) -> ElementSet:
    partition = class_partition(w.home)
    return ElementSet(w.home, partition.members(partition.labels[w.index]))


# ---------------------------------------------------------------------------
# Centralizers and normalizers
# ---------------------------------------------------------------------------

def centralizer(w: Element) -> ElementSet:
    perms = w.home.element_store().perms
    commutes = np.all(w.perm[perms] == perms[:, w.perm], axis=1)
    return ElementSet.from_mask(w.home, commutes)


def centralizer_in_parabolic(w: Element, J: SubsetJ) -> ElementSet:
    return centralizer(w) & parabolic_elements(w.home, J)


def normalizer_of_parabolic(home: CoxeterSystem, J: SubsetJ) -> ElementSet:
    store = home.element_store()
    everything = store.all_indices()
    keep = np.ones(home.order, dtype=bool)
    for s in J:
        conj = store.conjugate_indices(store.generator_index[s], everything)
        keep &= (store.support[conj] & ~J.mask) == 0
    return ElementSet.from_mask(home, keep)


def normalizer_complement(home: CoxeterSystem, J: SubsetJ) -> ElementSet:
    """N_J = {x in X_J : J^x = J}."""
    store = home.element_store()
    reps = min_coset_reps(home, J).indices
    simple = [store.generator_index[t] for t in J]
    keep = np.ones(reps.size, dtype=bool)
    for s in J:
        conj = store.conjugate_indices(store.generator_index[s], reps)
        keep &= np.isin(conj, simple)
    return ElementSet(home, reps[keep])


def howlett_splitting(home: CoxeterSystem, J: SubsetJ) -> bool:
    """N_W(W_J) = W_J N_J with W_J & N_J = {e}."""
    normalizer = normalizer_of_parabolic(home, J)
    complement = normalizer_complement(home, J)
    inside = parabolic_elements(home, J)
    return (
        len(inside & complement) == 1
        and complement <= normalizer
        and len(inside) * len(complement) == len(normalizer)
    )


# ---------------------------------------------------------------------------
# Minimal length representatives
# ---------------------------------------------------------------------------

def _conjugation_walk(w: Element, nodes, target=None):
    """Breadth-first walk of w under conjugation by the generators in `nodes`.

    Returns {store index: conjugating word}, stopping early at `target`.
    """
    store = w.home.element_store()
    start = store.index_of(w)
    words = {start: ()}
    queue = deque([start])
    while queue:
        i = queue.popleft()
        if i == target:
            break
        for s in nodes:
            j = int(store.left_mul[s][store.right_mul[s][i]])
            if j not in words:
                words[j] = words[i] + (s,)
                queue.append(j)
    return words


def min_length_class_element(w: Element) -> tuple[Element, Element]:
    """(rep_min, x) with w^x = rep_min."""
    home = w.home
    partition = class_partition(home)
    target = int(partition.reps[partition.labels[w.index]])
    words = _conjugation_walk(w, range(home.rank), target)
    return home.element_store().element(target), home.from_word(words[target])


def is_minimal_length(w: Element) -> bool:
    store = w.home.element_store()
    partition = class_partition(w.home)
    i = w.index
    return store.lengths[i] == store.lengths[partition.reps[partition.labels[i]]]


def parabolic_class(w: Element, J: SubsetJ) -> ElementSet:
    """The W_J-class of w (w must lie in W_J)."""
    return ElementSet(w.home, list(_conjugation_walk(w, J.members)))


def parabolic_class_walk(w: Element, J: SubsetJ) -> dict[int, tuple[int, ...]]:
    return _conjugation_walk(w, J.members)


def _require_minimal(w: Element):
    if not is_minimal_length(w):
        raise CoxeterError(f'{w!r} does not have minimal length in its class')


# ---------------------------------------------------------------------------
# Structure checks
# ---------------------------------------------------------------------------

def verify_theorem2(w: Element) -> bool:
    """C_W(w) W_J = N_W(W_J) for minimal w and J = J(w)."""
    _require_minimal(w)
    home = w.home
    J = SubsetJ(int(home.element_store().support[w.index]), home.rank)
    cosets_c = np.unique(left_coset_representatives_of(home, J, centralizer(w).indices))
    cosets_n = np.unique(left_coset_representatives_of(home, J, normalizer_of_parabolic(home, J).indices))
    return np.array_equal(cosets_c, cosets_n)


@dataclass(frozen=True)
class QuotientReport:
    """The map c -> W_J c from C_W(w) onto N_W(W_J)/W_J."""

    centralizer_order: int
    parabolic_centralizer_order: int
    normalizer_order: int
    parabolic_order: int
    normal: bool
    well_defined: bool
    surjective: bool
    kernel_ok: bool
    homomorphism: bool

    @property
    def orders_match(self) -> bool:
        return self.centralizer_order * self.parabolic_order == self.normalizer_order * self.parabolic_centralizer_order

    @property
    def holds(self) -> bool:
        return (self.orders_match and self.normal and self.well_defined
                and self.surjective and self.kernel_ok and self.homomorphism)


def quotient_map_check(w: Element) -> QuotientReport:
    _require_minimal(w)
    home = w.home
    store = home.element_store()
    J = SubsetJ(int(store.support[w.index]), home.rank)
    cent = centralizer(w)
    cent_j = cent & parabolic_elements(home, J)
    normalizer = normalizer_of_parabolic(home, J)
    complement = normalizer_complement(home, J)

    keys = coset_representatives_of(home, J, cent.indices)
    generators = cent.generators()
    members = cent_j.mask()
    normal = all(members[store.conjugate_indices_by(g, cent_j.indices)].all() for g in generators)

    def key_of(index):
        return int(coset_representatives_of(home, J, [index])[0])

    homomorphism = True
    for a in generators:
        for b in generators:
            ab = store.index_of(a * b)
            composed = store.index_of(store.element(key_of(a.index)) * store.element(key_of(b.index)))
            homomorphism &= key_of(ab) == key_of(composed)

    return QuotientReport(
        centralizer_order=len(cent),
        parabolic_centralizer_order=len(cent_j),
        normalizer_order=len(normalizer),
        parabolic_order=len(parabolic_elements(home, J)),
        normal=normal,
        well_defined=bool(np.isin(keys, complement.indices).all()),
        surjective=np.array_equal(np.unique(keys), complement.indices),
        kernel_ok=np.array_equal(cent.indices[keys == 0], cent_j.indices),
        homomorphism=bool(homomorphism),
    )


def check_class_is_union_of_parabolic_classes(w: Element) -> bool:
    """The W-class of minimal w is a disjoint union of conjugates of its W_J-class."""
    _require_minimal(w)
    home = w.home
    store = home.element_store()
    J = SubsetJ(int(store.support[w.index]), home.rank)
    local = parabolic_class(w, J).indices
    seen, total = set(), 0
    union = np.zeros(home.order, dtype=bool)
    for x in min_coset_reps(home, J):
        image = np.unique(store.conjugate_indices_by(x, local))
        key = image.tobytes()
        if key not in seen:
            seen.add(key)
            total += image.size
            union[image] = True
    whole = class_members(w)
    return total == len(whole) and np.array_equal(np.flatnonzero(union), whole.indices)


def check_centralizer_cosets_normalize(w: Element) -> bool:
    """Each coset W_J a with a in C_W(w) has its X_J representative in N_J."""
    _require_minimal(w)
    home = w.home
    J = SubsetJ(int(home.element_store().support[w.index]), home.rank)
    keys = coset_representatives_of(home, J, centralizer(w).indices)
    return bool(np.isin(keys, normalizer_complement(home, J).indices).all())


def check_conjugate_supports(w: Element) -> bool:
    """J(w^v) = J^x whenever l(w^v) = l(w) and v = u x with x in X_J."""
    _require_minimal(w)
    home = w.home
    store = home.element_store()
    i = w.index
    J = SubsetJ(int(store.support[i]), home.rank)
    everything = store.all_indices()
    conj = store.conjugate_indices(i, everything)
    keep = store.lengths[conj] == store.lengths[i]
    vs, images = everything[keep], conj[keep]
    keys = coset_representatives_of(home, J, vs)
    expected = {}
    for x in np.unique(keys):
        image = conjugate_subset(J, store.element(x))
        if image is None:
            return False
        expected[int(x)] = image.mask
    return all(store.support[img] == expected[int(x)] for x, img in zip(keys, images))


def check_minimal_supports_conjugate(w: Element) -> bool:
    """Minimal elements w, w' of a class have J(w') = J(w)^x for some x in X_JJ'."""
    _require_minimal(w)
    home = w.home
    store = home.element_store()
    members = class_members(w).indices
    minimal = members[store.lengths[members] == store.lengths[w.index]]
    J = SubsetJ(int(store.support[w.index]), home.rank)
    for mask in np.unique(store.support[minimal]):
        K = SubsetJ(int(mask), home.rank)
        if not any(conjugate_subset(J, x) == K for x in double_coset_reps(home, J, K)):
            return False
    return True


def check_cuspidal_classes_do_not_fuse(home: CoxeterSystem, J: SubsetJ) -> bool:
    """For W_J-classes cuspidal in W_J: (W-class) & W_J equals the W_J-class."""
    store = home.element_store()
    partition = class_partition(home)
    inside = parabolic_elements(home, J)
    visited = np.zeros(home.order, dtype=bool)
    for i in inside.indices[store.support[inside.indices] == J.mask]:
        if visited[i]:
            continue
        local = parabolic_class(store.element(i), J).indices
        visited[local] = True
        if (store.support[local] != J.mask).any():
            continue
        fused = np.intersect1d(partition.members(partition.labels[i]), inside.indices)
        if not np.array_equal(fused, local):
            return False
    return True


def check_minimal_representatives(home: CoxeterSystem) -> bool:
    """rep_min is cuspidal in W_J(w) and (-1)^|J(w)| = (-1)^l(w)."""
    store = home.element_store()
    for record in conjugacy_classes(home):
        w = record.rep_min
        if (len(record.J) - store.lengths[w.index]) % 2:
            return False
        local = parabolic_class(w, record.J).indices
        if (store.support[local] != record.J.mask).any():
            return False
    return True
