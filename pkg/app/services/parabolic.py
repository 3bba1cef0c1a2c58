"""Standard parabolic subgroups and their distinguished coset representatives.

X_J is the set of minimal length representatives of the right cosets
W_J x; x lies in X_J exactly when every s in J is a left ascent of x.
"""

import logging
from dataclasses import dataclass

import numpy as np

from .coxeter import (
    CoxeterError,
    CoxeterSystem,
    Element,
    ElementSet,
    SubsetJ,
    descent_mask,
    length,
    longest_element,
    reduce_word,
)

logger = logging.getLogger(__name__)


class ParabolicError(CoxeterError):
    pass


@dataclass(frozen=True)
class CosetDecomposition:
    """w = u * x with u in W_J, x in X_J and lengths adding up."""

    u: Element
    x: Element


def parabolic_elements(home: CoxeterSystem, J: SubsetJ) -> ElementSet:
    store = home.element_store()
    return ElementSet.from_mask(home, (store.support & ~J.mask) == 0)


def min_coset_reps(home: CoxeterSystem, J: SubsetJ) -> ElementSet:
    store = home.element_store()
    return ElementSet.from_mask(home, (store.left_descents & J.mask) == 0)


def left_coset_reps(home: CoxeterSystem, J: SubsetJ) -> ElementSet:
    """Minimal representatives of the left cosets x W_J, i.e. X_J^-1."""
    store = home.element_store()
    return ElementSet.from_mask(home, (store.right_descents & J.mask) == 0)


def double_coset_reps(home: CoxeterSystem, J: SubsetJ, K: SubsetJ) -> ElementSet:
    store = home.element_store()
    mask = ((store.left_descents & J.mask) == 0) & ((store.right_descents & K.mask) == 0)
    return ElementSet.from_mask(home, mask)


def decompose(w: Element, J: SubsetJ) -> CosetDecomposition:
    """Strip left descents in J, smallest index first."""
    home = w.home
    x = w
    stripped = []
    while True:
        mask = descent_mask(x) & J.mask
        if not mask:
            break
        s = (mask & -mask).bit_length() - 1
        stripped.append(s)
        x = home.generator(s) * x
    return CosetDecomposition(home.from_word(stripped), x)


def J_of(w: Element) -> SubsetJ:
    return SubsetJ.of(w.home.rank, set(reduce_word(w)))


def descent_decompose(w: Element) -> tuple[Element, Element]:
    """(w_D, x) with D the left descent set of w and w = w_D * x reduced."""
    J = SubsetJ(descent_mask(w), w.home.rank)
    w_J = longest_element(w.home, J)
    return w_J, w_J * w


def simple_index(x: Element) -> int | None:
    """Index of x as a simple reflection, None when it is not one."""
    return x.home.generator_lookup.get(x.perm.tobytes())


def conjugate_subset(J: SubsetJ, x: Element) -> SubsetJ | None:
    """J^x = {x^-1 s x : s in J} when it is a set of simple reflections."""
    home = x.home
    x_inv = x.inverse()
    images = []
    for s in J:
        t = simple_index(x_inv * home.generator(s) * x)
        if t is None:
            return None
        images.append(t)
    return SubsetJ.of(home.rank, images)


def parabolic_intersection(J: SubsetJ, x: Element, K: SubsetJ) -> SubsetJ:
    """L = J^x & K, so that W_J^x & W_K = W_L for x in X_JK."""
    home = x.home
    if descent_mask(x) & J.mask or descent_mask(x.inverse()) & K.mask:
        raise ParabolicError(f'{x!r} is not a minimal ({J},{K}) double coset representative')
    x_inv = x.inverse()
    images = []
    for s in J:
        t = simple_index(x_inv * home.generator(s) * x)
        if t is not None and t in K:
            images.append(t)
    return SubsetJ.of(home.rank, images)


def coset_representatives_of(home: CoxeterSystem, J: SubsetJ, indices) -> np.ndarray:
    """X_J representative of W_J w for every store index w, by stripping left descents."""
    store = home.element_store()
    idx = np.array(indices, dtype=np.int64, copy=True)
    while True:
        descents = store.left_descents[idx] & J.mask
        active = np.flatnonzero(descents)
        if not active.size:
            return idx
        letters = store.lowest_bit[descents[active]]
        idx[active] = store.left_mul[letters, idx[active]]


def left_coset_representatives_of(home: CoxeterSystem, J: SubsetJ, indices) -> np.ndarray:
    """Representative of w W_J for every store index w, by stripping right descents."""
    store = home.element_store()
    idx = np.array(indices, dtype=np.int64, copy=True)
    while True:
        descents = store.right_descents[idx] & J.mask
        active = np.flatnonzero(descents)
        if not active.size:
            return idx
        letters = store.lowest_bit[descents[active]]
        idx[active] = store.right_mul[letters, idx[active]]


# ---------------------------------------------------------------------------
# Checks by enumeration
# ---------------------------------------------------------------------------

def check_parabolic_intersection(J: SubsetJ, x: Element, K: SubsetJ) -> bool:
    """W_J^x & W_K == W_L, compared as element sets."""
    home = x.home
    store = home.element_store()
    L = parabolic_intersection(J, x, K)
    inside = parabolic_elements(home, J).indices
    conjugated = store.conjugate_indices_by(x, inside)
    both = np.intersect1d(conjugated, parabolic_elements(home, K).indices)
    return np.array_equal(both, parabolic_elements(home, L).indices)


def check_coset_factorization(J: SubsetJ, x: Element, s: int) -> bool:
    """For J^x = K with x in X_J and s a left descent of x, x = d * y reduced with
    d = w_J w_L, L = J + {s}, and J^d a subset of S."""
    home = x.home
    if conjugate_subset(J, x) is None or descent_mask(x) & J.mask or not descent_mask(x) >> s & 1:
        raise ParabolicError('factorisation needs x in X_J with J^x simple and s a descent of x')
    L = J | SubsetJ.of(home.rank, [s])
    d = longest_element(home, J) * longest_element(home, L)
    y = d.inverse() * x
    return (
        length(x) == length(d) + length(y)
        and conjugate_subset(J, d) is not None
        and conjugate_subset(J, d).issubset(L)
    )


def lengths_never_drop(home: CoxeterSystem, J: SubsetJ) -> bool:
    """l(w^x) >= l(w) for all w in W_J and x in X_J."""
    store = home.element_store()
    inside = parabolic_elements(home, J).indices
    reps = min_coset_reps(home, J).indices
    for w in inside:
        conj = store.conjugate_indices(int(w), reps)
        if (store.lengths[conj] < store.lengths[w]).any():
            return False
    return True
