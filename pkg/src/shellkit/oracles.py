"""Brute-force references, independent of the PSS machinery.

Used by the test-suite and by ``--oracle`` on the command line.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Iterator, Sequence

from .core import FacetFamily, Poset, indices_of, is_covered_by


def is_partial_shelling(fam: FacetFamily, word: Sequence[int]) -> bool:
    """Check the shelling condition verbatim on a facet index sequence."""
    gs = [fam.facet(i) for i in word]
    for k in range(1, len(gs)):
        gk = gs[k]
        for i in range(k):
            if not any(gs[i] & gk & ~(gs[j] & gk) == 0 and is_covered_by(gs[j] & gk, gk)
                       for j in range(k)):
                return False
    return True


def is_partial_peeling(fam: FacetFamily, word: Sequence[int]) -> bool:
    union = 0
    for pos, i in enumerate(word):
        f = fam.facet(i)
        if pos and not is_covered_by(union & f, f):
            return False
        union |= f
    return True


def brute_force_words(fam: FacetFamily, peeling: bool = False) -> Iterator[tuple[int, ...]]:
    """Permutations of ``1..n`` passing the shelling (or peeling) test."""
    test = is_partial_peeling if peeling else is_partial_shelling
    for perm in permutations(range(1, fam.n + 1)):
        if test(fam, perm):
            yield perm


def pss_condition(fam: FacetFamily, a: int, k: int) -> bool:
    """Whether every ``i`` in ``a`` has some ``j`` in ``a`` with
    ``F_i ∩ F_k ⊆ F_j ∩ F_k ≺ F_k``."""
    fk = fam.facet(k)
    members = indices_of(a)
    for i in members:
        ik = fam.facet(i) & fk
        if not any(ik & ~(fam.facet(j) & fk) == 0 and is_covered_by(fam.facet(j) & fk, fk)
                   for j in members):
            return False
    return True


def peeling_pss_condition(fam: FacetFamily, a: int, k: int) -> bool:
    if not a:
        return True
    union = 0
    for i in indices_of(a):
        union |= fam.facet(i)
    f = fam.facet(k)
    return is_covered_by(union & f, f)


def linear_extensions_by_ideals(p: Poset) -> int:
    """Count linear extensions with a DP over order ideals."""
    down = p.down_masks()
    n = len(p.elements)
    strict = [d & ~(1 << v) for v, d in enumerate(down)]

    @lru_cache(maxsize=None)
    def count(ideal: int) -> int:
        if ideal == (1 << n) - 1:
            return 1
        total = 0
        for v in range(n):
            if not ideal >> v & 1 and strict[v] & ~ideal == 0:
                total += count(ideal | 1 << v)
        return total

    return count(0)


def linear_extensions_brute_force(p: Poset) -> int:
    total = 0
    for perm in permutations(p.elements):
        where = {e: i for i, e in enumerate(perm)}
        if all(where[lo] < where[hi] for lo, hi in p.covers):
            total += 1
    return total
