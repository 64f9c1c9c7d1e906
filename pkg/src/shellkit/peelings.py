"""PSS-posets for peeling languages of arbitrary set families.

A peeling orders the sets so that each one meets the union of its
predecessors in all but exactly one of its elements.  For a suffix ``k``
and a vertex ``v`` of ``F_k``, the setments that leave exactly ``v``
uncovered are the set coverings of ``F_k - {v}`` by sets avoiding ``v``;
they are solved as pure-positive clauses with the avoiding sets forced out.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .core import FacetFamily, Mode, Poset, full_mask, indices_of, poset_to_ideals
from .rows import Clause, DualHornFormula, Row012e, solve_dual_horn
from .search import count_full_words, enumerate_full_words
from .shelling import PssRowFamily


@dataclass(frozen=True)
class CoveringInstance:
    target: int  # vertex mask X = F_k - {v}
    allowed: int  # index mask of sets avoiding v
    per_vertex: dict[int, int]  # vertex id (0-based) -> index mask of allowed sets containing it

    def feasible(self) -> bool:
        return all(self.per_vertex.values())


def covering_instance(fam: FacetFamily, k: int, v: int) -> CoveringInstance:
    """The (k, v) instance; ``v`` is a 0-based vertex id inside ``F_k``."""
    fk = fam.facet(k)
    target = fk & ~(1 << v)
    allowed = 0
    for i, f in enumerate(fam.facets, 1):
        if i != k and not f >> v & 1:
            allowed |= 1 << (i - 1)
    per_vertex = {}
    for x in indices_of(target):
        per_vertex[x - 1] = sum(1 << (i - 1) for i in indices_of(allowed)
                                if fam.facet(i) >> (x - 1) & 1)
    return CoveringInstance(target, allowed, per_vertex)


def covering_formula(fam: FacetFamily, k: int, v: int) -> Optional[DualHornFormula]:
    inst = covering_instance(fam, k, v)
    if not inst.feasible():
        return None
    universe = full_mask(fam.n) & ~(1 << (k - 1))
    clauses = tuple(Clause(None, m) for m in dict.fromkeys(inst.per_vertex.values()))
    return DualHornFormula(universe, universe & ~inst.allowed, clauses)


def peeling_pss_rows(fam: FacetFamily) -> PssRowFamily:
    n = fam.n
    rows = []
    for k in range(1, n + 1):
        universe = full_mask(n) & ~(1 << (k - 1))
        rk: list[Row012e] = []
        for v in indices_of(fam.facet(k)):
            f = covering_formula(fam, k, v - 1)
            if f is not None:
                rk.extend(solve_dual_horn(f))
        if len(indices_of(fam.facet(k))) >= 2:
            # every set may open a peeling; only |F_k| = 1 produces ∅ above
            rk.append(Row012e(universe, universe, 0, 0))
        rows.append(tuple(rk))
    return PssRowFamily(n, tuple(rows))


def _peeling_family(fam: FacetFamily) -> FacetFamily:
    return fam if fam.mode == Mode.PEELING else fam.with_mode(Mode.PEELING)


def count_peelings(fam: FacetFamily, **kw) -> int:
    return count_full_words(peeling_pss_rows(_peeling_family(fam)), **kw)


def enumerate_peelings(fam: FacetFamily, limit: Optional[int] = None,
                       **kw) -> Iterator[list[int]]:
    return enumerate_full_words(peeling_pss_rows(_peeling_family(fam)), limit, **kw)


def count_linear_extensions(p: Poset, **kw) -> int:
    return count_peelings(poset_to_ideals(p), **kw)
