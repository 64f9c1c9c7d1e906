"""Facet families, posets, and the text formats they are read from.

Index subsets of the facet alphabet ``[n] = {1..n}`` are plain ``int``
bitmasks: facet index ``i`` lives at bit ``i - 1``.  Vertex sets inside a
family are bitmasks too, over the interned vertex ids.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_FACETS = 64


class Mode(str, Enum):
    SHELLING = "shelling"
    PEELING = "peeling"


class FacetFileError(ValueError):
    """Base class for malformed or invalid facet/poset input."""


class EmptyFacet(FacetFileError):
    pass


class DuplicateFacet(FacetFileError):
    pass


class ComparableFacets(FacetFileError):
    def __init__(self, i: int, j: int, message: str):
        super().__init__(message)
        self.pair = (i, j)


class TooManyFacets(FacetFileError):
    pass


class PosetError(FacetFileError):
    pass


class CycleDetected(PosetError):
    pass


class UnknownElement(PosetError):
    pass


# -- index subsets ---------------------------------------------------------

def mask_of(indices: Iterable[int]) -> int:
    """Bitmask of 1-based indices."""
    m = 0
    for i in indices:
        if i < 1:
            raise ValueError(f"index {i} is not 1-based")
        m |= 1 << (i - 1)
    return m


def indices_of(mask: int) -> list[int]:
    """Sorted 1-based indices of a bitmask."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def full_mask(n: int) -> int:
    return (1 << n) - 1


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def is_covered_by(x: int, y: int) -> bool:
    """``x ≺ y``: x is a subset of y with exactly one element fewer."""
    return x & ~y == 0 and popcount(y) - popcount(x) == 1


def check_word(word: Sequence[int], n: int) -> None:
    seen = 0
    for a in word:
        if not 1 <= a <= n:
            raise ValueError(f"letter {a} outside [1, {n}]")
        bit = 1 << (a - 1)
        if seen & bit:
            raise ValueError(f"letter {a} repeated in word")
        seen |= bit


# -- facet families ---------------------------------------------------------

@dataclass(frozen=True)
class FacetFamily:
    """Ordered sets ``F_1..F_n`` over interned vertices.

    ``facets[i]`` is the vertex bitmask of ``F_{i+1}``; ``vertex_names[v]`` is
    the token vertex ``v`` was interned from.
    """

    facets: tuple[int, ...]
    mode: Mode
    vertex_names: tuple[str, ...]

    def __post_init__(self):
        _validate(self.facets, self.mode)

    @property
    def n(self) -> int:
        return len(self.facets)

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_names)

    def facet(self, i: int) -> int:
        """Vertex mask of the 1-based facet ``F_i``."""
        return self.facets[i - 1]

    def facet_tokens(self, i: int) -> list[str]:
        m = self.facets[i - 1]
        return [self.vertex_names[v - 1] for v in indices_of(m)]

    def as_lists(self) -> list[list[str]]:
        return [self.facet_tokens(i) for i in range(1, self.n + 1)]

    def with_mode(self, mode: Mode) -> "FacetFamily":
        return FacetFamily(self.facets, Mode(mode), self.vertex_names)

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable[object]],
                  mode: Mode | str = Mode.SHELLING) -> "FacetFamily":
        """Intern tokens in first-appearance order and validate."""
        ids: dict[str, int] = {}
        facets = []
        for s in sets:
            m = 0
            for tok in s:
                tok = str(tok)
                if tok not in ids:
                    ids[tok] = len(ids)
                m |= 1 << ids[tok]
            facets.append(m)
        return cls(tuple(facets), Mode(mode), tuple(ids))


def _validate(facets: Sequence[int], mode: Mode) -> None:
    n = len(facets)
    if n == 0:
        raise FacetFileError("no facets given")
    if n > MAX_FACETS:
        raise TooManyFacets(f"{n} facets given, at most {MAX_FACETS} supported")
    seen: dict[int, int] = {}
    for i, f in enumerate(facets, 1):
        if f == 0:
            raise EmptyFacet(f"facet {i} is empty")
        if f in seen:
            raise DuplicateFacet(f"facets {seen[f]} and {i} are equal")
        seen[f] = i
    if mode == Mode.SHELLING:
        for (i, f), (j, g) in combinations(enumerate(facets, 1), 2):
            if f & g in (f, g):
                small, big = (i, j) if f & g == f else (j, i)
                raise ComparableFacets(
                    small, big, f"facet {small} is contained in facet {big}")


def maximalize(sets: Sequence[Sequence[str]]) -> list[list[str]]:
    """Drop duplicates and every set contained in another, keeping order."""
    frozen = [frozenset(s) for s in sets]
    out, kept = [], []
    for s, fs in zip(sets, frozen):
        if fs in kept or any(fs < t for t in frozen):
            continue
        kept.append(fs)
        out.append(list(s))
    return out


# -- facet file format -----------------------------------------------------

def read_facet_lists(text: str, json_format: bool = False) -> list[list[str]]:
    if json_format:
        data = json.loads(text)
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise FacetFileError("JSON facet file must be an array of arrays")
        return [[str(t) for t in row] for row in data]
    rows = []
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        rows.append(stripped.split())
    return rows


def parse_facets(text: str, mode: Mode | str = Mode.SHELLING, *,
                 json_format: bool = False, maximal: bool = False) -> FacetFamily:
    """Parse a facet file.

    One facet per non-blank line, whitespace-separated vertex tokens; lines
    starting with ``#`` are comments.  With ``json_format`` the text is an
    array of arrays of strings instead.  ``maximal`` reduces the input to
    its inclusion-maximal sets before validation.
    """
    rows = read_facet_lists(text, json_format)
    for i, row in enumerate(rows, 1):
        if len(set(row)) != len(row):
            # repeated tokens inside a line collapse; that is not an error
            rows[i - 1] = list(dict.fromkeys(row))
    if any(not r for r in rows):
        i = next(i for i, r in enumerate(rows, 1) if not r)
        raise EmptyFacet(f"facet {i} is empty")
    if maximal:
        rows = maximalize(rows)
    return FacetFamily.from_sets(rows, mode)


def serialize_facets(fam: FacetFamily) -> str:
    return "".join(" ".join(toks) + "\n" for toks in fam.as_lists())


# -- posets ------------------------------------------------------------------

@dataclass(frozen=True)
class Poset:
    """Finite poset given by its cover pairs ``(lower, upper)``."""

    elements: tuple[str, ...]
    covers: tuple[tuple[str, str], ...] = field(default=())

    def __post_init__(self):
        index = {e: i for i, e in enumerate(self.elements)}
        if len(index) != len(self.elements):
            raise PosetError("repeated element")
        for lo, hi in self.covers:
            for e in (lo, hi):
                if e not in index:
                    raise UnknownElement(f"unknown element {e!r}")
        if self._topological_order() is None:
            raise CycleDetected("cover relation contains a cycle")

    def _topological_order(self) -> list[int] | None:
        n = len(self.elements)
        index = {e: i for i, e in enumerate(self.elements)}
        succ = [[] for _ in range(n)]
        indeg = [0] * n
        for lo, hi in self.covers:
            succ[index[lo]].append(index[hi])
            indeg[index[hi]] += 1
        stack = [i for i in range(n) if indeg[i] == 0]
        order = []
        while stack:
            v = stack.pop()
            order.append(v)
            for w in succ[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    stack.append(w)
        return order if len(order) == n else None

    def down_masks(self) -> list[int]:
        """``p↓`` for each element as a bitmask over element positions."""
        n = len(self.elements)
        index = {e: i for i, e in enumerate(self.elements)}
        preds = [[] for _ in range(n)]
        for lo, hi in self.covers:
            preds[index[hi]].append(index[lo])
        down = [0] * n
        for v in self._topological_order():
            m = 1 << v
            for u in preds[v]:
                m |= down[u]
            down[v] = m
        return down

    def leq(self, a: str, b: str) -> bool:
        index = {e: i for i, e in enumerate(self.elements)}
        return bool(self.down_masks()[index[b]] >> index[a] & 1)


_COVER = re.compile(r"^(\S+)\s*<\s*(\S+)$")


def parse_poset(text: str) -> Poset:
    """Parse ``elements a b c`` followed by ``a < b`` cover statements.

    Statements are separated by newlines or ``;``.  Without an ``elements``
    statement the elements are taken from the covers in first-appearance
    order.
    """
    elements: list[str] | None = None
    covers: list[tuple[str, str]] = []
    for line in text.splitlines():
        if line.strip().startswith("#"):
            continue
        for stmt in line.split(";"):
            stmt = stmt.strip()
            if not stmt:
                continue
            toks = stmt.split()
            if toks[0] == "elements":
                if elements is not None:
                    raise PosetError("more than one 'elements' statement")
                elements = toks[1:]
                continue
            m = _COVER.match(stmt)
            if not m:
                raise PosetError(f"cannot parse poset statement {stmt!r}")
            covers.append((m.group(1), m.group(2)))
    if elements is None:
        elements = list(dict.fromkeys(t for c in covers for t in c))
    return transitive_reduction(Poset(tuple(elements), tuple(dict.fromkeys(covers))))


def transitive_reduction(p: Poset) -> Poset:
    """Drop cover pairs implied by a chain of other pairs."""
    index = {e: i for i, e in enumerate(p.elements)}
    down = p.down_masks()
    keep = []
    for lo, hi in p.covers:
        others = [l2 for l2, h2 in p.covers if h2 == hi and l2 != lo]
        if any(down[index[o]] >> index[lo] & 1 for o in others):
            continue
        keep.append((lo, hi))
    return Poset(p.elements, tuple(keep))


def serialize_poset(p: Poset) -> str:
    lines = ["elements " + " ".join(p.elements)]
    lines += [f"{lo} < {hi}" for lo, hi in p.covers]
    return "\n".join(lines) + "\n"


def poset_to_ideals(p: Poset) -> FacetFamily:
    """Principal ideals ``p↓`` of every element, in element order, peeling-mode.

    Vertex ``v`` of the result is element ``v`` of the poset.
    """
    return FacetFamily(tuple(p.down_masks()), Mode.PEELING, p.elements)


def iter_words_text(words: Iterable[Sequence[int]]) -> Iterator[str]:
    for w in words:
        yield ",".join(map(str, w))
