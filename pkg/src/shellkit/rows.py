"""Wildcard (012e) rows and a dual Horn model solver built on them.

A row over a variable universe ``E`` fixes some variables to 0, some to 1,
leaves some free ("2") and groups others into e-bubbles, each of which
demands at least one 1 among its variables.  All sets are bitmasks.
"""
from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .core import indices_of, popcount


@dataclass(frozen=True)
class Row012e:
    universe: int
    zeros: int
    ones: int
    twos: int
    bubbles: tuple[int, ...] = ()

    def __post_init__(self):
        parts = [self.zeros, self.ones, self.twos, *self.bubbles]
        union = 0
        for p in parts:
            if union & p:
                raise ValueError("row parts overlap")
            union |= p
        if union != self.universe:
            raise ValueError("row parts do not cover the universe")
        if any(popcount(b) < 2 for b in self.bubbles):
            raise ValueError("e-bubbles need at least two variables")

    @classmethod
    def all_twos(cls, universe: int) -> "Row012e":
        return cls(universe, 0, 0, universe)

    def dump(self, width: Optional[int] = None) -> str:
        """One character per variable: ``0 1 2``, bubble letters, ``-`` outside."""
        width = width or self.universe.bit_length()
        chars = []
        for v in range(width):
            bit = 1 << v
            if self.zeros & bit:
                chars.append("0")
            elif self.ones & bit:
                chars.append("1")
            elif self.twos & bit:
                chars.append("2")
            else:
                for letter, b in zip(string.ascii_lowercase, self.bubbles):
                    if b & bit:
                        chars.append(letter)
                        break
                else:
                    chars.append("-")
        return "".join(chars)


@dataclass(frozen=True)
class Clause:
    """``¬x_negated ∨ ⋁ positives``; ``negated`` is a 1-based variable or None."""

    negated: Optional[int]
    positives: int

    def __post_init__(self):
        if self.negated is None and not self.positives:
            raise ValueError("empty clause")

    def satisfied_by(self, a: int) -> bool:
        if self.negated is not None and not a >> (self.negated - 1) & 1:
            return True
        return bool(a & self.positives)


@dataclass(frozen=True)
class DualHornFormula:
    universe: int
    forced_zero: int = 0
    clauses: tuple[Clause, ...] = ()

    def __post_init__(self):
        if self.forced_zero & ~self.universe:
            raise ValueError("forced-zero variable outside universe")
        for c in self.clauses:
            mentioned = c.positives
            if c.negated is not None:
                mentioned |= 1 << (c.negated - 1)
            if mentioned & ~self.universe:
                raise ValueError("clause variable outside universe")

    def satisfied_by(self, a: int) -> bool:
        return not a & self.forced_zero and all(c.satisfied_by(a) for c in self.clauses)


def row_contains(r: Row012e, a: int) -> bool:
    if a & r.zeros or a & r.ones != r.ones:
        return False
    return all(a & b for b in r.bubbles)


def row_cardinality(r: Row012e) -> int:
    size = 1 << popcount(r.twos)
    for b in r.bubbles:
        size *= (1 << popcount(b)) - 1
    return size


def rows_disjoint(r: Row012e, s: Row012e) -> bool:
    """Symbolic disjointness of two rows over the same universe."""
    zeros = r.zeros | s.zeros
    if zeros & (r.ones | s.ones):
        return True
    return any(b & ~zeros == 0 for b in r.bubbles + s.bubbles)


def enumerate_row(r: Row012e) -> Iterator[int]:
    """Every member of ``r`` exactly once."""
    free = indices_of(r.twos)
    bubbles = [indices_of(b) for b in r.bubbles]

    def subsets(vs: Sequence[int], nonempty: bool) -> Iterator[int]:
        for bits in range(1 if nonempty else 0, 1 << len(vs)):
            m = 0
            for j, v in enumerate(vs):
                if bits >> j & 1:
                    m |= 1 << (v - 1)
            yield m

    def rec(i: int, acc: int) -> Iterator[int]:
        if i == len(bubbles):
            for m in subsets(free, False):
                yield acc | m
            return
        for m in subsets(bubbles[i], True):
            yield from rec(i + 1, acc | m)

    yield from rec(0, r.ones)


def _make_row(universe: int, zeros: int, ones: int, twos: int,
              bubbles: Iterable[int]) -> Optional[Row012e]:
    """Build a normalized row; None when a bubble is fully zeroed."""
    kept = []
    for b in bubbles:
        if b & ones:
            twos |= b & ~ones & ~zeros
            continue
        b &= ~zeros
        if not b:
            return None
        if popcount(b) == 1:
            ones |= b
        else:
            kept.append(b)
    return Row012e(universe, zeros, ones, twos, tuple(kept))


def _at_least_one(r: Row012e, q: int) -> list[Row012e]:
    """Disjoint rows covering the members of ``r`` that meet ``q``.

    ``q`` must avoid ``zeros | ones`` and contain no bubble of ``r``.
    Groups are ``q ∩ twos`` and ``q ∩ bubble`` per touched bubble; the j-th
    output row zeroes groups before j and demands a 1 in group j.
    """
    groups = []
    if q & r.twos:
        groups.append((q & r.twos, None))
    for idx, b in enumerate(r.bubbles):
        if q & b:
            groups.append((q & b, idx))
    out = []
    zeroed = 0
    for g, idx in groups:
        bubbles = list(r.bubbles)
        twos = r.twos & ~zeroed
        if idx is None:
            twos &= ~g
        else:
            # bubble idx is satisfied through g; the rest of it is free
            twos |= bubbles[idx] & ~g
            bubbles[idx] = 0
        bubbles = [b & ~zeroed for b in bubbles if b] + [g]
        # a group of one variable becomes a one via normalization
        row = _make_row(r.universe, r.zeros | zeroed, r.ones, twos, bubbles)
        if row is not None:
            out.append(row)
        zeroed |= g
    return out


def _zero_out(r: Row012e, q: int) -> Optional[Row012e]:
    """Restrict a row to members avoiding ``q``; ``q`` must avoid ``ones``."""
    return _make_row(r.universe, r.zeros | q, r.ones, r.twos & ~q,
                     [b & ~q for b in r.bubbles])


def _impose_on_row(r: Row012e, c: Clause) -> list[Row012e]:
    neg = 0 if c.negated is None else 1 << (c.negated - 1)
    if c.positives & r.ones or neg & r.zeros or neg & c.positives:
        return [r]
    q = c.positives & ~r.zeros
    if any(b & ~q == 0 for b in r.bubbles):
        return [r]
    # members meeting q keep x_neg as it was; the rest need x_neg = 0
    out = _at_least_one(r, q) if q else []
    if neg and not neg & r.ones:
        rest = _zero_out(r, q | neg)
        if rest is not None:
            out.append(rest)
    return out


def impose_clause(rows: Sequence[Row012e], c: Clause) -> list[Row012e]:
    """Restrict a disjoint union of rows to the members satisfying ``c``."""
    out = []
    for r in rows:
        out.extend(_impose_on_row(r, c))
    return out


def solve_dual_horn(f: DualHornFormula) -> list[Row012e]:
    """``Mod(f)`` as pairwise disjoint, normalized 012e-rows."""
    rows = [Row012e(f.universe, f.forced_zero, 0, f.universe & ~f.forced_zero)]
    for c in sorted(f.clauses, key=lambda c: popcount(c.positives)):
        rows = impose_clause(rows, c)
        if not rows:
            break
    return rows


def models_brute_force(f: DualHornFormula) -> list[int]:
    """All models by testing every subset of the universe."""
    vs = indices_of(f.universe)
    out = []
    for bits in range(1 << len(vs)):
        a = 0
        for j, v in enumerate(vs):
            if bits >> j & 1:
                a |= 1 << (v - 1)
        if f.satisfied_by(a):
            out.append(a)
    return out
