"""Enumerating and counting full words through a PSS-poset.

Full words are the admissible chains that climb from level 0 to level
``n - 1``.  Whether ``(A, b)`` may follow depends only on the setment ``A``
and the letter ``b``, so counting runs as a DP over setments: ``T(S)`` is
the number of words with support ``S``, and ``T(S | b)`` collects ``T(S)``
for every PSS ``(S, b)``.  Only two levels are alive at any time.
"""
from __future__ import annotations

import os
import shutil
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from . import _backend
from .core import full_mask, indices_of
from .shelling import PssRowFamily

SPILL_ENV = "SHELLKIT_LEVEL_SPILL_DIR"
DEFAULT_SPILL_THRESHOLD = 50_000_000


@dataclass(frozen=True)
class DfsItem:
    setment: int
    suffix: int
    tail: tuple[int, ...] = ()


@dataclass
class LevelMap:
    level: int
    entries: dict[tuple[int, int], int] = field(default_factory=dict)


@dataclass
class RisingResult:
    total: int
    by_last: dict[int, int]
    max_partial_length: int
    level_sizes: list[int]


# -- depth-first enumeration -----------------------------------------------

def _initial_items(p: PssRowFamily, member) -> list[DfsItem]:
    full = full_mask(p.n)
    return [DfsItem(full & ~(1 << (k - 1)), k) for k in range(1, p.n + 1)
            if member(full & ~(1 << (k - 1)), k)]


def _dfs(start: DfsItem, member, lexicographic: bool) -> Iterator[list[int]]:
    stack = [start]
    while stack:
        item = stack.pop()
        word_tail = (item.suffix,) + item.tail
        if not item.setment:
            yield list(word_tail)
            continue
        letters = indices_of(item.setment)
        if lexicographic:
            letters.reverse()  # smallest letter ends up on top
        for a in letters:
            rest = item.setment & ~(1 << (a - 1))
            if member(rest, a):
                stack.append(DfsItem(rest, a, word_tail))


def enumerate_full_words(p: PssRowFamily, limit: Optional[int] = None,
                         order: str = "lexicographic",
                         threads: int = 1) -> Iterator[list[int]]:
    """Yield every full word once, ``limit`` words at most.

    The search starts from the top level and peels off one suffix at a
    time.  In ``lexicographic`` order the words come out sorted by their
    reversal; with ``threads > 1`` the initial stack is split into one
    subtree per top element and results are concatenated in that order,
    so output does not depend on the thread count.
    """
    if order not in ("lexicographic", "arbitrary"):
        raise ValueError(f"unknown order {order!r}")
    member = p.predicate()
    starts = _initial_items(p, member)
    lex = order == "lexicographic"
    if limit is not None and limit <= 0:
        return
    if threads <= 1:
        emitted = 0
        for start in starts:
            for w in _dfs(start, member, lex):
                yield w
                emitted += 1
                if limit is not None and emitted >= limit:
                    return
        return

    def run(start: DfsItem) -> list[list[int]]:
        out = []
        for w in _dfs(start, member, lex):
            out.append(w)
            if limit is not None and len(out) >= limit:
                break
        return out

    emitted = 0
    with ThreadPoolExecutor(threads) as pool:
        for words in pool.map(run, starts):
            for w in words:
                yield w
                emitted += 1
                if limit is not None and emitted >= limit:
                    return


# -- level DP ----------------------------------------------------------------

class _Spiller:
    def __init__(self, directory: Optional[str], threshold: int):
        directory = directory or os.environ.get(SPILL_ENV)
        self.root = tempfile.mkdtemp(prefix="levels-", dir=directory) if directory else None
        self.threshold = threshold

    def __call__(self, backend, level, tag: str):
        if self.root is None or backend.size(level) <= self.threshold:
            return level
        return backend.spill(level, self.root, tag)

    def close(self):
        if self.root is not None:
            shutil.rmtree(self.root, ignore_errors=True)


def rising_dp(p: PssRowFamily, *, backend=None, threads: int = 1,
              spill_dir: Optional[str] = None,
              spill_threshold: int = DEFAULT_SPILL_THRESHOLD,
              on_level: Optional[Callable[[str, int, int], None]] = None) -> RisingResult:
    """Count full words, split by last letter, and find the longest word."""
    be = _backend.get(backend) if backend is None or isinstance(backend, str) else backend
    n = p.n
    tables = be.pack(p)
    spiller = _Spiller(spill_dir, spill_threshold)
    sizes = [1]
    try:
        level = be.initial(0, n)
        longest = 0
        for s in range(1, n):
            level = be.expand(level, tables, n, True, threads)
            size = be.size(level)
            if on_level:
                on_level("up", s, size)
            if not size:
                break
            sizes.append(size)
            longest = s
            level = spiller(be, level, f"up{s}")
        by_last = dict.fromkeys(range(1, n + 1), 0)
        if longest == n - 1:
            full = full_mask(n)
            for s_mask, cnt in be.items(level):
                k = indices_of(full & ~s_mask)[0]
                if tables.contains(s_mask, k):
                    by_last[k] = cnt
            if any(by_last.values()):
                longest = n
    finally:
        spiller.close()
    return RisingResult(sum(by_last.values()), by_last, longest, sizes)


def falling_dp(p: PssRowFamily, *, backend=None, threads: int = 1,
               spill_dir: Optional[str] = None,
               spill_threshold: int = DEFAULT_SPILL_THRESHOLD,
               on_level: Optional[Callable[[str, int, int], None]] = None) -> dict[int, int]:
    """Full words split by first letter, counting down from the top level."""
    be = _backend.get(backend) if backend is None or isinstance(backend, str) else backend
    n = p.n
    tables = be.pack(p)
    spiller = _Spiller(spill_dir, spill_threshold)
    by_first = dict.fromkeys(range(1, n + 1), 0)
    try:
        level = be.initial(full_mask(n), n)
        for s in range(n - 1, 0, -1):
            level = be.expand(level, tables, n, False, threads)
            size = be.size(level)
            if on_level:
                on_level("down", s, size)
            if not size:
                return by_first
            level = spiller(be, level, f"down{s}")
        for s_mask, cnt in be.items(level):
            b = indices_of(s_mask)[0]
            if tables.contains(0, b):
                by_first[b] = cnt
    finally:
        spiller.close()
    return by_first


def count_full_words(p: PssRowFamily, **kw) -> int:
    return rising_dp(p, **kw).total


def count_by_last_letter(p: PssRowFamily, **kw) -> dict[int, int]:
    return rising_dp(p, **kw).by_last


def count_by_first_letter(p: PssRowFamily, **kw) -> dict[int, int]:
    return falling_dp(p, **kw)


def max_partial_length(p: PssRowFamily, **kw) -> int:
    """Length of the longest word; 0 if no letter may start a word."""
    return rising_dp(p, **kw).max_partial_length


def level_maps(p: PssRowFamily) -> list[LevelMap]:
    """The rising DP keyed by PSS ``(A, b)``: each key carries the number
    of words with support ``A`` that may continue with ``b``.

    Plain Python, one map per level; meant for inspecting small instances.
    """
    member = p.predicate()
    n = p.n
    counts = {0: 1}
    maps = []
    for s in range(n):
        lm = LevelMap(s)
        nxt: dict[int, int] = {}
        for a, cnt in counts.items():
            for b in range(1, n + 1):
                bit = 1 << (b - 1)
                if not a & bit and member(a, b):
                    lm.entries[(a, b)] = cnt
                    nxt[a | bit] = nxt.get(a | bit, 0) + cnt
        if not lm.entries:
            break
        maps.append(lm)
        counts = nxt
    return maps
