"""Pure-Python level expansion; levels are ``{setment: count}`` dicts."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from itertools import islice

NAME = "python"


class Tables:
    def __init__(self, n: int, raw: list[list[tuple[int, int, tuple[int, ...]]]]):
        self.n = n
        self.raw = raw

    def contains(self, a: int, k: int) -> bool:
        for z, o, bs in self.raw[k - 1]:
            if a & z or a & o != o:
                continue
            for b in bs:
                if not a & b:
                    break
            else:
                return True
        return False


def pack(p) -> Tables:
    raw = [[(r.zeros, r.ones, r.bubbles) for r in rs] for rs in p.rows]
    return Tables(p.n, raw)


def initial(mask: int, n: int) -> dict[int, int]:
    return {mask: 1}


def _expand_items(items, t: Tables, n: int, up: bool) -> dict[int, int]:
    raw = t.raw
    out: dict[int, int] = {}
    get = out.get
    for s, cnt in items:
        for b in range(n):
            bit = 1 << b
            if up:
                if s & bit:
                    continue
                probe, target = s, s | bit
            else:
                if not s & bit:
                    continue
                probe = target = s & ~bit
            for z, o, bs in raw[b]:
                if probe & z or probe & o != o:
                    continue
                for bb in bs:
                    if not probe & bb:
                        break
                else:
                    out[target] = get(target, 0) + cnt
                    break
    return out


def expand(level: dict[int, int], t: Tables, n: int, up: bool,
           threads: int = 1) -> dict[int, int]:
    if threads <= 1 or len(level) < 2 * threads:
        out = _expand_items(level.items(), t, n, up)
    else:
        items = list(level.items())
        step = -(-len(items) // threads)
        chunks = [items[i:i + step] for i in range(0, len(items), step)]
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(lambda c: _expand_items(c, t, n, up), chunks))
        out = {}
        for part in parts:
            for key, cnt in part.items():
                out[key] = out.get(key, 0) + cnt
    return dict(sorted(out.items()))


def size(level: dict[int, int]) -> int:
    return len(level)


def items(level: dict[int, int], limit: int | None = None):
    return islice(level.items(), limit)


def spill(level, directory, tag):
    return level
