"""Level expansion through the Cython kernel; levels are numpy arrays."""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _kernel

NAME = "compiled"


def limbs_for(n: int) -> int:
    """64-bit limbs needed to hold any count up to ``n!``."""
    return max(1, -(-math.factorial(max(n, 1)).bit_length() // 64))


def pack(p) -> "_kernel.Tables":
    row_start = [0]
    zeros, ones, bub_start, bubbles = [], [], [0], []
    for rs in p.rows:
        for r in rs:
            zeros.append(r.zeros)
            ones.append(r.ones)
            bubbles.extend(r.bubbles)
            bub_start.append(len(bubbles))
        row_start.append(len(zeros))
    return _kernel.Tables(
        p.n,
        np.array(row_start, dtype=np.int64),
        np.array(zeros, dtype=np.uint64),
        np.array(ones, dtype=np.uint64),
        np.array(bub_start, dtype=np.int64),
        np.array(bubbles, dtype=np.uint64),
    )


def initial(mask: int, n: int):
    counts = np.zeros((1, limbs_for(n)), dtype=np.uint64)
    counts[0, 0] = 1
    return np.array([mask], dtype=np.uint64), counts


def expand(level, t, n: int, up: bool, threads: int = 1):
    masks, counts = level
    limbs = counts.shape[1]
    if len(masks) == 0:
        return masks, counts
    if threads <= 1 or len(masks) < 2 * threads:
        out = _kernel.expand(masks, counts, t, n, up)
    else:
        bounds = np.linspace(0, len(masks), threads + 1).astype(np.int64)
        chunks = [(np.ascontiguousarray(masks[a:b]), np.ascontiguousarray(counts[a:b]))
                  for a, b in zip(bounds[:-1], bounds[1:]) if b > a]
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(lambda c: _kernel.expand(c[0], c[1], t, n, up), chunks))
        out = _kernel.accumulate(np.concatenate([m for m, _ in parts]),
                                 np.ascontiguousarray(np.concatenate([c for _, c in parts])))
    if out[1].shape[1] != limbs:
        out = (out[0], np.zeros((0, limbs), dtype=np.uint64))
    return out


def size(level) -> int:
    return len(level[0])


def _to_int(row) -> int:
    v = 0
    for j in range(len(row) - 1, -1, -1):
        v = (v << 64) | int(row[j])
    return v


def items(level, limit: int | None = None):
    masks, counts = level
    stop = len(masks) if limit is None else min(limit, len(masks))
    for i in range(stop):
        yield int(masks[i]), _to_int(counts[i])


def spill(level, directory, tag):
    """Move a level to ``.npy`` files in ``directory`` and memory-map it back."""
    os.makedirs(directory, exist_ok=True)
    out = []
    for name, arr in zip(("masks", "counts"), level):
        path = os.path.join(directory, f"{tag}-{name}.npy")
        np.save(path, arr)
        out.append(np.load(path, mmap_mode="r"))
    return tuple(out)
