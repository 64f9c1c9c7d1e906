"""Row counts of the compressed PSS-posets for the benchmark families.

Compression is not canonical, so these pin the current splitting strategy
rather than a correctness property.  The per-suffix row holding only the
empty setment is left out of the count.
"""
from __future__ import annotations

import pytest

from shellkit.generators import (
    K4_EDGES, gen_chessboard, gen_m2m, gen_partition_matroid, gen_spanning_trees,
    partition_blocks,
)
from shellkit.shelling import pss_rows

ROWS = [
    (lambda: gen_m2m(6), 15),
    (lambda: gen_partition_matroid(partition_blocks([3, 3, 2])), 90),
    (lambda: gen_partition_matroid(partition_blocks([2, 2, 2, 2])), 208),
    (lambda: gen_spanning_trees(K4_EDGES), 80),
    (lambda: gen_chessboard([4, 4, 4]), 120),
    (lambda: gen_chessboard([3, 2, 2, 2, 1]), 34),
    (lambda: gen_chessboard([3, 3, 2, 2, 1]), 72),
    (lambda: gen_chessboard([4, 3, 2, 1]), 43),
]


@pytest.mark.parametrize("make,expected", ROWS)
def test_row_counts(make, expected):
    p = pss_rows(make())
    rows = [r for k in range(1, p.n + 1) for r in p.rows_for(k) if r.zeros != r.universe]
    assert len(rows) == expected
