from __future__ import annotations

import pytest

from shellkit.core import Mode
from shellkit.generators import (
    ChessboardShape, GeneratorError, K4_EDGES, complete_graph, gen_chessboard, gen_m2m,
    gen_partition_matroid, gen_spanning_trees, parse_edge_list, partition_blocks,
    rook_placements, spanning_trees,
)


def test_m2m():
    assert gen_m2m(3).as_lists() == [["1", "2"], ["1", "3"], ["2", "3"]]
    assert gen_m2m(4).n == 6
    assert gen_m2m(6).n == 15
    with pytest.raises(GeneratorError):
        gen_m2m(2)


def test_partition_matroid():
    assert gen_partition_matroid(partition_blocks([3, 3, 2])).n == 18
    assert gen_partition_matroid(partition_blocks([2, 2, 2, 2])).n == 16
    single = gen_partition_matroid([["a"]])
    assert single.as_lists() == [["a"]]
    with pytest.raises(GeneratorError):
        gen_partition_matroid([["a", "b"], ["b", "c"]])
    with pytest.raises(GeneratorError):
        partition_blocks([2, 0])


def test_partition_order_lexicographic():
    fam = gen_partition_matroid(partition_blocks([2, 2]))
    assert [sorted(f) for f in fam.as_lists()] == [["1", "3"], ["1", "4"], ["2", "3"], ["2", "4"]]


def test_spanning_trees():
    k4 = gen_spanning_trees(K4_EDGES)
    assert k4.n == 16 and all(len(f) == 3 for f in k4.as_lists())
    assert gen_spanning_trees(complete_graph(3)).n == 3
    assert gen_spanning_trees([("a", "b"), ("b", "c")]).n == 1
    with pytest.raises(GeneratorError):
        gen_spanning_trees([("a", "b"), ("c", "d")])
    with pytest.raises(GeneratorError):
        gen_spanning_trees([("a", "a")])


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_cayley(m):
    # K5 has 125 trees, more than a family may hold, so count the raw lists
    assert len(spanning_trees(complete_graph(m))) == m ** (m - 2)
    if m ** (m - 2) <= 64:
        assert gen_spanning_trees(complete_graph(m)).n == m ** (m - 2)


def test_parse_edge_list():
    assert parse_edge_list("# K3\n1 2\n2 3\n\n1 3\n") == [("1", "2"), ("2", "3"), ("1", "3")]
    with pytest.raises(GeneratorError):
        parse_edge_list("1 2 3\n")


@pytest.mark.parametrize("shape,n", [
    ((4, 3, 2, 1), 14), ((4, 4, 4), 24), ((3, 3, 2, 2, 1), 20), ((3, 2, 2, 2, 1), 16),
    ((1,), 1),
])
def test_chessboard_counts(shape, n):
    fam = gen_chessboard(shape)
    assert fam.n == n
    assert fam.mode == Mode.SHELLING


def test_cb1():
    assert gen_chessboard([1]).as_lists() == [["r1c1"]]


def test_chessboard_not_pure():
    sizes = {len(f) for f in gen_chessboard([4, 3, 2, 1]).as_lists()}
    assert len(sizes) > 1


@pytest.mark.parametrize("shape", [(4, 3, 2, 1), (3, 3, 2, 2, 1), (4, 4, 2, 2), (2, 1)])
def test_rook_placements_maximal(shape):
    sh = ChessboardShape(shape)
    for pl in rook_placements(sh):
        rows = [r for r, _ in pl]
        cols = [c for _, c in pl]
        assert len(set(rows)) == len(rows) and len(set(cols)) == len(cols)
        for r, c in sh.squares():
            if (r, c) not in pl:
                assert r in rows or c in cols


def test_shape_validation():
    with pytest.raises(GeneratorError):
        ChessboardShape((2, 3))
    with pytest.raises(GeneratorError):
        ChessboardShape((2, 0))
    with pytest.raises(GeneratorError):
        ChessboardShape(())
