"""Benchmark families: rank-2 uniform matroids, partition matroids,
graphic matroids, and chessboard complexes."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Sequence

from .core import FacetFamily, Mode


class GeneratorError(ValueError):
    pass


def gen_m2m(m: int) -> FacetFamily:
    """All 2-subsets of ``[m]`` in lexicographic order."""
    if m < 3:
        raise GeneratorError("M(2, m) needs m >= 3")
    return FacetFamily.from_sets(
        [[str(a), str(b)] for a, b in combinations(range(1, m + 1), 2)], Mode.SHELLING)


def partition_blocks(sizes: Sequence[int]) -> list[list[str]]:
    """Blocks ``{1..s1}, {s1+1..s1+s2}, ...`` labelled by consecutive integers."""
    if not sizes or any(s < 1 for s in sizes):
        raise GeneratorError("block sizes must be positive")
    blocks, nxt = [], 1
    for s in sizes:
        blocks.append([str(v) for v in range(nxt, nxt + s)])
        nxt += s
    return blocks


def gen_partition_matroid(blocks: Sequence[Sequence[str]]) -> FacetFamily:
    """Bases of the partition matroid: one element from every block."""
    if not blocks or any(not b for b in blocks):
        raise GeneratorError("blocks must be nonempty")
    seen: set[str] = set()
    for b in blocks:
        if seen & set(b) or len(set(b)) != len(b):
            raise GeneratorError("blocks overlap")
        seen |= set(b)
    return FacetFamily.from_sets([list(t) for t in product(*blocks)], Mode.SHELLING)


K4_EDGES = [(a, b) for a, b in combinations("1234", 2)]


def complete_graph(m: int) -> list[tuple[str, str]]:
    return [(str(a), str(b)) for a, b in combinations(range(1, m + 1), 2)]


def parse_edge_list(text: str) -> list[tuple[str, str]]:
    edges = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        if len(toks) != 2:
            raise GeneratorError(f"edge line needs two vertices: {line!r}")
        edges.append((toks[0], toks[1]))
    return edges


def gen_spanning_trees(edges: Sequence[tuple[str, str]]) -> FacetFamily:
    """Edge sets of all spanning trees, in lexicographic order of edge positions.

    Edges are named ``u-v`` after their endpoints.
    """
    if len(edges) > 16:
        raise GeneratorError("at most 16 edges supported")
    return FacetFamily.from_sets(spanning_trees(edges), Mode.SHELLING)


def spanning_trees(edges: Sequence[tuple[str, str]]) -> list[list[str]]:
    edges = [tuple(e) for e in edges]
    if len(set(frozenset(e) for e in edges)) != len(edges) or any(u == v for u, v in edges):
        raise GeneratorError("graph must be simple")
    vertices = list(dict.fromkeys(v for e in edges for v in e))
    index = {v: i for i, v in enumerate(vertices)}
    parent = list(range(len(vertices)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(index[u])] = find(index[v])
    if len({find(i) for i in range(len(vertices))}) != 1:
        raise GeneratorError("graph is disconnected")
    names = [f"{u}-{v}" for u, v in edges]
    trees = []
    for combo in combinations(range(len(edges)), len(vertices) - 1):
        comp = list(range(len(vertices)))

        def root(x):
            while comp[x] != x:
                x = comp[x]
            return x

        ok = True
        for e in combo:
            u, v = edges[e]
            ru, rv = root(index[u]), root(index[v])
            if ru == rv:
                ok = False
                break
            comp[ru] = rv
        if ok:
            trees.append([names[e] for e in combo])
    return trees


@dataclass(frozen=True)
class ChessboardShape:
    row_lengths: tuple[int, ...]

    def __post_init__(self):
        rl = self.row_lengths
        if not rl or any(x < 1 for x in rl):
            raise GeneratorError("row lengths must be positive")
        if any(a < b for a, b in zip(rl, rl[1:])):
            raise GeneratorError("row lengths must be weakly decreasing")
        if sum(rl) > 64:
            raise GeneratorError("at most 64 squares supported")

    def squares(self) -> list[tuple[int, int]]:
        return [(r, c) for r, length in enumerate(self.row_lengths, 1)
                for c in range(1, length + 1)]


def square_name(r: int, c: int) -> str:
    return f"r{r}c{c}"


def rook_placements(shape: ChessboardShape) -> list[list[tuple[int, int]]]:
    """Inclusion-maximal non-taking rook placements, by backtracking over rows."""
    rows = shape.row_lengths
    out = []

    def rec(r: int, used: int, placed: list[tuple[int, int]]):
        if r == len(rows):
            out.append(list(placed))
            return
        rec(r + 1, used, placed)
        for c in range(1, rows[r] + 1):
            if not used >> c & 1:
                placed.append((r + 1, c))
                rec(r + 1, used | 1 << c, placed)
                placed.pop()

    rec(0, 0, [])

    def maximal(pl):
        used_rows = {r for r, _ in pl}
        used_cols = {c for _, c in pl}
        return not any(r not in used_rows and c not in used_cols for r, c in shape.squares())

    return [pl for pl in out if pl and maximal(pl)]


def gen_chessboard(shape: ChessboardShape | Sequence[int]) -> FacetFamily:
    if not isinstance(shape, ChessboardShape):
        shape = ChessboardShape(tuple(shape))
    placements = sorted(rook_placements(shape))
    return FacetFamily.from_sets(
        [[square_name(r, c) for r, c in pl] for pl in placements], Mode.SHELLING)
