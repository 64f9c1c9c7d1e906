from __future__ import annotations

import json

import pytest
from hypothesis import given, settings

from shellkit import oracles
from shellkit.core import FacetFamily, Mode, full_mask, indices_of, mask_of
from shellkit.generators import gen_chessboard, gen_m2m, gen_spanning_trees, K4_EDGES
from shellkit.rows import Clause, DualHornFormula, row_cardinality
from shellkit.shelling import (
    CopHooliganTable, SuffixClass, build_formula, classify, detect_type1, detect_type2,
    detect_type3, failure_report, is_pss, pss_rows, render_table,
)

from .strategies import any_shelling_family

SINGLE = FacetFamily.from_sets([["x"]], Mode.SHELLING)


def _subsets(mask: int):
    a = mask
    while True:
        yield a
        if a == 0:
            return
        a = (a - 1) & mask


def test_classify_toy(toy):
    t = classify(toy)
    assert indices_of(t.cops(4)) == [3]
    assert t[4].policeable == {}
    assert indices_of(t[4].non_policeable) == [1, 2]
    assert t.cops(3) == 0
    assert indices_of(t[3].non_policeable) == [1, 2, 4]
    assert indices_of(t.cops(1)) == [2, 3, 4]
    # F4 ∩ F2 = {c,f} is policed by cop 1 only
    assert t[2].policeable == {4: mask_of([1])}


def test_classify_single():
    t = classify(SINGLE)
    assert t[1] == SuffixClass(0, {}, 0)


def test_formula_from_table():
    n, k = 9, 9
    per = [SuffixClass(0, {}, 0)] * 8 + [SuffixClass(
        cops=mask_of([3, 5, 6, 7]),
        policeable={8: mask_of([5]), 4: mask_of([3, 5, 7])},
        non_policeable=mask_of([1, 2]))]
    t = CopHooliganTable(n, (), tuple(per))
    f = build_formula(t, k)
    assert f.universe == mask_of(range(1, 9))
    assert f.forced_zero == mask_of([1, 2])
    assert set(f.clauses) == {Clause(8, mask_of([5])), Clause(4, mask_of([3, 5, 7]))}


def test_formula_all_cops_and_no_cops():
    fam = FacetFamily.from_sets([["a", "b"], ["a", "c"], ["b", "c"]], Mode.SHELLING)
    f = build_formula(classify(fam), 1)
    assert f.clauses == () and f.forced_zero == 0
    disjoint = FacetFamily.from_sets([["a", "b"], ["c", "d"], ["e", "f"]], Mode.SHELLING)
    f = build_formula(classify(disjoint), 2)
    assert f.forced_zero == f.universe == mask_of([1, 3])


def test_pss_toy(toy):
    p = pss_rows(toy)
    assert all(is_pss(p, 0, k) for k in range(1, 5))
    assert not is_pss(p, mask_of([1, 2, 4]), 3)
    assert is_pss(p, mask_of([3]), 4)
    assert not is_pss(p, mask_of([4]), 2)
    assert is_pss(p, mask_of([1, 4]), 2)
    for k in range(1, 5):
        for a in _subsets(full_mask(4) & ~(1 << (k - 1))):
            assert is_pss(p, a, k) == oracles.pss_condition(toy, a, k)


def test_pss_totals_small_instances():
    p = pss_rows(gen_m2m(6))
    assert p.pss_total() - 15 == 244_800
    p = pss_rows(gen_spanning_trees(K4_EDGES))
    assert p.pss_total() - 16 == 470_400


def test_type_detectors(toy):
    t = classify(toy)
    assert detect_type1(t) is None
    assert detect_type2(t) == (False, {})
    assert not detect_type3(pss_rows(toy))
    board = classify(gen_chessboard([4, 4, 2, 2]))
    assert len(detect_type1(board)) == 4


def test_type2_disjoint_pairs():
    fam = FacetFamily.from_sets([["a", "b"], ["c", "d"], ["e", "f"]], Mode.SHELLING)
    flag, witnesses = detect_type2(classify(fam))
    assert flag and sorted(witnesses) == [1, 2, 3]
    # brute force: no (A,k) with |A| = n-1 satisfies the condition
    full = full_mask(3)
    assert not any(oracles.pss_condition(fam, full & ~(1 << (k - 1)), k) for k in (1, 2, 3))


def test_type3_two_disjoint_facets():
    fam = FacetFamily.from_sets([["a", "b"], ["c", "d"]], Mode.SHELLING)
    assert detect_type3(pss_rows(fam))
    assert not oracles.pss_condition(fam, 0b10, 1)
    assert not oracles.pss_condition(fam, 0b01, 2)


def test_single_facet_detectors():
    t = classify(SINGLE)
    assert detect_type1(t) is None
    assert detect_type2(t) == (False, {})
    assert not detect_type3(pss_rows(SINGLE))


def test_failure_report_json(toy):
    rep = failure_report(classify(toy), pss_rows(toy))
    data = json.loads(json.dumps(rep.to_json()))
    assert data["type1"] is None and data["type2"] is False and data["type3"] is False


def test_render_table(toy):
    text = render_table(toy, classify(toy))
    lines = text.splitlines()
    assert len(lines) >= 4
    assert "!" in text and "[" in text


def test_pss_threads_identical():
    fam = gen_chessboard([3, 2, 2, 1])
    assert pss_rows(fam, threads=1) == pss_rows(fam, threads=3)


@settings(max_examples=150, deadline=None)
@given(any_shelling_family(7))
def test_pss_oracle(fam):
    p = pss_rows(fam)
    for k in range(1, fam.n + 1):
        for a in _subsets(full_mask(fam.n) & ~(1 << (k - 1))):
            assert is_pss(p, a, k) == oracles.pss_condition(fam, a, k)


@settings(max_examples=150, deadline=None)
@given(any_shelling_family(7))
def test_table_invariants(fam):
    t = classify(fam)
    n = fam.n
    for k in range(1, n + 1):
        cls = t[k]
        hooligans = mask_of(cls.policeable) if cls.policeable else 0
        rest = full_mask(n) & ~(1 << (k - 1))
        assert cls.cops | hooligans | cls.non_policeable == rest
        assert not cls.cops & hooligans and not cls.cops & cls.non_policeable
        assert not hooligans & cls.non_policeable
        fk = fam.facet(k)
        for i, cops in cls.policeable.items():
            assert cops and cops & ~cls.cops == 0
            for j in indices_of(cops):
                assert fam.facet(i) & fk & ~(fam.facet(j) & fk) == 0


@settings(max_examples=150, deadline=None)
@given(any_shelling_family(7))
def test_cops_iff_nonempty_setments(fam):
    p = pss_rows(fam)
    t = classify(fam)
    for k in range(1, fam.n + 1):
        nonempty = sum(row_cardinality(r) for r in p.rows_for(k)) > 1
        assert bool(t.cops(k)) == nonempty


@settings(max_examples=100, deadline=None)
@given(any_shelling_family(6))
def test_adding_cops_keeps_pss(fam):
    p = pss_rows(fam)
    t = classify(fam)
    for k in range(1, fam.n + 1):
        rest = full_mask(fam.n) & ~(1 << (k - 1))
        for a in _subsets(rest):
            if not is_pss(p, a, k):
                continue
            for extra in _subsets(t.cops(k) & ~a):
                assert is_pss(p, a | extra, k)


def test_rows_disjoint_per_suffix():
    from itertools import combinations
    from shellkit.rows import enumerate_row
    p = pss_rows(gen_chessboard([3, 2, 1]))
    for k in range(1, p.n + 1):
        rows = p.rows_for(k)
        sets = [set(enumerate_row(r)) for r in rows]
        for i, j in combinations(range(len(rows)), 2):
            assert not sets[i] & sets[j]
