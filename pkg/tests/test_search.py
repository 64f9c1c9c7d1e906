from __future__ import annotations

import os

import pytest
from hypothesis import given, settings

from shellkit import _backend, oracles
from shellkit.core import FacetFamily, Mode, full_mask, indices_of
from shellkit.generators import gen_chessboard, gen_m2m, gen_partition_matroid, partition_blocks
from shellkit.peelings import peeling_pss_rows
from shellkit.search import (
    SPILL_ENV, count_by_first_letter, count_by_last_letter, count_full_words,
    enumerate_full_words, falling_dp, level_maps, max_partial_length, rising_dp,
)
from shellkit.shelling import is_pss, pss_rows

from .strategies import any_shelling_family, peeling_families

BACKENDS = sorted(_backend.BACKENDS)
SINGLE = FacetFamily.from_sets([["x"]], Mode.SHELLING)
DISJOINT = FacetFamily.from_sets([["a", "b"], ["c", "d"]], Mode.SHELLING)


def test_toy(toy):
    p = pss_rows(toy)
    assert list(enumerate_full_words(p)) == [[3, 4, 1, 2]]
    assert count_full_words(p) == 1
    assert count_by_last_letter(p) == {1: 0, 2: 1, 3: 0, 4: 0}
    assert count_by_first_letter(p) == {1: 0, 2: 0, 3: 1, 4: 0}
    assert max_partial_length(p) == 4


def test_four_sets(peel4):
    p = peeling_pss_rows(peel4)
    words = {"".join(map(str, w)) for w in enumerate_full_words(p)}
    assert words == {"3412", "1432", "1342", "3142", "1423", "3421"}
    assert count_by_first_letter(p) == {1: 3, 2: 0, 3: 3, 4: 0}
    assert count_by_last_letter(p) == {1: 1, 2: 4, 3: 1, 4: 0}


def test_single_facet():
    p = pss_rows(SINGLE)
    assert list(enumerate_full_words(p)) == [[1]]
    assert count_full_words(p) == 1
    assert count_by_first_letter(p) == {1: 1}
    assert max_partial_length(p) == 1


def test_type3_instance():
    p = pss_rows(DISJOINT)
    assert count_full_words(p) == 0
    assert count_by_last_letter(p) == {1: 0, 2: 0}
    assert count_by_first_letter(p) == {1: 0, 2: 0}
    assert max_partial_length(p) == 1
    assert list(enumerate_full_words(p)) == []


def test_limit_and_order():
    p = pss_rows(gen_m2m(4))
    words = list(enumerate_full_words(p))
    assert len(words) == 576
    # lexicographic mode sorts by the reversed word
    assert words == sorted(words, key=lambda w: w[::-1])
    assert list(enumerate_full_words(p, limit=10)) == words[:10]
    assert list(enumerate_full_words(p, limit=0)) == []
    arb = list(enumerate_full_words(p, order="arbitrary"))
    assert sorted(arb) == sorted(words)
    with pytest.raises(ValueError):
        list(enumerate_full_words(p, order="random"))


@pytest.mark.parametrize("threads", [2, 4])
def test_enumeration_threads(threads):
    p = pss_rows(gen_chessboard([3, 2, 1]))
    assert list(enumerate_full_words(p, threads=threads)) == list(enumerate_full_words(p))
    assert list(enumerate_full_words(p, limit=7, threads=threads)) == \
        list(enumerate_full_words(p, limit=7))


@settings(max_examples=100, deadline=None)
@given(any_shelling_family(6))
def test_words_match_brute_force(fam):
    words = [tuple(w) for w in enumerate_full_words(pss_rows(fam))]
    assert len(words) == len(set(words))
    assert set(words) == set(oracles.brute_force_words(fam))


@settings(max_examples=100, deadline=None)
@given(any_shelling_family(7))
def test_count_sums(fam):
    p = pss_rows(fam)
    total = count_full_words(p)
    assert total == sum(1 for _ in enumerate_full_words(p))
    assert sum(count_by_first_letter(p).values()) == total
    assert sum(count_by_last_letter(p).values()) == total


@settings(max_examples=100, deadline=None)
@given(any_shelling_family(6))
def test_prefixes_are_partial_shellings(fam):
    p = pss_rows(fam)
    for w in enumerate_full_words(p):
        for m in range(1, len(w) + 1):
            prefix = w[:m]
            assert is_pss(p, sum(1 << (i - 1) for i in prefix[:-1]), prefix[-1])
            assert oracles.is_partial_shelling(fam, prefix)


def _partial_words(fam, peeling=False):
    """Every partial word, by brute-force extension of shorter ones."""
    test = oracles.is_partial_peeling if peeling else oracles.is_partial_shelling
    level = [(i,) for i in range(1, fam.n + 1)]
    out = []
    while level:
        out.append(level)
        level = [w + (b,) for w in level for b in range(1, fam.n + 1)
                 if b not in w and test(fam, w + (b,))]
    return out


@settings(max_examples=100, deadline=None)
@given(any_shelling_family(6))
def test_level_keys_are_supports_with_suffix(fam):
    maps = level_maps(pss_rows(fam))
    brute = _partial_words(fam)
    assert len(maps) == len(brute)
    for lm, words in zip(maps, brute):
        keys = {(sum(1 << (i - 1) for i in w[:-1]), w[-1]) for w in words}
        assert set(lm.entries) == keys
    # the count at (A, b) is the number of partial words with support A
    supports: dict[int, int] = {0: 1}
    for words in brute:
        for w in words:
            a = sum(1 << (i - 1) for i in w)
            supports[a] = supports.get(a, 0) + 1
    for lm in maps:
        for (a, _), cnt in lm.entries.items():
            assert cnt == supports[a]


@settings(max_examples=100, deadline=None)
@given(any_shelling_family(7))
def test_max_partial_length_matches_brute(fam):
    brute = _partial_words(fam)
    assert max_partial_length(pss_rows(fam)) == len(brute)


def test_max_partial_length_cb444():
    assert max_partial_length(pss_rows(gen_chessboard([4, 4, 4]))) == 13


# -- backends ----------------------------------------------------------------------

CASES = [
    lambda: gen_m2m(5),
    lambda: gen_chessboard([4, 3, 2, 1]),
    lambda: gen_partition_matroid(partition_blocks([2, 2, 2])),
    lambda: gen_chessboard([3, 3, 2, 1, 1]),
]


@pytest.mark.parametrize("make", CASES)
def test_backends_agree(make):
    p = pss_rows(make())
    results = {}
    for name in BACKENDS:
        r = rising_dp(p, backend=name)
        results[name] = (r.total, r.by_last, r.max_partial_length, r.level_sizes,
                         falling_dp(p, backend=name))
    assert len(set(map(repr, results.values()))) == 1


@pytest.mark.parametrize("name", BACKENDS)
@settings(max_examples=60, deadline=None)
@given(fam=any_shelling_family(7))
def test_backend_against_brute(name, fam):
    p = pss_rows(fam)
    assert count_full_words(p, backend=name) == sum(1 for _ in oracles.brute_force_words(fam))


@pytest.mark.parametrize("name", BACKENDS)
def test_dp_threads(name):
    p = pss_rows(gen_chessboard([3, 2, 2, 2, 1]))
    one = rising_dp(p, backend=name)
    four = rising_dp(p, backend=name, threads=4)
    assert (one.total, one.by_last, one.level_sizes) == (four.total, four.by_last, four.level_sizes)
    assert falling_dp(p, backend=name, threads=4) == falling_dp(p, backend=name)


def test_big_counts_exact():
    # 20 facets with every order a shelling: 20! overflows 64 bits
    from math import factorial
    fam = gen_partition_matroid([["hub"], [f"v{i}" for i in range(20)]])
    p = pss_rows(fam)
    for name in BACKENDS:
        assert count_full_words(p, backend=name) == factorial(20)
        assert sum(count_by_first_letter(p, backend=name).values()) == factorial(20)


@pytest.mark.skipif("compiled" not in BACKENDS, reason="extension not built")
def test_spill_env(tmp_path, monkeypatch):
    from shellkit import _compiled
    calls = []
    real = _compiled.spill

    def spy(level, directory, tag):
        calls.append((directory, tag))
        out = real(level, directory, tag)
        assert os.listdir(directory)
        return out

    monkeypatch.setattr(_compiled, "spill", spy)
    monkeypatch.setenv(SPILL_ENV, str(tmp_path))
    p = pss_rows(gen_chessboard([4, 3, 2, 1]))
    res = rising_dp(p, backend="compiled", spill_threshold=0)
    first = falling_dp(p, backend="compiled", spill_threshold=0)
    assert res.total == 44_176_168
    assert sum(first.values()) == 44_176_168
    assert calls and all(d.startswith(str(tmp_path)) for d, _ in calls)
    # temporary level files are removed afterwards
    assert os.listdir(tmp_path) == []


def test_spill_ignored_without_env(monkeypatch):
    monkeypatch.delenv(SPILL_ENV, raising=False)
    p = pss_rows(gen_m2m(4))
    assert rising_dp(p, spill_threshold=0).total == 576


def test_verbose_levels():
    seen = []
    p = pss_rows(gen_m2m(4))
    rising_dp(p, on_level=lambda d, s, size: seen.append((d, s, size)))
    assert [s for _, s, _ in seen] == list(range(1, 6))
    assert all(d == "up" for d, _, _ in seen)


@settings(max_examples=60, deadline=None)
@given(peeling_families(6))
def test_peeling_level_keys(fam):
    maps = level_maps(peeling_pss_rows(fam))
    brute = _partial_words(fam, peeling=True)
    assert [{(sum(1 << (i - 1) for i in w[:-1]), w[-1]) for w in ws} for ws in brute] == \
        [set(lm.entries) for lm in maps]


def test_fallback_when_extension_missing():
    import subprocess
    import sys
    code = (
        "import sys; sys.modules['shellkit._kernel'] = None\n"
        "import shellkit\n"
        "from shellkit import _backend, pss_rows, count_full_words\n"
        "from shellkit.generators import gen_m2m\n"
        "assert not shellkit.HAVE_COMPILED and _backend.get().NAME == 'python'\n"
        "print(count_full_words(pss_rows(gen_m2m(5))))\n"
    )
    res = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True)
    assert res.returncode == 0, res.stderr
    assert res.stdout.strip() == "2073600"
