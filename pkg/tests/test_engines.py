import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from palctl.engines import (
    PalindromicTree,
    SuffixAutomaton,
    brute_factor_counts,
    brute_palindrome_counts,
    naive_suffix_counts,
    window_counts,
)


def words(max_len=300, max_sym=4):
    return st.integers(1, max_sym).flatmap(
        lambda a: st.lists(st.integers(0, a - 1), max_size=max_len).map(bytes).map(lambda w: (w, a)))


@given(words())
def test_automaton_matches_brute(wa):
    w, _ = wa
    k = max(1, len(w))
    assert SuffixAutomaton(w).factor_counts(k).tolist() == brute_factor_counts(w, k).tolist()


@given(words())
def test_tree_matches_brute(wa):
    w, _ = wa
    k = max(1, len(w))
    tree = PalindromicTree(w)
    assert tree.palindrome_counts(k).tolist() == brute_palindrome_counts(w, k).tolist()
    # at most one new palindrome per symbol
    assert len(tree) <= len(w)


@given(words(), st.integers(1, 40))
def test_windows_match_brute(wa, k):
    w, a = wa
    fac, pal = window_counts(w, k, a)
    assert fac.tolist() == brute_factor_counts(w, k).tolist()
    assert pal.tolist() == brute_palindrome_counts(w, k).tolist()


def test_windows_wide_alphabet_and_long_k():
    rng = random.Random(5)
    w = bytes(rng.randrange(7) for _ in range(3000))
    fac, pal = window_counts(w, 100, 7)
    assert fac.tolist() == brute_factor_counts(w, 100).tolist()
    assert pal.tolist() == brute_palindrome_counts(w, 100).tolist()


def test_periodic_word_has_long_common_prefixes():
    w = b"\x00\x01\x01" * 700
    fac, pal = window_counts(w, 90, 2)
    assert fac.tolist() == brute_factor_counts(w, 90).tolist()
    assert pal.tolist() == brute_palindrome_counts(w, 90).tolist()


@given(words(200), words(200))
def test_incremental_equals_batch(a, b):
    w1, w2 = a[0], b[0]
    t = PalindromicTree(w1)
    t.extend(w2)
    s = SuffixAutomaton(w1)
    s.extend(w2)
    k = max(1, len(w1 + w2))
    assert t.palindrome_counts(k).tolist() == PalindromicTree(w1 + w2).palindrome_counts(k).tolist()
    assert s.factor_counts(k).tolist() == SuffixAutomaton(w1 + w2).factor_counts(k).tolist()


def test_tree_witnesses_are_leftmost():
    w = bytes([0, 1, 0, 0, 1, 0, 1, 0])
    t = PalindromicTree(w)
    for v in range(2, len(t.length)):
        p = t.word(v)
        assert p == p[::-1]
        assert w.find(p) == t.first_end[v] - len(p)


def test_automaton_contains():
    s = SuffixAutomaton(b"\x00\x01\x01\x00")
    assert s.contains(b"\x01\x01")
    assert not s.contains(b"\x00\x00")


def test_avoiding_counts():
    w = bytes([0, 1, 0, 2, 0, 1, 0])
    t = PalindromicTree(w)
    assert t.palindrome_counts(7).tolist() == [1, 3, 0, 2, 0, 1, 0, 1]
    assert t.palindrome_counts_avoiding(7, 2).tolist() == [1, 2, 0, 1, 0, 0, 0, 0]


def test_empty_word():
    assert window_counts(b"", 5, 2)[0].tolist() == [1, 0, 0, 0, 0, 0]
    assert PalindromicTree().palindrome_counts(3).tolist() == [1, 0, 0, 0]
    assert SuffixAutomaton().factor_counts(3).tolist() == [1, 0, 0, 0]


@given(words(max_len=200))
def test_naive_suffix_oracle_matches_brute(wa):
    w, _ = wa
    k = max(1, len(w))
    fac, pal = naive_suffix_counts(w, k)
    assert fac.tolist() == brute_factor_counts(w, k).tolist()
    assert pal.tolist() == brute_palindrome_counts(w, k).tolist()
