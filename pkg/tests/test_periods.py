import itertools
import random
from math import gcd

import pytest
from hypothesis import given, strategies as st

from palctl.periods import (
    PalindromeClass,
    all_periods,
    border_array,
    classify_palindrome,
    fine_wilf_reduce,
    fine_wilf_threshold,
    is_period,
    lemma3_checks,
    lyndon_schutzenberger,
    smallest_period,
    twin,
)
from palctl.words import Alphabet, WordError, is_palindrome

AB = Alphabet(("a", "b", "c"))
enc, dec = AB.encode, AB.decode


def naive_periods(w):
    # p is a period when w is a prefix of the p-periodic word built from w[:p]
    return [p for p in range(1, len(w) + 1) if all(w[i] == w[i % p] for i in range(len(w)))]


def binary(n):
    return (bytes(t) for t in itertools.product((0, 1), repeat=n))


def test_smallest_period_examples():
    assert smallest_period(Alphabet(("0", "1")).encode("01101")) == 3
    assert smallest_period(enc("aaaa")) == 1
    assert smallest_period(enc("abc")) == 3
    with pytest.raises(WordError):
        smallest_period(b"")


@given(st.lists(st.integers(0, 2), min_size=1, max_size=30).map(bytes))
def test_periods_match_definition(w):
    assert all_periods(w) == naive_periods(w)
    assert smallest_period(w) == naive_periods(w)[0]
    b = border_array(w)
    assert all(w[:b[i]] == w[i + 1 - b[i]:i + 1] for i in range(len(w)))


def test_small_periods_divisible_exhaustive():
    for n in range(1, 17):
        for w in binary(n):
            t = smallest_period(w)
            if 2 * t <= n:
                assert all(p % t == 0 for p in naive_periods(w) if 2 * p <= n)


def test_fine_wilf_examples():
    assert fine_wilf_threshold(2, 3) == 4
    assert fine_wilf_reduce(enc("aba"), 2, 3) is None
    assert not is_period(enc("aba"), 1)
    assert fine_wilf_reduce(enc("aaaa"), 2, 3) == 1
    with pytest.raises(WordError):
        fine_wilf_reduce(enc("abab"), 3, 2)


@pytest.mark.parametrize("t1,t2", [(a, b) for a in range(1, 7) for b in range(1, 7)])
def test_fine_wilf_sharp(t1, t2):
    n = fine_wilf_threshold(t1, t2) - 1
    g = gcd(t1, t2)
    if g in (t1, t2):
        return  # the gcd is itself one of the periods
    witness = any(is_period(w, t1) and is_period(w, t2) and not is_period(w, g) for w in binary(n))
    assert witness
    for w in binary(n + 1):
        if is_period(w, t1) and is_period(w, t2):
            assert fine_wilf_reduce(w, t1, t2) == g


def test_lyndon_schutzenberger_examples():
    assert lyndon_schutzenberger(enc("ab"), enc("a"), enc("ba")) == (enc("a"), enc("b"), 0)
    assert lyndon_schutzenberger(enc("ab"), b"", enc("ab")) == (b"", enc("ab"), 0)
    assert lyndon_schutzenberger(enc("ab"), enc("ab"), enc("ab")) == (b"", enc("ab"), 1)
    assert lyndon_schutzenberger(enc("ab"), enc("a"), enc("ab")) is None
    with pytest.raises(WordError):
        lyndon_schutzenberger(b"", enc("a"), enc("a"))


small = st.lists(st.integers(0, 1), max_size=8).map(bytes)


@given(small.filter(bool), small, small.filter(bool))
def test_lyndon_schutzenberger_property(x, y, z):
    r = lyndon_schutzenberger(x, y, z)
    if r is None:
        assert x + y != y + z
    else:
        u, v, e = r
        assert x == u + v and z == v + u and y == (u + v) * e + u


@given(small, small, st.integers(0, 3))
def test_lyndon_schutzenberger_constructed(u, v, e):
    if not u + v:
        return
    x, z, y = u + v, v + u, (u + v) * e + u
    r = lyndon_schutzenberger(x, y, z)
    assert r is not None
    uu, vv, ee = r
    assert uu + vv == x and vv + uu == z and (uu + vv) * ee + uu == y


def test_lemma3_examples():
    item1 = lemma3_checks(enc("ababab"))[0]
    assert item1.applicable and item1.holds
    items = lemma3_checks(enc("abab"), enc("abababab"))
    assert items[1].applicable and items[1].holds
    na = lemma3_checks(enc("abc"))[0]
    assert not na.applicable and na.holds is None


def test_lemma3_item3_randomized():
    rng = random.Random(11)
    hits = 0
    for _ in range(400):
        p = rng.randint(1, 4)
        base = bytes(rng.randint(0, 1) for _ in range(p))
        z = (base * 20)[:rng.randint(8, 40)]
        i, j = rng.randrange(len(z)), rng.randrange(len(z))
        w = z[i:i + rng.randint(1, len(z))]
        w2 = z[j:j + rng.randint(1, len(z))]
        items = lemma3_checks(w, z, w2)
        for it in items:
            assert it.holds in (None, True)
        if items[2].applicable:
            hits += 1
    assert hits > 20


def test_classify_examples():
    assert classify_palindrome(enc("aba")).kind is PalindromeClass.NON_PERIODIC
    assert classify_palindrome(enc("aaa")).kind is PalindromeClass.ODD_PERIOD
    rec = classify_palindrome(enc("ababa"))
    assert rec.kind is PalindromeClass.EVEN_PERIOD and rec.period == 2
    assert dec(rec.twin) == "babab"
    assert classify_palindrome(enc("a")).kind is PalindromeClass.NON_PERIODIC
    with pytest.raises(WordError):
        twin(enc("aaa"))
    with pytest.raises(WordError):
        classify_palindrome(enc("ab"))


def test_twin_involution_exhaustive():
    count = 0
    for n in range(1, 15):
        for w in binary(n):
            if not is_palindrome(w):
                continue
            if classify_palindrome(w).kind is not PalindromeClass.EVEN_PERIOD:
                continue
            t = twin(w)
            count += 1
            assert twin(t) == w and t != w
            assert is_palindrome(t) and smallest_period(t) == smallest_period(w)
    assert count >= 40
