"""Factor and palindrome complexity of sequence prefixes.

Counts are exact for the examined prefix.  To approximate the counts of the
infinite sequence the prefix is doubled, starting from
``max(4096, 8 * k_max)``, until no count for ``k <= k_max`` changes across one
doubling or the budget is reached; ``stable[k]`` records whether the last
doubling left count ``k`` unchanged.
"""

from __future__ import annotations

import csv
import io
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .engines import (
    PalindromicTree,
    SuffixAutomaton,
    brute_factor_counts,
    brute_palindrome_counts,
    window_counts,
)
from .sequences import SequenceSource
from .words import Word

DEFAULT_BUDGET = 1 << 20
DEFAULT_K_MAX = 64
WINDOW_K_LIMIT = 256


def default_budget() -> int:
    return int(os.environ.get("PALCTL_BUDGET", DEFAULT_BUDGET))


def start_length(k_max: int) -> int:
    return max(4096, 8 * k_max)


@dataclass(frozen=True)
class ComplexityProfile:
    """``fac[k]`` / ``pal[k]`` for ``0 <= k <= k_max``; either may be absent.

    Index 0 holds the empty word and is left out of reports.
    """

    source: str
    k_max: int
    prefix_len: int
    fac: tuple[int, ...] | None
    pal: tuple[int, ...] | None
    stable: tuple[bool, ...]
    params: dict = field(default_factory=dict, compare=False)

    def rows(self):
        for k in range(1, self.k_max + 1):
            yield (k,
                   None if self.fac is None else self.fac[k],
                   None if self.pal is None else self.pal[k],
                   self.prefix_len,
                   self.stable[k])

    @property
    def all_stable(self) -> bool:
        return all(self.stable[1:])

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["k", "fac", "pal", "prefix_len", "stable"])
        for k, f, p, n, st in self.rows():
            writer.writerow([k, "" if f is None else f, "" if p is None else p, n,
                             "true" if st else "false"])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, source: str = "") -> "ComplexityProfile":
        rows = list(csv.DictReader(io.StringIO(text)))
        if not rows:
            raise ValueError("empty profile CSV")
        k_max = len(rows)
        if [int(r["k"]) for r in rows] != list(range(1, k_max + 1)):
            raise ValueError("profile CSV rows must list k = 1..k_max in order")
        lengths = {int(r["prefix_len"]) for r in rows}
        if len(lengths) != 1:
            raise ValueError("profile CSV mixes prefix lengths")

        def column(name):
            if all(r[name] == "" for r in rows):
                return None
            return (1,) + tuple(int(r[name]) for r in rows)

        stable = (True,) + tuple(r["stable"] == "true" for r in rows)
        return cls(source, k_max, lengths.pop(), column("fac"), column("pal"), stable)

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "params": self.params,
            "k_max": self.k_max,
            "prefix_len": self.prefix_len,
            "rows": [{"k": k, "fac": f, "pal": p, "stable": st}
                     for k, f, p, _, st in self.rows()],
        }


@dataclass
class PalindromeInventory:
    """Palindromic factors by length, each with its leftmost start index."""

    prefix_len: int
    by_length: dict[int, dict[Word, int]]
    stable: tuple[bool, ...]

    def words(self, k: int) -> set[Word]:
        return set(self.by_length.get(k, {}))


# -- counting backends ----------------------------------------------------------

class _FacCounter:
    def __init__(self, method: str, k_max: int, alphabet_size: int):
        if method == "auto":
            method = "windows" if k_max <= WINDOW_K_LIMIT else "automaton"
        if method not in ("windows", "automaton", "brute"):
            raise ValueError(f"unknown factor counting method {method!r}")
        self.method = method
        self.k_max = k_max
        self.alphabet_size = alphabet_size
        self.word = b""
        self.automaton = SuffixAutomaton() if method == "automaton" else None

    def feed(self, chunk: Word):
        self.word += chunk
        if self.automaton is not None:
            self.automaton.extend(chunk)

    def counts(self) -> np.ndarray:
        if self.method == "automaton":
            return self.automaton.factor_counts(self.k_max)
        if self.method == "windows":
            return window_counts(self.word, self.k_max, self.alphabet_size, palindromes=False)[0]
        return brute_factor_counts(self.word, self.k_max)


class _PalCounter:
    def __init__(self, method: str, k_max: int, alphabet_size: int):
        if method == "auto":
            method = "tree"
        if method not in ("tree", "windows", "brute"):
            raise ValueError(f"unknown palindrome counting method {method!r}")
        self.method = method
        self.k_max = k_max
        self.alphabet_size = alphabet_size
        self.tree = PalindromicTree()

    def feed(self, chunk: Word):
        self.tree.extend(chunk)
        # at most one new palindrome per symbol
        if len(self.tree) > len(self.tree.text):
            raise RuntimeError("palindromic tree exceeds the distinct-palindrome bound")

    def counts(self) -> np.ndarray:
        if self.method == "tree":
            return self.tree.palindrome_counts(self.k_max)
        word = bytes(self.tree.text)
        if self.method == "windows":
            return window_counts(word, self.k_max, self.alphabet_size)[1]
        return brute_palindrome_counts(word, self.k_max)


def _stabilize(source: SequenceSource, k_max: int, budget: int | None, counters: list):
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    budget = default_budget() if budget is None else budget
    if budget < 2 * k_max:
        raise ValueError(f"budget {budget} is below 2*k_max = {2 * k_max}")
    length = min(max(start_length(k_max), source.min_prefix), budget)
    horizon = None
    if source.factor_horizon is not None:
        horizon = np.array([0] + [source.factor_horizon(k) for k in range(1, k_max + 1)],
                           dtype=object)
    if length == budget:
        # no room to double: compare against the half-length prefix
        half = source.prefix(length // 2)
        for c in counters:
            c.feed(half)
        prev = [c.counts() for c in counters]
        fed = len(half)
    else:
        prev, fed = None, 0
    while True:
        chunk = source.prefix(length)[fed:]
        for c in counters:
            c.feed(chunk)
        fed = length
        cur = [c.counts() for c in counters]
        if prev is not None:
            same = np.logical_and.reduce([a == b for a, b in zip(cur, prev)])
            if horizon is not None:
                same &= horizon <= length
            if same[1:].all() or length >= budget:
                return length, cur, tuple(bool(x) for x in same)
        elif length >= budget:
            return length, cur, (True,) + (False,) * k_max
        prev = cur
        length = min(2 * length, budget)


def factor_complexity(source: SequenceSource, k_max: int, budget: int | None = None,
                      method: str = "auto") -> ComplexityProfile:
    counter = _FacCounter(method, k_max, source.alphabet.size)
    length, (fac,), stable = _stabilize(source, k_max, budget, [counter])
    return ComplexityProfile(source.name, k_max, length, tuple(int(x) for x in fac), None,
                             stable, source.describe())


def palindrome_complexity(source: SequenceSource, k_max: int, budget: int | None = None,
                          method: str = "auto") -> ComplexityProfile:
    counter = _PalCounter(method, k_max, source.alphabet.size)
    length, (pal,), stable = _stabilize(source, k_max, budget, [counter])
    return ComplexityProfile(source.name, k_max, length, None, tuple(int(x) for x in pal),
                             stable, source.describe())


def complexity_profile(source: SequenceSource, k_max: int, budget: int | None = None,
                       method: str = "auto") -> ComplexityProfile:
    """Both counts, stabilized jointly."""
    fac_method = "auto" if method == "tree" else method
    pal_method = "auto" if method == "automaton" else method
    counters = [_FacCounter(fac_method, k_max, source.alphabet.size),
                _PalCounter(pal_method, k_max, source.alphabet.size)]
    length, (fac, pal), stable = _stabilize(source, k_max, budget, counters)
    return ComplexityProfile(source.name, k_max, length, tuple(int(x) for x in fac),
                             tuple(int(x) for x in pal), stable, source.describe())


def _stable_tree(source: SequenceSource, k_max: int, budget: int | None):
    counter = _PalCounter("tree", k_max, source.alphabet.size)
    length, _, stable = _stabilize(source, k_max, budget, [counter])
    return counter.tree, length, stable


def palindrome_inventory(source: SequenceSource, k_max: int,
                         budget: int | None = None) -> PalindromeInventory:
    tree, length, stable = _stable_tree(source, k_max, budget)
    by_length: dict[int, dict[Word, int]] = {k: {} for k in range(1, k_max + 1)}
    for v in range(2, len(tree.length)):
        k = tree.length[v]
        if k <= k_max:
            by_length[k][tree.word(v)] = tree.first_end[v] - k
    return PalindromeInventory(length, by_length, stable)


def palindrome_set(source: SequenceSource, k: int, budget: int | None = None) -> set[Word]:
    if k < 1:
        raise ValueError("k must be at least 1")
    return palindrome_inventory(source, k, budget).words(k)


def central_letter_count(source: SequenceSource, k: int, letter: int | str,
                         budget: int | None = None) -> int:
    """Number of length-``k`` palindromic factors (``k`` odd) with the given centre."""
    if k < 1 or k % 2 == 0:
        raise ValueError("central letters need an odd length")
    if isinstance(letter, str):
        letter = source.alphabet.index(letter)
    return sum(1 for w in palindrome_set(source, k, budget) if w[k // 2] == letter)


def maximal_palindromes(source: SequenceSource, len_max: int,
                        budget: int | None = None) -> list[Word]:
    """Palindromic factors of length ``<= len_max`` with no factor ``a w a``.

    A palindrome seen in the prefix of length ``L`` counts as extended when
    some ``a w a`` occurs in the prefix of length ``2L``; ``L`` doubles until
    the list stops changing.
    """
    budget = default_budget() if budget is None else budget
    if budget < 2 * len_max:
        raise ValueError("budget below 2*len_max")
    length = min(max(start_length(len_max), source.min_prefix), budget // 2)
    tree = PalindromicTree(source.prefix(length))
    previous = None
    while True:
        known = len(tree.length)
        tree.extend(source.prefix(2 * length)[length:])
        found = sorted(
            (tree.word(v) for v in range(2, known)
             if tree.length[v] <= len_max and not tree.is_extended(v)),
            key=lambda w: (len(w), w))
        if found == previous or 4 * length > budget:
            return found
        previous = found
        length *= 2


@dataclass(frozen=True)
class RatioRow:
    k: int
    fac: int
    pal: int
    k_pal_over_fac: Fraction | None
    pal_squared_over_fac: Fraction | None

    @property
    def defined(self) -> bool:
        return self.k_pal_over_fac is not None

    @property
    def pal_over_sqrt_fac(self) -> float | None:
        if self.pal_squared_over_fac is None:
            return None
        return math.sqrt(self.pal_squared_over_fac)


def complexity_ratios(profile: ComplexityProfile) -> list[RatioRow]:
    """``k pal(k) / fac(k)`` exactly, and ``pal(k) / sqrt(fac(k))`` through its square."""
    if profile.fac is None or profile.pal is None:
        raise ValueError("ratios need both fac and pal")
    rows = []
    for k in range(1, profile.k_max + 1):
        f, p = profile.fac[k], profile.pal[k]
        if f == 0:
            rows.append(RatioRow(k, f, p, None, None))
        else:
            rows.append(RatioRow(k, f, p, Fraction(k * p, f), Fraction(p * p, f)))
    return rows
