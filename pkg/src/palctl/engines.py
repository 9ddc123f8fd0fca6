"""Counting engines for factors and palindromic factors of a finite word.

Three independent routes are provided and cross-checked in the tests:

* :class:`SuffixAutomaton` and :class:`PalindromicTree`, both incremental,
  give exact counts for every length at once;
* :func:`window_counts` sorts all length-``K`` windows with numpy and reads
  both counts off the sorted order (fast for bounded ``K``);
* :func:`brute_factor_counts` / :func:`brute_palindrome_counts` enumerate
  substrings into hash sets and serve as oracles.
"""

from __future__ import annotations

import numpy as np

from .words import Word, is_palindrome


class SuffixAutomaton:
    """Minimal automaton of all suffixes, built online."""

    def __init__(self, word: Word = b""):
        self.length = [0]
        self.link = [-1]
        self.next: list[dict] = [{}]
        self.last = 0
        self.size = 0  # number of symbols fed
        self.extend(word)

    def extend(self, word: Word):
        length, link, nxt = self.length, self.link, self.next
        last = self.last
        for c in word:
            cur = len(length)
            length.append(length[last] + 1)
            link.append(0)
            nxt.append({})
            p = last
            while p != -1 and c not in nxt[p]:
                nxt[p][c] = cur
                p = link[p]
            if p != -1:
                q = nxt[p][c]
                if length[p] + 1 == length[q]:
                    link[cur] = q
                else:
                    clone = len(length)
                    length.append(length[p] + 1)
                    link.append(link[q])
                    nxt.append(dict(nxt[q]))
                    while p != -1 and nxt[p].get(c) == q:
                        nxt[p][c] = clone
                        p = link[p]
                    link[q] = clone
                    link[cur] = clone
            last = cur
        self.last = last
        self.size += len(word)

    def __len__(self):
        return len(self.length)

    def factor_counts(self, k_max: int) -> np.ndarray:
        """``counts[k]`` = distinct factors of length ``k`` (``counts[0] = 1``)."""
        lengths = np.asarray(self.length[1:], dtype=np.int64)
        lo = np.asarray(self.link[1:], dtype=np.int64)
        lo = np.asarray(self.length, dtype=np.int64)[lo] + 1
        # each state covers the lengths lo..hi
        diff = np.zeros(k_max + 2, dtype=np.int64)
        np.add.at(diff, np.minimum(lo, k_max + 1), 1)
        np.add.at(diff, np.minimum(lengths + 1, k_max + 1), -1)
        counts = np.cumsum(diff)[: k_max + 1]
        counts[0] = 1
        return counts

    def contains(self, w: Word) -> bool:
        state = 0
        for c in w:
            state = self.next[state].get(c)
            if state is None:
                return False
        return True


class PalindromicTree:
    """Eertree: one node per distinct palindromic factor, built online.

    Node 0 is the imaginary root of length -1, node 1 the empty palindrome.
    ``first_end[v]`` is the end position (exclusive) of the leftmost
    occurrence of node ``v``.
    """

    def __init__(self, word: Word = b""):
        self.length = [-1, 0]
        self.link = [0, 0]
        self.next: list[dict] = [{}, {}]
        self.first_end = [0, 0]
        self.text = bytearray()
        self.last = 1
        self.extend(word)

    def extend(self, word: Word):
        length, link, nxt, first_end = self.length, self.link, self.next, self.first_end
        text = self.text
        last = self.last
        for c in word:
            text.append(c)
            i = len(text) - 1
            v = last
            while True:
                start = i - length[v] - 1
                if start >= 0 and text[start] == c:
                    break
                v = link[v]
            child = nxt[v].get(c)
            if child is not None:
                last = child
                continue
            node = len(length)
            length.append(length[v] + 2)
            first_end.append(i + 1)
            nxt.append({})
            if length[node] == 1:
                link.append(1)
            else:
                u = link[v]
                while True:
                    start = i - length[u] - 1
                    if start >= 0 and text[start] == c:
                        break
                    u = link[u]
                link.append(nxt[u][c])
            nxt[v][c] = node
            last = node
        self.last = last

    def __len__(self):
        """Number of distinct nonempty palindromic factors."""
        return len(self.length) - 2

    def palindrome_counts(self, k_max: int) -> np.ndarray:
        """``counts[k]`` = distinct palindromic factors of length ``k``."""
        lengths = np.asarray(self.length[2:], dtype=np.int64)
        counts = np.bincount(lengths[lengths <= k_max], minlength=k_max + 1)[: k_max + 1]
        counts[0] = 1
        return counts

    def palindrome_counts_avoiding(self, k_max: int, symbol: int) -> np.ndarray:
        """Like :meth:`palindrome_counts`, skipping palindromes that contain ``symbol``."""
        tainted = [False] * len(self.length)
        for v, edges in enumerate(self.next):
            for c, child in edges.items():
                tainted[child] = tainted[v] or c == symbol
        lengths = np.asarray(self.length, dtype=np.int64)
        keep = ~np.asarray(tainted, dtype=bool)
        keep[:2] = False
        lengths = lengths[keep]
        counts = np.bincount(lengths[lengths <= k_max], minlength=k_max + 1)[: k_max + 1]
        counts[0] = 1
        return counts

    def word(self, node: int) -> Word:
        end = self.first_end[node]
        return bytes(self.text[end - self.length[node]:end])

    def nodes_of_length(self, k: int) -> list[int]:
        return [v for v in range(2, len(self.length)) if self.length[v] == k]

    def is_extended(self, node: int) -> bool:
        """Some ``a w a`` is also a node."""
        return bool(self.next[node])


def brute_factor_counts(word: Word, k_max: int) -> np.ndarray:
    counts = np.zeros(k_max + 1, dtype=np.int64)
    counts[0] = 1
    n = len(word)
    for k in range(1, min(k_max, n) + 1):
        counts[k] = len({word[i:i + k] for i in range(n - k + 1)})
    return counts


def brute_palindrome_counts(word: Word, k_max: int) -> np.ndarray:
    counts = np.zeros(k_max + 1, dtype=np.int64)
    counts[0] = 1
    n = len(word)
    for k in range(1, min(k_max, n) + 1):
        counts[k] = sum(1 for f in {word[i:i + k] for i in range(n - k + 1)} if f == f[::-1])
    return counts


def _common_prefix_length(a: Word, b: Word) -> int:
    lo, hi = 0, min(len(a), len(b))
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if a[:mid] == b[:mid]:
            lo = mid
        else:
            hi = mid - 1
    return lo


def naive_suffix_counts(word: Word, k_max: int) -> tuple[np.ndarray, np.ndarray]:
    """Factor and palindrome counts from a plainly sorted list of suffixes.

    Suffix ``j`` in sorted order starts a new length-``k`` factor exactly when
    it has length ``>= k`` and shares fewer than ``k`` symbols with suffix
    ``j - 1``.  One representative per factor is tested for being a
    palindrome; two consecutive zero palindrome counts end the scan, since a
    palindrome of length ``m`` contains one of length ``m - 2``.
    """
    n = len(word)
    order = sorted(range(n), key=lambda i: word[i:])
    lengths = np.array([n - i for i in order], dtype=np.int64)
    lcp = np.zeros(n, dtype=np.int64)
    for j in range(1, n):
        lcp[j] = _common_prefix_length(word[order[j - 1]:], word[order[j]:])
    fac = np.zeros(k_max + 1, dtype=np.int64)
    pal = np.zeros(k_max + 1, dtype=np.int64)
    fac[0] = pal[0] = 1
    for k in range(1, min(k_max, n) + 1):
        starts = np.flatnonzero((lengths >= k) & (lcp < k))
        fac[k] = len(starts)
        if k >= 3 and pal[k - 1] == 0 and pal[k - 2] == 0:
            continue
        pal[k] = sum(1 for j in starts if is_palindrome(word[order[j]:order[j] + k]))
    return fac, pal


# -- sorted windows ---------------------------------------------------------------

def _bit_length64(x: np.ndarray) -> np.ndarray:
    hi = (x >> np.uint64(32)).astype(np.float64)
    lo = (x & np.uint64(0xFFFFFFFF)).astype(np.float64)
    # frexp exponent is the bit length for exact (< 2**53) floats
    return np.where(hi > 0, 32 + np.frexp(hi)[1], np.frexp(lo)[1]).astype(np.int64)


def _palindrome_radii(a: np.ndarray, cap: int) -> tuple[np.ndarray, np.ndarray]:
    """Capped palindrome radii around every centre.

    ``odd[i]``: largest r <= cap with ``a[i-r..i+r]`` a palindrome.
    ``even[i]``: largest r <= cap with ``a[i-r..i+r-1]`` a palindrome.
    """
    n = len(a)
    odd = np.zeros(n, dtype=np.int64)
    even = np.zeros(n + 1, dtype=np.int64)
    alive = np.ones(n, dtype=bool)
    for r in range(1, cap + 1):
        if 2 * r + 1 > n:
            break
        # centres r .. n-1-r can reach radius r
        seg = alive[r:n - r]
        seg &= a[:n - 2 * r] == a[2 * r:]
        alive[:r] = False
        alive[n - r:] = False
        if not seg.any():
            break
        odd[r:n - r] += seg
    alive = np.ones(n + 1, dtype=bool)
    for r in range(1, cap + 1):
        if 2 * r > n:
            break
        # centres r .. n-r (between a[i-1] and a[i])
        seg = alive[r:n - r + 1]
        seg &= a[:n - 2 * r + 1] == a[2 * r - 1:]
        alive[:r] = False
        alive[n - r + 1:] = False
        if not seg.any():
            break
        even[r:n - r + 1] += seg
    return odd, even


def window_counts(word: Word, k_max: int, alphabet_size: int,
                  palindromes: bool = True) -> tuple[np.ndarray, np.ndarray | None]:
    """Factor and palindrome counts for lengths ``0..k_max`` via sorted windows.

    Windows of length ``k_max`` (padded past the end with a sentinel symbol)
    are packed most-significant-symbol first into uint64 columns, sorted
    lexicographically, and adjacent longest common prefixes are measured.
    Windows sharing a length-``k`` prefix are then contiguous, so a new
    length-``k`` factor starts wherever the common prefix drops below ``k``.
    """
    n = len(word)
    fac = np.zeros(k_max + 1, dtype=np.int64)
    pal = np.zeros(k_max + 1, dtype=np.int64) if palindromes else None
    fac[0] = 1
    if palindromes:
        pal[0] = 1
    if n == 0 or k_max == 0:
        return fac, pal
    a = np.frombuffer(word, dtype=np.uint8).astype(np.uint64)
    bits = max(1, int(alphabet_size).bit_length())  # room for the sentinel value
    per = 64 // bits
    ncols = -(-k_max // per)
    sentinel = np.uint64(alphabet_size)
    padded = np.full(n + ncols * per, sentinel, dtype=np.uint64)
    padded[:n] = a
    cols = []
    for c in range(ncols):
        col = np.zeros(n, dtype=np.uint64)
        for t in range(per):
            shift = np.uint64(64 - bits * (t + 1))
            col |= padded[c * per + t: c * per + t + n] << shift
        cols.append(col)
    order = np.lexsort(cols[::-1])
    sorted_cols = [col[order] for col in cols]

    lcp = np.zeros(n, dtype=np.int64)  # lcp[j] between sorted j-1 and j; lcp[0] = 0
    if n > 1:
        undecided = np.ones(n - 1, dtype=bool)
        acc = np.zeros(n - 1, dtype=np.int64)
        for col in sorted_cols:
            x = col[1:] ^ col[:-1]
            eq_syms = np.minimum((64 - _bit_length64(x)) // bits, per)
            acc += np.where(undecided, eq_syms, 0)
            undecided &= x == 0
        lcp[1:] = np.minimum(acc, k_max)
    truelen = np.minimum(n - order, k_max)  # symbols before the sentinel

    # lcp < k and truelen >= k marks the first window of a new length-k factor
    fac_diff = np.zeros(k_max + 2, dtype=np.int64)
    np.add.at(fac_diff, lcp + 1, np.where(lcp < truelen, 1, 0))
    np.add.at(fac_diff, truelen + 1, np.where(lcp < truelen, -1, 0))
    fac[1:] = np.cumsum(fac_diff)[1:k_max + 1]

    if palindromes:
        odd, even = _palindrome_radii(np.frombuffer(word, dtype=np.uint8), k_max // 2 + 1)
        opener = lcp < truelen
        pos = order[opener]
        lo = lcp[opener]
        hi = truelen[opener]
        for k in range(1, k_max + 1):
            sel = (lo < k) & (hi >= k)
            p = pos[sel]
            if k % 2:
                ok = odd[p + (k - 1) // 2] >= (k - 1) // 2
            else:
                ok = even[p + k // 2] >= k // 2
            pal[k] = int(np.count_nonzero(ok))
    return fac, pal
