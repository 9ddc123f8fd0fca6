"""Periods of finite words and the palindrome period classes.

A period of ``w`` is any ``p >= 1`` such that ``w`` is a prefix of a
``p``-periodic sequence, so every ``p >= |w|`` is (vacuously) a period.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd

from .words import Word, WordError, is_palindrome


def border_array(w: Word) -> list[int]:
    """``b[i]`` = length of the longest proper border of ``w[:i+1]``."""
    b = [0] * len(w)
    k = 0
    for i in range(1, len(w)):
        while k and w[i] != w[k]:
            k = b[k - 1]
        if w[i] == w[k]:
            k += 1
        b[i] = k
    return b


def smallest_period(w: Word) -> int:
    if not w:
        raise WordError("the empty word has no smallest period")
    return len(w) - border_array(w)[-1]


def is_period(w: Word, p: int) -> bool:
    if p < 1:
        return False
    return w[p:] == w[:len(w) - p] if p < len(w) else True


def all_periods(w: Word) -> list[int]:
    """Every period in ``1..|w|`` by direct comparison."""
    return [p for p in range(1, len(w) + 1) if is_period(w, p)]


def fine_wilf_threshold(t1: int, t2: int) -> int:
    if t1 < 1 or t2 < 1:
        raise ValueError("periods are positive")
    return t1 + t2 - gcd(t1, t2)


def fine_wilf_reduce(w: Word, t1: int, t2: int) -> int | None:
    """``gcd(t1, t2)`` when ``w`` is long enough to force it as a period, else None."""
    for t in (t1, t2):
        if not is_period(w, t):
            raise WordError(f"{t} is not a period of the given word")
    if len(w) >= fine_wilf_threshold(t1, t2):
        g = gcd(t1, t2)
        if not is_period(w, g):
            raise AssertionError("Fine-Wilf reduction failed")  # cannot happen
        return g
    return None


def lyndon_schutzenberger(x: Word, y: Word, z: Word) -> tuple[Word, Word, int] | None:
    """``(u, v, e)`` with ``x = uv``, ``z = vu``, ``y = (uv)^e u`` when ``xy = yz``.

    The decomposition returned is the one with ``e = |y| // |x|``.
    """
    if not x or not z:
        raise WordError("x and z must be non-empty")
    if x + y != y + z:
        return None
    e, r = divmod(len(y), len(x))
    u, v = x[:r], x[r:]
    if (u + v) * e + u != y or v + u != z:
        raise AssertionError("conjugacy decomposition failed")  # cannot happen
    return u, v, e


@dataclass
class LemmaItem:
    item: int
    applicable: bool
    holds: bool | None
    detail: str


def _periods_divisible(w: Word) -> LemmaItem:
    t = smallest_period(w)
    if 2 * t > len(w):
        return LemmaItem(1, False, None, f"T={t} > |w|/2")
    small = [p for p in all_periods(w) if 2 * p <= len(w)]
    bad = [p for p in small if p % t]
    return LemmaItem(1, True, not bad,
                     f"T={t}; periods <= |w|/2: {small}" + (f"; not divisible: {bad}" if bad else ""))


def _factor_period_lifts(z: Word, w: Word) -> LemmaItem:
    if w not in z:
        return LemmaItem(2, False, None, "w is not a factor of z")
    t, t2 = smallest_period(z), smallest_period(w)
    if t + t2 > len(w):
        return LemmaItem(2, False, None, f"T+T'={t + t2} > |w|={len(w)}")
    return LemmaItem(2, True, is_period(z, t2), f"T={t}, T'={t2}; T' period of z: {is_period(z, t2)}")


def _factor_periods_agree(z: Word, w: Word, w2: Word) -> LemmaItem:
    if w not in z or w2 not in z:
        return LemmaItem(3, False, None, "w or w' is not a factor of z")
    theta, t, t2 = smallest_period(z), smallest_period(w), smallest_period(w2)
    if theta + t > len(w) or theta + t2 > len(w2):
        return LemmaItem(3, False, None, f"Θ={theta}, T={t}, T'={t2}: length condition fails")
    return LemmaItem(3, True, t == t2, f"Θ={theta}, T={t}, T'={t2}")


def lemma3_checks(w: Word, z: Word | None = None, w_prime: Word | None = None) -> list[LemmaItem]:
    """Check the three period facts on concrete words.

    Item 1 uses ``w`` alone; item 2 needs ``z`` (``w`` a factor of ``z``);
    item 3 also needs ``w_prime``.  Items whose hypotheses fail are reported
    as not applicable.
    """
    items = [_periods_divisible(w)]
    if z is not None:
        items.append(_factor_period_lifts(z, w))
        if w_prime is not None:
            items.append(_factor_periods_agree(z, w, w_prime))
    return items


class PalindromeClass(enum.Enum):
    NON_PERIODIC = "non-periodic"
    ODD_PERIOD = "odd-period"
    EVEN_PERIOD = "even-period"


@dataclass(frozen=True)
class PalindromeRecord:
    word: Word
    period: int
    kind: PalindromeClass
    twin: Word | None


def palindrome_class(w: Word) -> PalindromeClass:
    t = smallest_period(w)
    if 2 * t > len(w):
        return PalindromeClass.NON_PERIODIC
    return PalindromeClass.ODD_PERIOD if t % 2 else PalindromeClass.EVEN_PERIOD


def twin(w: Word) -> Word:
    """Swap the two halves of the period: ``w`` prefix of ``(xy)^∞`` becomes
    the prefix of ``(yx)^∞`` of the same length."""
    if not is_palindrome(w):
        raise WordError("twins are defined for palindromes")
    t = smallest_period(w)
    if 2 * t > len(w) or t % 2:
        raise WordError("twins are defined for palindromes of even period")
    x, y = w[:t // 2], w[t // 2:t]
    reps = len(w) // t + 1
    return ((y + x) * reps)[:len(w)]


def classify_palindrome(w: Word) -> PalindromeRecord:
    if not w:
        raise WordError("the empty word has no period")
    if not is_palindrome(w):
        raise WordError("not a palindrome")
    kind = palindrome_class(w)
    return PalindromeRecord(w, smallest_period(w), kind,
                            twin(w) if kind is PalindromeClass.EVEN_PERIOD else None)
