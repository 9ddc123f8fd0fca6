"""Class P morphisms: ``σ(a) = p q_a`` (or ``q_a p``) with ``p`` and all ``q_a`` palindromes."""

from __future__ import annotations

from dataclasses import dataclass

from .words import Alphabet, Morphism, Word, WordError, fixed_point_prefix, is_palindrome, is_primitive

PREFIX = "prefix"  # σ(a) = p q_a
SUFFIX = "suffix"  # σ(a) = q_a p


class ClassPError(ValueError):
    pass


@dataclass(frozen=True)
class ClassPDecomposition:
    side: str
    p: Word
    q: tuple[Word, ...]

    def images(self) -> tuple[Word, ...]:
        if self.side == PREFIX:
            return tuple(self.p + q for q in self.q)
        return tuple(q + self.p for q in self.q)

    def reassembles(self, m: Morphism) -> bool:
        return self.images() == m.images and is_palindrome(self.p) and all(map(is_palindrome, self.q))

    def describe(self, alphabet: Alphabet) -> dict:
        return {"side": self.side, "p": alphabet.decode(self.p),
                "q": {a: alphabet.decode(q) for a, q in zip(alphabet.letters, self.q)}}


def _common_prefix(words) -> Word:
    first = min(words, key=len)
    n = 0
    while n < len(first) and all(w[n] == first[n] for w in words):
        n += 1
    return first[:n]


def detect_class_p(m: Morphism) -> list[ClassPDecomposition]:
    """All class P decompositions, shortest ``p`` first, prefix form before suffix form.

    With ``p`` empty both forms coincide and only the prefix form is listed.
    """
    if m.erasing:
        raise WordError("class P detection expects a non-erasing morphism")
    images = m.images
    found = []
    prefix = _common_prefix(images)
    suffix = _common_prefix([im[::-1] for im in images])[::-1]
    for n in range(0, max(len(prefix), len(suffix)) + 1):
        if n <= len(prefix):
            p = prefix[:n]
            qs = tuple(im[n:] for im in images)
            if is_palindrome(p) and all(map(is_palindrome, qs)) and (n or all(qs)):
                found.append(ClassPDecomposition(PREFIX, p, qs))
        if 0 < n <= len(suffix):
            p = suffix[len(suffix) - n:]
            qs = tuple(im[:len(im) - n] for im in images)
            if is_palindrome(p) and all(map(is_palindrome, qs)):
                found.append(ClassPDecomposition(SUFFIX, p, qs))
    return found


def is_class_p(m: Morphism) -> bool:
    return bool(detect_class_p(m))


def shift_conjugate(m: Morphism, x: Word, side: str = PREFIX) -> Morphism:
    """Move a common prefix ``x`` of all images to the end (or a common suffix to the front)."""
    if not x:
        raise WordError("the shifted word must be non-empty")
    if side == PREFIX:
        if not all(im.startswith(x) for im in m.images):
            raise WordError("x is not a common prefix of the images")
        images = tuple(im[len(x):] + x for im in m.images)
    elif side == SUFFIX:
        if not all(im.endswith(x) for im in m.images):
            raise WordError("x is not a common suffix of the images")
        images = tuple(x + im[:len(im) - len(x)] for im in m.images)
    else:
        raise ValueError(f"unknown side {side!r}")
    shifted = Morphism(m.alphabet, images)
    if is_primitive(m) and not is_primitive(shifted):
        raise AssertionError("shift conjugation lost primitivity")  # cannot happen
    return shifted


def prolongable_power(m: Morphism, max_power: int | None = None) -> tuple[int, int] | None:
    """Smallest ``(ℓ, letter)`` with ``m^ℓ(letter)`` starting with ``letter``, length >= 2."""
    max_power = m.alphabet.size if max_power is None else max_power
    first = [im[0] for im in m.images]
    lengths_grow = not m.erasing
    for ell in range(1, max_power + 1):
        for a in range(m.alphabet.size):
            b = a
            for _ in range(ell):
                b = first[b]
            if b == a and lengths_grow and len(m.power(ell).images[a]) >= 2:
                return ell, a
    return None


def factor_set(w: Word, k: int) -> set[Word]:
    return {w[i:i + k] for i in range(len(w) - k + 1)}


@dataclass(frozen=True)
class NormalizedClassP:
    morphism: Morphism
    power: int
    seed: int
    decomposition: ClassPDecomposition
    original: ClassPDecomposition


def normalize_class_p(m: Morphism, test_length: int = 12, sample: int = 20000) -> NormalizedClassP:
    """Conjugate a primitive class P morphism to one whose palindrome ``p`` has length 0 or 1.

    ``p = r r~`` gives ``a -> r~ q_a r`` (every image a palindrome); ``p = r b r~``
    gives ``a -> b r~ q_a r`` (or ``r~ q_a r b`` for the suffix form).  The
    fixed points of the original and of a prolongable power of the result are
    compared on all factors of length ``test_length``.
    """
    if not is_primitive(m):
        raise ClassPError("normalization expects a primitive morphism")
    decomps = detect_class_p(m)
    if not decomps:
        raise ClassPError(f"{m} is not in class P")
    d = decomps[0]
    p, half = d.p, len(d.p) // 2
    r = p[:half]
    rr = r[::-1]
    if len(p) <= 1:
        result, new = m, d
    elif len(p) % 2 == 0:
        q = tuple(rr + qa + r for qa in d.q)
        result = Morphism(m.alphabet, q)
        new = ClassPDecomposition(PREFIX, b"", q)
    else:
        b = p[half:half + 1]
        q = tuple(rr + qa + r for qa in d.q)
        if d.side == PREFIX:
            result = Morphism(m.alphabet, tuple(b + x for x in q))
            new = ClassPDecomposition(PREFIX, b, q)
        else:
            result = Morphism(m.alphabet, tuple(x + b for x in q))
            new = ClassPDecomposition(SUFFIX, b, q)
    if len(p) > 1:
        # the same morphism through the generic conjugation
        via_shift = shift_conjugate(m, r if d.side == PREFIX else rr, d.side)
        if via_shift.images != result.images:
            raise AssertionError("normalization disagrees with shift conjugation")
    if not new.reassembles(result) or len(new.p) > 1:
        raise AssertionError("normalized decomposition does not reassemble")

    found = prolongable_power(result)
    if found is None:
        raise ClassPError(f"no power up to {m.alphabet.size} of {result} is prolongable")
    ell, seed = found
    orig = prolongable_power(m)
    if orig is None:
        raise ClassPError(f"no power up to {m.alphabet.size} of {m} is prolongable")
    u = fixed_point_prefix(m.power(orig[0]), orig[1], sample)
    v = fixed_point_prefix(result.power(ell), seed, sample)
    if factor_set(u, test_length) != factor_set(v, test_length):
        raise ClassPError("normalized fixed point has different factors")
    return NormalizedClassP(result, ell, seed, new, d)


@dataclass(frozen=True)
class PeriodicClassP:
    morphism: Morphism
    a: Word
    b: Word


def periodic_class_p(w: Word, alphabet: Alphabet) -> PeriodicClassP | None:
    """Class P morphism ``τ(x) = w = A B`` fixing ``www...`` when that sequence
    has palindromic factors of length ``>= 2|w|``."""
    if not w:
        raise WordError("period word must be non-empty")
    alphabet.check(w)
    n = len(w)
    window = w * 6
    # a long palindrome has a central factor of length 2n or 2n + 1
    long_pal = any(is_palindrome(window[i:i + k]) for k in (2 * n, 2 * n + 1) for i in range(n))
    if not long_pal:
        return None
    i = (w + w).find(w[::-1])
    if i < 0:
        raise AssertionError("reversed period missing from ww")  # cannot happen
    a, b = w[:i], w[i:]
    if not (is_palindrome(a) and is_palindrome(b)):
        raise AssertionError("split parts are not palindromes")  # cannot happen
    tau = Morphism(alphabet, (w,) * alphabet.size)
    return PeriodicClassP(tau, a, b)
