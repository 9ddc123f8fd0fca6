"""Alphabets, words and morphisms.

Words are ``bytes`` objects holding symbol indices (``0 .. size-1``); the
:class:`Alphabet` they belong to carries the letter names.  Keeping words as
plain bytes makes slicing, hashing, reversal and substring search run at C
speed, which matters once prefixes reach a million symbols.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

Word = bytes

EMPTY: Word = b""


class WordError(ValueError):
    """A word or morphism is malformed for the requested operation."""


@dataclass(frozen=True)
class Alphabet:
    letters: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        letters = tuple(str(a) for a in self.letters)
        if not letters:
            raise WordError("alphabet must contain at least one letter")
        if len(set(letters)) != len(letters):
            raise WordError(f"duplicate letters in alphabet {letters}")
        if len(letters) > 255:
            raise WordError("alphabets are limited to 255 letters")
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "_index", {a: i for i, a in enumerate(letters)})

    @classmethod
    def of(cls, letters: Iterable[str] | str) -> "Alphabet":
        """``Alphabet.of("01")`` or ``Alphabet.of(["a", "b"])``."""
        return cls(tuple(letters))

    @property
    def size(self) -> int:
        return len(self.letters)

    @property
    def compact(self) -> bool:
        # words can be written without separators
        return all(len(a) == 1 for a in self.letters)

    def index(self, letter: str) -> int:
        try:
            return self._index[letter]
        except KeyError:
            raise WordError(f"letter {letter!r} not in alphabet {self.letters}") from None

    def encode(self, text: str | Sequence[str]) -> Word:
        """Turn ``"0100"`` (compact alphabets) or a token list into a word.

        Strings containing whitespace are split into tokens, so multi-character
        letters can be written ``"10 2 10"``.
        """
        if isinstance(text, str):
            tokens = text.split() if (not self.compact or any(c.isspace() for c in text)) else list(text)
        else:
            tokens = list(text)
        return bytes(self.index(t) for t in tokens)

    def decode(self, word: Word) -> str:
        sep = "" if self.compact else " "
        try:
            return sep.join(self.letters[c] for c in word)
        except IndexError:
            raise WordError("symbol index outside alphabet") from None

    def check(self, word: Word) -> Word:
        if word and max(word) >= self.size:
            raise WordError(f"symbol index {max(word)} outside alphabet of size {self.size}")
        return word


BINARY = Alphabet(("0", "1"))


def reverse(w: Word) -> Word:
    return w[::-1]


def is_palindrome(w: Word) -> bool:
    return w == w[::-1]


@dataclass(frozen=True)
class Morphism:
    """A morphism of the free monoid, given by one image per letter.

    ``target`` defaults to ``alphabet``; a different target turns the map into
    a letter-to-word coding (used for pointwise and word-valued images).
    """

    alphabet: Alphabet
    images: tuple[Word, ...]
    target: Alphabet | None = None

    def __post_init__(self):
        images = tuple(bytes(im) for im in self.images)
        if len(images) != self.alphabet.size:
            raise WordError(
                f"morphism needs {self.alphabet.size} images, got {len(images)}")
        if self.target is None:
            object.__setattr__(self, "target", self.alphabet)
        for im in images:
            self.target.check(im)
        object.__setattr__(self, "images", images)

    @classmethod
    def from_rules(cls, rules: Mapping[str, str | Sequence[str]],
                   alphabet: Alphabet | None = None,
                   target: Alphabet | None = None) -> "Morphism":
        """Build from ``{"0": "01", "1": "00"}``.

        Without an explicit alphabet the letters are taken in rule order.
        """
        if alphabet is None:
            alphabet = Alphabet(tuple(rules))
        tgt = target or alphabet
        images = []
        for a in alphabet.letters:
            if a not in rules:
                raise WordError(f"no image given for letter {a!r}")
            images.append(tgt.encode(rules[a]))
        return cls(alphabet, tuple(images), target)

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def __str__(self):
        parts = [f"{a}->{self.target.decode(im)}" for a, im in zip(self.alphabet.letters, self.images)]
        return ", ".join(parts)

    @property
    def is_endomorphism(self) -> bool:
        return self.target == self.alphabet

    @property
    def uniform_length(self) -> int | None:
        lengths = {len(im) for im in self.images}
        return lengths.pop() if len(lengths) == 1 else None

    @property
    def erasing(self) -> bool:
        return any(len(im) == 0 for im in self.images)

    @property
    def primitive(self) -> bool:
        return is_primitive(self)

    def incidence_matrix(self) -> np.ndarray:
        """``M[a, b]`` = number of occurrences of ``b`` in the image of ``a``."""
        m = np.zeros((self.alphabet.size, self.target.size), dtype=np.int64)
        for a, im in enumerate(self.images):
            for b in im:
                m[a, b] += 1
        return m

    def compose(self, other: "Morphism") -> "Morphism":
        """``self ∘ other``: apply ``other`` first."""
        if other.target != self.alphabet:
            raise WordError("cannot compose: alphabets do not match")
        return Morphism(other.alphabet, tuple(apply(self, im) for im in other.images), self.target)

    def power(self, n: int) -> "Morphism":
        if n < 1:
            raise WordError("morphism powers start at 1")
        result = self
        for _ in range(n - 1):
            result = self.compose(result)
        return result


def apply(m: Morphism, w: Word) -> Word:
    """Image of ``w`` under ``m`` (concatenation of letter images)."""
    images = m.images
    try:
        return b"".join([images[c] for c in w])
    except IndexError:
        raise WordError("word contains a symbol outside the morphism's alphabet") from None


def fixed_point_prefix(m: Morphism, seed: int, n: int) -> Word:
    """First ``n`` symbols of the fixed point of ``m`` starting with ``seed``."""
    if not m.is_endomorphism:
        raise WordError("fixed points need an endomorphism")
    if m.erasing:
        raise WordError("fixed points are only generated for non-erasing morphisms")
    if not 0 <= seed < m.alphabet.size:
        raise WordError(f"seed {seed} outside alphabet")
    im = m.images[seed]
    if len(im) < 2 or im[0] != seed:
        raise WordError(
            f"morphism is not prolongable on {m.alphabet.letters[seed]!r}: image is "
            f"{m.target.decode(im)!r}")
    if n <= 0:
        return EMPTY
    lengths = [len(x) for x in m.images]
    w = bytes([seed])
    while len(w) < n:
        # only the part of w whose image reaches position n is expanded
        total, j = 0, 0
        while j < len(w) and total < n:
            total += lengths[w[j]]
            j += 1
        w = apply(m, w[:j])
    return w[:n]


def is_primitive(m: Morphism) -> bool:
    """Some power of the incidence matrix is entrywise positive.

    Powers up to ``(size-1)**2 + 1`` are enough for a primitive matrix.
    """
    if not m.is_endomorphism:
        raise WordError("primitivity is defined for endomorphisms")
    if m.erasing:
        raise WordError("primitivity is checked on non-erasing morphisms")
    base = m.incidence_matrix() > 0
    size = m.alphabet.size
    power = base.copy()
    for _ in range((size - 1) ** 2 + 1):
        if power.all():
            return True
        power = (power.astype(np.int64) @ base.astype(np.int64)) > 0
    return False


def cinf_derivative(w: Word) -> Word:
    """Derivative of a word over ``{1, 2}`` (indices 0 and 1 of :data:`KOLAKOSKI_ALPHABET`).

    Run lengths are read off left to right; the first and last run are
    dropped when they have length one.
    """
    if not w:
        return EMPTY
    if max(w) > 1:
        raise WordError("derivative is defined on words over {1, 2}")
    runs = []
    prev, count = w[0], 0
    for c in w:
        if c == prev:
            count += 1
        else:
            runs.append(count)
            prev, count = c, 1
    runs.append(count)
    if max(runs) > 2:
        raise WordError("word is not differentiable: it contains 111 or 222")
    if runs[0] == 1:
        runs = runs[1:]
    if runs and runs[-1] == 1:
        runs = runs[:-1]
    return bytes(r - 1 for r in runs)


KOLAKOSKI_ALPHABET = Alphabet(("1", "2"))
