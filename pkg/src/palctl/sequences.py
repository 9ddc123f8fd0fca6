"""Named generators of infinite sequences, exposed through finite prefixes."""

from __future__ import annotations

import itertools
import threading
from typing import Callable, Iterable, Iterator, Mapping, Sequence

import numpy as np

from .words import (
    BINARY,
    EMPTY,
    KOLAKOSKI_ALPHABET,
    Alphabet,
    Morphism,
    Word,
    WordError,
    fixed_point_prefix,
)


class SourceError(ValueError):
    """Bad parameters for a sequence source."""


class BudgetError(MemoryError):
    """A generator was asked for more symbols than it is willing to build."""


class SequenceSource:
    """Deterministic producer of prefixes of one infinite sequence.

    Subclasses implement :meth:`_generate`; the longest prefix produced so
    far is cached behind a lock so a source may be shared across threads.
    """

    kind = "abstract"
    # stabilization never starts below this length (long constant stretches
    # would otherwise look stable)
    min_prefix = 0
    # optional k -> prefix length known to contain every factor of length k;
    # counts on shorter prefixes are never reported stable
    factor_horizon: Callable[[int], int] | None = None

    def __init__(self, name: str, alphabet: Alphabet, params: dict | None = None):
        self.name = name
        self.alphabet = alphabet
        self.params = dict(params or {})
        self._cache = EMPTY
        self._lock = threading.Lock()

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"

    def describe(self) -> dict:
        return {"name": self.name, "kind": self.kind, "alphabet": list(self.alphabet.letters),
                **self.params}

    def prefix(self, n: int) -> Word:
        if n < 0:
            raise SourceError("prefix length must be nonnegative")
        with self._lock:
            if len(self._cache) < n:
                word = self._generate(max(n, 2 * len(self._cache)))
                if len(word) < n:
                    raise SourceError(f"{self.name}: generator returned only {len(word)} symbols")
                self._cache = word
            return self._cache[:n]

    def _generate(self, n: int) -> Word:
        raise NotImplementedError


class MorphicSource(SequenceSource):
    kind = "morphic"

    def __init__(self, name: str, morphism: Morphism, seed: int | str = 0):
        if isinstance(seed, str):
            seed = morphism.alphabet.index(seed)
        # fail at construction rather than on first use
        fixed_point_prefix(morphism, seed, 1)
        super().__init__(name, morphism.alphabet,
                         {"morphism": str(morphism), "seed": morphism.alphabet.letters[seed]})
        self.morphism = morphism
        self.seed = seed

    def _generate(self, n):
        return fixed_point_prefix(self.morphism, self.seed, n)


class FunctionSource(SequenceSource):
    """Wraps a plain ``n -> prefix`` function."""

    def __init__(self, name: str, alphabet: Alphabet, fn: Callable[[int], Word],
                 kind: str = "explicit-recurrence", params: dict | None = None):
        super().__init__(name, alphabet, params)
        self.kind = kind
        self._fn = fn

    def _generate(self, n):
        return self._fn(n)


class _Terms:
    """Lazily materialized list of terms from a finite or infinite iterable."""

    def __init__(self, values: Iterable[int]):
        self._it: Iterator[int] = iter(values)
        self._terms: list[int] = []
        self._done = False

    def get(self, i: int) -> int | None:
        while len(self._terms) <= i and not self._done:
            try:
                self._terms.append(int(next(self._it)))
            except StopIteration:
                self._done = True
        return self._terms[i] if i < len(self._terms) else None

    def head(self, n: int = 8) -> list[int]:
        self.get(n - 1)
        return self._terms[:n]


def _values(text: str, digits: bool) -> list[int]:
    if digits and "," not in text:
        items = list(text.strip())
    else:
        items = [p.strip() for p in text.split(",") if p.strip()]
    try:
        return [int(p) for p in items]
    except ValueError:
        raise SourceError(f"cannot parse {text!r}") from None


def parse_expansion(text: str, digits: bool = False) -> Iterable[int]:
    """Finite or eventually periodic integer streams.

    ``"1,2,3"`` is finite, ``"1,2,..."`` repeats everything listed and
    ``"2,(1,3)"`` is 2 followed by 1, 3, 1, 3, ...  With ``digits`` a
    comma-free string such as ``"0(01)"`` is read one digit per term.
    """
    text = text.strip()
    if text.endswith("..."):
        head, period = "", text[:-3]
    elif text.endswith(")") and "(" in text:
        head, period = text[:-1].split("(", 1)
    else:
        head, period = text, ""
    if "(" in head or ")" in head or "(" in period:
        raise SourceError(f"cannot parse {text!r}")
    first = _values(head, digits) if head.strip(" ,") else []
    cycle = _values(period, digits) if period.strip(" ,") else []
    if text.endswith("...") or text.endswith(")"):
        if not cycle:
            raise SourceError(f"empty repeating part in {text!r}")
        return itertools.chain(first, itertools.cycle(cycle))
    if not first:
        raise SourceError("empty expansion")
    return first


# -- Sturmian ------------------------------------------------------------------

def sturmian(cf: Iterable[int], name: str | None = None) -> SequenceSource:
    """Characteristic Sturmian word built from standard words.

    With ``s_{-1} = 1``, ``s_0 = 0`` and ``s_n = s_{n-1}^{d_n} s_{n-2}``, the
    directive sequence ``cf = (d_1, d_2, ...)`` yields the characteristic word
    of slope ``[0; d_1 + 1, d_2, d_3, ...]``.  ``cf = 1, 1, 1, ...`` gives the
    Fibonacci word.  Only integer concatenation is involved.
    """
    terms = _Terms(cf)

    def generate(n):
        prev, cur = b"\x01", b"\x00"
        i = 0
        while len(cur) < n:
            d = terms.get(i)
            if d is None:
                raise SourceError(
                    f"expansion too short: {i} terms give only {len(cur)} symbols, {n} requested")
            if d < 0 or (d == 0 and i > 0):
                raise SourceError(f"partial quotient {d} at position {i + 1} is not allowed")
            prev, cur = cur, cur * d + prev
            i += 1
        return cur[:n]

    label = name or "sturmian[" + ",".join(map(str, terms.head(6))) + ",...]"
    return FunctionSource(label, BINARY, generate, kind="rotation",
                          params={"cf_head": terms.head(12)})


# -- paperfolding and Rudin-Shapiro ---------------------------------------------

CLASSICAL_INSTRUCTIONS = "0(01)"  # i_0 = 0 then 0, 1, 0, 1, ...


def classical_instructions() -> Iterator[int]:
    yield 0
    yield from itertools.cycle((0, 1))


def _paperfold_values(terms: _Terms, n: int) -> np.ndarray:
    """``u_1 .. u_n`` from ``u_{2^m (2j+1)} = j + i_m mod 2``."""
    if n == 0:
        return np.zeros(0, dtype=np.uint8)
    idx = np.arange(1, n + 1, dtype=np.int64)
    low = idx & -idx                        # 2^m
    m = np.log2(low).astype(np.int64)       # exact for powers of two
    j = (idx // low) >> 1
    need = int(m.max()) + 1
    instr = []
    for i in range(need):
        t = terms.get(i)
        if t is None:
            raise SourceError(f"instruction stream too short: {need} instructions needed for n={n}")
        if t not in (0, 1):
            raise SourceError("instructions must be 0 or 1")
        instr.append(t)
    return ((j + np.asarray(instr, dtype=np.int64)[m]) & 1).astype(np.uint8)


def paperfolding(instructions: Iterable[int] | None = None, name: str | None = None) -> SequenceSource:
    """Paperfolding sequence ``u_1 u_2 ...`` (the prefix starts at index 1)."""
    terms = _Terms(classical_instructions() if instructions is None else instructions)
    label = name or "paperfolding[" + "".join(map(str, terms.head(8))) + "...]"
    return FunctionSource(label, BINARY, lambda n: _paperfold_values(terms, n).tobytes(),
                          kind="paperfolding", params={"instructions_head": terms.head(16)})


def rudin_shapiro_generalized(instructions: Iterable[int] | None = None,
                              name: str | None = None) -> SequenceSource:
    """``v_0 = 0``, ``v_n = u_1 + ... + u_n mod 2`` for the paperfolding ``u``."""
    terms = _Terms(classical_instructions() if instructions is None else instructions)

    def generate(n):
        if n == 0:
            return EMPTY
        u = _paperfold_values(terms, n - 1)
        v = np.zeros(n, dtype=np.uint8)
        v[1:] = np.cumsum(u, dtype=np.int64) & 1
        return v.tobytes()

    label = name or "rudin-shapiro[" + "".join(map(str, terms.head(8))) + "...]"
    return FunctionSource(label, BINARY, generate, kind="paperfolding",
                          params={"instructions_head": terms.head(16)})


# -- derived transforms ------------------------------------------------------------

def _require_binary(s: SequenceSource):
    if s.alphabet.size != 2:
        raise SourceError(f"{s.name} is not binary")


def rote_from_sturmian(beta: SequenceSource, w0: int = 0, name: str | None = None) -> SequenceSource:
    """Binary sequence whose first difference mod 2 is ``beta``."""
    _require_binary(beta)
    if w0 not in (0, 1):
        raise SourceError("initial letter must be 0 or 1")

    def generate(n):
        if n == 0:
            return EMPTY
        b = np.frombuffer(beta.prefix(n - 1), dtype=np.uint8)
        w = np.empty(n, dtype=np.uint8)
        w[0] = w0
        w[1:] = (np.cumsum(b, dtype=np.int64) + w0) & 1
        return w.tobytes()

    return FunctionSource(name or f"rote({beta.name})", BINARY, generate, kind="derived-transform",
                          params={"parent": beta.name, "w0": w0})


def difference_mod2(s: SequenceSource, name: str | None = None) -> SequenceSource:
    """``(Δs)_n = s_{n+1} - s_n mod 2``."""
    _require_binary(s)

    def generate(n):
        a = np.frombuffer(s.prefix(n + 1), dtype=np.uint8)
        return (a[1:] ^ a[:-1]).tobytes()

    return FunctionSource(name or f"diff({s.name})", BINARY, generate, kind="derived-transform",
                          params={"parent": s.name})


def pointwise_image(s: SequenceSource, letter_map: Morphism | Mapping[str, str | Sequence[str]],
                    target: Alphabet | None = None, name: str | None = None) -> SequenceSource:
    """Recode ``s`` letter by letter; images may be words (non-erasing)."""
    if not isinstance(letter_map, Morphism):
        missing = set(s.alphabet.letters) - set(letter_map)
        if missing:
            raise SourceError(f"letter map is not total: missing {sorted(missing)}")
        if target is None:
            letters = []
            for img in letter_map.values():
                for t in (img.split() if isinstance(img, str) and " " in img else img):
                    if t not in letters:
                        letters.append(t)
            target = Alphabet(tuple(sorted(letters)))
        letter_map = Morphism.from_rules(letter_map, alphabet=s.alphabet, target=target)
    elif letter_map.alphabet != s.alphabet:
        raise SourceError("letter map alphabet differs from the source alphabet")
    if letter_map.erasing:
        raise SourceError("letter map must not erase letters")
    images = letter_map.images

    def generate(n):
        # each letter contributes at least one symbol
        return b"".join([images[c] for c in s.prefix(n)])[:n]

    return FunctionSource(name or f"image({s.name})", letter_map.target, generate,
                          kind="derived-transform",
                          params={"parent": s.name, "map": str(letter_map)})


# -- explicit recurrences -------------------------------------------------------------

def kolakoski(n: int) -> Word:
    """Kolakoski word over {1, 2} starting with 2 (symbols as indices 0/1)."""
    if n <= 0:
        return EMPTY
    seq = bytearray([1, 1])
    i, nxt = 1, 0
    while len(seq) < n:
        seq.extend([nxt] * (seq[i] + 1))
        nxt ^= 1
        i += 1
    return bytes(seq[:n])


def champernowne_binary(n: int) -> Word:
    """Concatenation of the binary numerals 0, 1, 10, 11, 100, ..."""
    out = bytearray(b"\x00")
    k = 1
    while len(out) < n:
        out.extend(int(c) for c in bin(k)[2:])
        k += 1
    return bytes(out[:n])


def remcor_word(j: int, max_len: int | None = None) -> Word:
    """The word ``w_j`` of the slowly growing recurrence (``w_0 = 1``).

    ``w_{j+1} = w_j x_1 ... x_N`` with ``N = 2^(2^j - 1)`` and
    ``x_i = 0^(2^(2^(j+1)) + 2 - 4i) rev(w_j) 0^(2^(2^(j+1)) - 4i) w_j``.
    ``max_len`` truncates (the result is then a prefix of ``w_j``).
    """
    if j < 0:
        raise SourceError("j must be nonnegative")
    if max_len is None:
        if remcor_length(j) > 1 << 26:
            raise BudgetError(f"|w_{j}| = {remcor_length(j)} is too large to materialize")
        max_len = remcor_length(j)
    w = b"\x01"
    for level in range(j):
        if len(w) >= max_len:
            break
        big = 1 << (1 << (level + 1))
        rw = w[::-1]
        parts = [w]
        total = len(w)
        for i in range(1, (1 << ((1 << level) - 1)) + 1):
            parts.append(b"\x00" * (big + 2 - 4 * i) + rw + b"\x00" * (big - 4 * i) + w)
            total += len(parts[-1])
            if total >= max_len:
                break
        w = b"".join(parts)
    return w[:max_len]


def remcor_length(j: int) -> int:
    """``|w_j|`` from the length recurrence, without building the word."""
    length = 1
    for level in range(j):
        big = 1 << (1 << (level + 1))
        count = 1 << ((1 << level) - 1)
        # sum over i of (big + 2 - 4i) + (big - 4i) + 2|w|
        length += count * (2 * big + 2 + 2 * length) - 8 * (count * (count + 1) // 2)
    return length


def _remcor_prefix(n: int) -> Word:
    j = 0
    while remcor_length(j) < n:
        j += 1
    if j > 5:
        raise BudgetError(f"remcor prefix of length {n} needs w_{j}")
    return remcor_word(j, max_len=n)


def _ruler(d: int) -> int:
    return (d & -d).bit_length() - 1


PANSIOT_SEPARATOR = 2


def pansiot_cover(k_max: int) -> Word:
    """A word over {0, 1, 2} whose factors avoiding the separator ``2`` of
    length ``<= k_max`` are exactly those of the 0 -> 001, 1 -> 1 fixed point.

    The fixed point is the block product ``00 1^(1 + v(n))`` over ``n >= 1``
    (``v`` the 2-adic valuation).  A factor of length ``<= k_max`` meets at most
    ``M = k_max // 3 + 2`` consecutive blocks, and a window of ``M <= 2^t`` block
    indices holds at most one multiple of ``2^t``.  So it suffices to list,
    for every valuation ``V >= t`` of that multiple, the blocks at offsets
    ``-2^t < d < 2^t`` around it, with runs capped at ``k_max`` (a longer run
    only matters through its first ``k_max`` symbols).
    """
    if k_max < 1:
        raise SourceError("k_max must be at least 1")
    blocks = k_max // 3 + 2
    t = max(1, (blocks - 1).bit_length())
    half = 1 << t
    side = [min(k_max, 1 + _ruler(d)) for d in range(1, half)]
    left = b"".join(b"\x00\x00" + b"\x01" * r for r in reversed(side))
    right = b"".join(b"\x00\x00" + b"\x01" * r for r in side)
    segments = []
    for v in range(t, max(t, k_max - 1) + 1):
        centre = b"\x00\x00" + b"\x01" * min(k_max, 1 + v)
        segments.append(left + centre + right)
    return bytes([PANSIOT_SEPARATOR]).join(segments)


def pansiot_factor_horizon(k: int) -> int:
    """Prefix length of the 0 -> 001, 1 -> 1 fixed point holding all factors of length ``k``.

    Every such factor sits within ``half`` blocks of block ``2^V`` for some
    ``V <= max(t, k - 1)`` (notation of :func:`pansiot_cover`), and the first
    ``N`` blocks have total length at most ``4 N``.
    """
    blocks = k // 3 + 2
    t = max(1, (blocks - 1).bit_length())
    return 4 * ((1 << max(t, k - 1)) + (1 << t))


def _pansiot():
    src = morphic("pansiot-quadratic", PANSIOT_QUADRATIC)
    src.factor_horizon = pansiot_factor_horizon
    return src


# -- registry ---------------------------------------------------------------------------

def morphic(name: str, rules: Mapping[str, str], seed: str | int = 0) -> MorphicSource:
    return MorphicSource(name, Morphism.from_rules(rules), seed)


PERIOD_DOUBLING = {"0": "01", "1": "00"}
THUE_MORSE_SQUARED = {"a": "abba", "b": "baab"}
FIBONACCI = {"0": "01", "1": "0"}
ROTE_MORPHIC = {"0": "001", "1": "111"}
V_SEQUENCE = {"0": "001", "1": "101"}
CHACON = {"0": "0010", "1": "1"}
PANSIOT_QUADRATIC = {"0": "001", "1": "1"}
LOGLOG = {"0": "010", "1": "11"}
IMAGE_EXAMPLE = {"a": "ad", "b": "bac", "c": "bacab", "d": "baca"}
IMAGE_EXAMPLE_MAP = {"a": "0", "b": "1", "c": "10110", "d": "101"}
SCRAMBLER = {"0": "011001", "1": "001011"}


def _image_example():
    base = morphic("image-example-base", IMAGE_EXAMPLE, "a")
    return pointwise_image(base, IMAGE_EXAMPLE_MAP, target=BINARY, name="image-example")


def _scrambler():
    base = FunctionSource("champernowne-binary", BINARY, champernowne_binary)
    return pointwise_image(base, SCRAMBLER, target=BINARY, name="scrambler-image")


def _remcor_limit():
    src = FunctionSource("remcor-limit", BINARY, _remcor_prefix)
    # past w_3 come zero runs of length about 2^16; start beyond two of them
    src.min_prefix = 1 << 19
    return src


_BUILTINS: dict[str, Callable[[], SequenceSource]] = {
    "period-doubling": lambda: morphic("period-doubling", PERIOD_DOUBLING),
    "thue-morse-squared": lambda: morphic("thue-morse-squared", THUE_MORSE_SQUARED, "a"),
    "fibonacci": lambda: morphic("fibonacci", FIBONACCI),
    "rote-morphic": lambda: morphic("rote-morphic", ROTE_MORPHIC),
    "v-sequence": lambda: morphic("v-sequence", V_SEQUENCE),
    "chacon": lambda: morphic("chacon", CHACON),
    "kolakoski": lambda: FunctionSource("kolakoski", KOLAKOSKI_ALPHABET, kolakoski,
                                        kind="self-runlength"),
    "pansiot-quadratic": _pansiot,
    "loglog": lambda: morphic("loglog", LOGLOG),
    "champernowne-binary": lambda: FunctionSource("champernowne-binary", BINARY,
                                                  champernowne_binary),
    "scrambler-image": _scrambler,
    "remcor-limit": _remcor_limit,
    "image-example": _image_example,
    "paperfolding-classical": lambda: paperfolding(name="paperfolding-classical"),
    "rudin-shapiro": lambda: rudin_shapiro_generalized(name="rudin-shapiro"),
    "rote-fibonacci": lambda: rote_from_sturmian(
        sturmian(itertools.repeat(1), name="sturmian[1,1,1,...]"), name="rote-fibonacci"),
}

BUILTIN_NAMES = tuple(_BUILTINS)

# sources that are not ultimately periodic (every builtin is)
NON_PERIODIC_BUILTINS = BUILTIN_NAMES


def builtin(name: str) -> SequenceSource:
    """A fresh instance of a registered sequence."""
    try:
        return _BUILTINS[name]()
    except KeyError:
        raise SourceError(f"unknown source {name!r}; known: {', '.join(BUILTIN_NAMES)}") from None
