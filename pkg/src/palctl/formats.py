"""Morphism text files.

One directive per line, ``#`` starts a comment::

    alphabet: 0 1
    rule: 0 -> 0 1
    rule: 1 -> 0 0
    seed: 0

Image tokens are whitespace separated; over an alphabet of one-character
letters an image may also be written as one run (``rule: 0 -> 01``).
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .words import Alphabet, Morphism, WordError


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        self.message = message
        self.line = line
        self.path = path
        where = ":".join(str(x) for x in (path, line) if x is not None)
        super().__init__(f"{where}: {message}" if where else message)


@dataclass(frozen=True)
class MorphismFile:
    morphism: Morphism
    seed: int | None


def _image(tokens: list[str], alphabet: Alphabet, lineno: int) -> bytes:
    out = []
    for t in tokens:
        if t in alphabet.letters:
            out.append(alphabet.index(t))
        elif alphabet.compact and all(c in alphabet.letters for c in t):
            out.extend(alphabet.index(c) for c in t)
        else:
            raise FormatError(f"unknown letter {t!r} in image", lineno)
    return bytes(out)


def parse_morphism(text: str, path: str | None = None) -> MorphismFile:
    try:
        return _parse(text)
    except FormatError as e:
        if path is not None:
            raise FormatError(e.message, e.line, path) from None
        raise


def _parse(text: str) -> MorphismFile:
    alphabet = None
    rules: dict[str, tuple[list[str], int]] = {}
    seed_token = seed_line = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise FormatError(f"expected 'key: value', got {line!r}", lineno)
        key = key.strip().lower()
        if key == "alphabet":
            if alphabet is not None:
                raise FormatError("alphabet given twice", lineno)
            letters = value.split()
            try:
                alphabet = Alphabet(tuple(letters))
            except WordError as e:
                raise FormatError(str(e), lineno) from None
        elif key == "rule":
            lhs, arrow, rhs = value.partition("->")
            if not arrow:
                raise FormatError("rule needs '->'", lineno)
            letter = lhs.strip()
            if not letter or len(letter.split()) != 1:
                raise FormatError("rule must rewrite exactly one letter", lineno)
            if letter in rules:
                raise FormatError(f"second rule for {letter!r}", lineno)
            rules[letter] = (rhs.split(), lineno)
        elif key == "seed":
            if seed_token is not None:
                raise FormatError("seed given twice", lineno)
            seed_token, seed_line = value.strip(), lineno
            if not seed_token:
                raise FormatError("empty seed", lineno)
        else:
            raise FormatError(f"unknown directive {key!r}", lineno)
    if alphabet is None:
        raise FormatError("missing 'alphabet:' line")
    last = max((ln for _, ln in rules.values()), default=None)
    for letter, (_, lineno) in rules.items():
        if letter not in alphabet.letters:
            raise FormatError(f"rule for {letter!r}, which is not in the alphabet", lineno)
    missing = [a for a in alphabet.letters if a not in rules]
    if missing:
        raise FormatError(f"no rule for {', '.join(missing)}", last)
    images = tuple(_image(rules[a][0], alphabet, rules[a][1]) for a in alphabet.letters)
    morphism = Morphism(alphabet, images)
    seed = None
    if seed_token is not None:
        if seed_token not in alphabet.letters:
            raise FormatError(f"seed {seed_token!r} is not a letter", seed_line)
        seed = alphabet.index(seed_token)
    return MorphismFile(morphism, seed)


def read_morphism(path: str | Path) -> MorphismFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise FormatError(f"cannot read file: {e.strerror}", path=str(path)) from None
    return parse_morphism(text, str(path))


def format_morphism(m: Morphism, seed: int | None = None, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append("alphabet: " + " ".join(m.alphabet.letters))
    for a, im in zip(m.alphabet.letters, m.images):
        lines.append(f"rule: {a} -> " + " ".join(m.target.letters[c] for c in im))
    if seed is not None:
        lines.append(f"seed: {m.alphabet.letters[seed]}")
    return "\n".join(lines) + "\n"
