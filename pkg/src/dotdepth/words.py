"""Alphabets, finite words and ultimately periodic infinite words.

Finite words are plain ``str`` values whose characters are the letters.
An infinite word ``u v^omega`` is a :class:`UPWord`.  The empty word is the
empty string; it is never represented as a :class:`UPWord` (``1^omega = 1``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

__all__ = [
    "Alphabet",
    "UPWord",
    "AnyWord",
    "alph_k",
    "up_canonicalize",
    "up_prefix",
    "parse_upword",
    "primitive_root",
]


@dataclass(frozen=True)
class Alphabet:
    """An ordered, nonempty, duplicate-free set of single-character letters."""

    letters: tuple[str, ...]

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        if not letters:
            raise ValueError("alphabet must be nonempty")
        if len(set(letters)) != len(letters):
            raise ValueError(f"duplicate letters in alphabet {letters!r}")
        for a in letters:
            if not isinstance(a, str) or len(a) != 1 or not a.isprintable() or a.isspace():
                raise ValueError(f"letter {a!r} is not a single visible character")
            if a in ":()*$^\"":
                raise ValueError(f"letter {a!r} is reserved by the text syntaxes")

    @classmethod
    def of(cls, letters: Iterable[str]) -> "Alphabet":
        return cls(tuple(letters))

    def __iter__(self):
        return iter(self.letters)

    def __len__(self):
        return len(self.letters)

    def __contains__(self, a):
        return a in self.letters

    def check_word(self, w: str) -> str:
        for a in w:
            if a not in self.letters:
                raise ValueError(f"letter {a!r} of {w!r} not in alphabet {''.join(self.letters)!r}")
        return w


@dataclass(frozen=True)
class UPWord:
    """The infinite word ``stem · loop^omega``; ``loop`` must be nonempty."""

    stem: str
    loop: str

    def __post_init__(self):
        if not self.loop:
            raise ValueError("UPWord loop must be nonempty (use a finite word for 1^omega)")

    def __str__(self):
        return f"{self.stem}:{self.loop}"

    def letter(self, i: int) -> str:
        """Letter at 0-based index ``i``."""
        if i < len(self.stem):
            return self.stem[i]
        return self.loop[(i - len(self.stem)) % len(self.loop)]

    def prefix(self, n: int) -> str:
        return up_prefix(self, n)


AnyWord = Union[str, UPWord]


def parse_upword(text: str) -> UPWord:
    """Parse ``"stem:loop"``."""
    if text.count(":") != 1:
        raise ValueError(f"ultimately periodic word must look like 'stem:loop', got {text!r}")
    stem, loop = text.split(":")
    return UPWord(stem, loop)


def up_prefix(w: UPWord, n: int) -> str:
    if n <= len(w.stem):
        return w.stem[:n]
    rest = n - len(w.stem)
    reps = -(-rest // len(w.loop))
    return w.stem + (w.loop * reps)[:rest]


def primitive_root(v: str) -> str:
    n = len(v)
    for p in range(1, n + 1):
        if n % p == 0 and v[:p] * (n // p) == v:
            return v[:p]
    return v


def up_canonicalize(w: UPWord) -> UPWord:
    """Primitive loop, shortest stem.  Equal words have equal canonical forms."""
    stem, loop = w.stem, primitive_root(w.loop)
    while stem and stem[-1] == loop[-1]:
        stem, loop = stem[:-1], loop[-1] + loop[:-1]
    return UPWord(stem, loop)


def alph_k(w: AnyWord, k: int) -> frozenset[str]:
    """Set of length-``k`` factors of ``w``."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    if isinstance(w, UPWord):
        # any window of length k lies inside one extra copy of the loop
        w = w.stem + w.loop * (k + 1)
    return frozenset(w[i:i + k] for i in range(len(w) - k + 1))
