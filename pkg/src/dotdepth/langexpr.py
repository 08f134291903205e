"""Monomials ``w1 Γ* w2 ... Γ* wn`` with a tail, and Boolean combinations of them.

Tails: ``FINITE`` (finite words, ``wn`` is a suffix), ``INFTY`` (``... wn Γ^∞``)
and ``OMEGA`` (``... wn Γ^ω``).  Text syntax: blocks separated by ``*``,
followed by the tail token ``$``, ``...`` or ``^w``, e.g. ``"ab *a $"``.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Union

from . import logic as lg
from .sexp import Quoted, SexpError, read
from .words import Alphabet, AnyWord, UPWord, up_prefix

__all__ = [
    "Tail", "Monomial", "canonicalize", "degree", "member", "leftmost_match",
    "Mono", "And", "Or", "Not", "TrueC", "BoolComb", "boolcomb_member",
    "parse_monomial", "parse_boolcomb", "fingerprint", "universe_size",
    "canonical_monomials", "compile_to_sigma1", "ResourceError", "DEFAULT_MAX_UNIVERSE",
]

DEFAULT_MAX_UNIVERSE = 250_000


class ResourceError(RuntimeError):
    """The requested enumeration exceeds the configured cap."""


class Tail(enum.Enum):
    FINITE = "$"
    INFTY = "..."
    OMEGA = "^w"

    @classmethod
    def parse(cls, token: str) -> "Tail":
        for t in cls:
            if t.value == token:
                return t
        raise ValueError(f"unknown tail {token!r}; expected one of $, ..., ^w")


@dataclass(frozen=True)
class Monomial:
    blocks: tuple[str, ...]
    tail: Tail

    def __post_init__(self):
        blocks = tuple(self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if not blocks:
            raise ValueError("a monomial needs at least one block")
        if any(not b for b in blocks[1:-1]):
            raise ValueError(f"interior blocks must be nonempty: {blocks!r}")
        if not isinstance(self.tail, Tail):
            raise TypeError("tail must be a Tail")

    @property
    def degree(self) -> int:
        return sum(len(b) for b in self.blocks)

    def __str__(self):
        return " *".join(self.blocks) + " " + self.tail.value


def canonicalize(blocks: Iterable[str], tail: Tail) -> Monomial:
    """Drop empty interior blocks; with an infinite tail also a trailing empty one."""
    blocks = list(blocks)
    if not blocks:
        raise ValueError("a monomial needs at least one block")
    inner = [b for b in blocks[1:-1] if b]
    out = [blocks[0]] + inner + ([blocks[-1]] if len(blocks) > 1 else [])
    if tail is not Tail.FINITE and len(out) > 1 and not out[-1]:
        out.pop()
    return Monomial(tuple(out), tail)


def degree(m: Monomial) -> int:
    return m.degree


def leftmost_match(blocks, text: str, start: int = 0) -> Optional[list[int]]:
    """Start offsets of the blocks placed leftmost in order, first block at ``start``."""
    if not text.startswith(blocks[0], start):
        return None
    starts = [start]
    pos = start + len(blocks[0])
    for b in blocks[1:]:
        i = text.find(b, pos)
        if i < 0:
            return None
        starts.append(i)
        pos = i + len(b)
    return starts


def _finite_starts(m: Monomial, w: str) -> Optional[list[int]]:
    bl = m.blocks
    if len(bl) == 1:
        return [0] if w == bl[0] else None
    last = bl[-1]
    if len(w) < len(bl[0]) + len(last) or not w.endswith(last):
        return None
    cut = len(w) - len(last)
    starts = leftmost_match(bl[:-1], w[:cut])
    return None if starts is None else starts + [cut]


def search_window(m: Monomial, w: UPWord) -> int:
    """Prefix length of ``w`` inside which a leftmost match must lie."""
    d, n = m.degree, len(m.blocks)
    return len(w.stem) + (d + n + 1) * len(w.loop) + d


def match_positions(m: Monomial, w: AnyWord) -> Optional[list[int]]:
    """0-based start offsets of the leftmost placement, or ``None``."""
    if isinstance(w, UPWord):
        if m.tail is Tail.FINITE:
            return None
        return leftmost_match(m.blocks, up_prefix(w, search_window(m, w)))
    if m.tail is Tail.OMEGA:
        return None
    if m.tail is Tail.FINITE:
        return _finite_starts(m, w)
    return leftmost_match(m.blocks, w)


def member(m: Monomial, w: AnyWord) -> bool:
    return match_positions(m, w) is not None


# Boolean combinations -----------------------------------------------------

@dataclass(frozen=True)
class Mono:
    m: Monomial


@dataclass(frozen=True)
class And:
    parts: tuple

    def __init__(self, *parts):
        object.__setattr__(self, "parts", tuple(parts))


@dataclass(frozen=True)
class Or:
    parts: tuple

    def __init__(self, *parts):
        object.__setattr__(self, "parts", tuple(parts))


@dataclass(frozen=True)
class Not:
    arg: "BoolComb"


@dataclass(frozen=True)
class TrueC:
    pass


BoolComb = Union[Mono, And, Or, Not, TrueC]


def boolcomb_member(c: BoolComb, w: AnyWord) -> bool:
    if isinstance(c, Mono):
        return member(c.m, w)
    if isinstance(c, TrueC):
        return True
    if isinstance(c, Not):
        return not boolcomb_member(c.arg, w)
    if isinstance(c, And):
        return all(boolcomb_member(p, w) for p in c.parts)
    if isinstance(c, Or):
        return any(boolcomb_member(p, w) for p in c.parts)
    raise TypeError(f"not a Boolean combination: {c!r}")


def parse_monomial(text: str, alphabet: Optional[Alphabet] = None) -> Monomial:
    """Parse ``"ab *a $"``-style text; blocks are split on ``*``."""
    body, _, tail = text.strip().rpartition(" ")
    if not _:
        body, tail = "", text.strip()
    blocks = [b.strip() for b in body.split("*")]
    for b in blocks:
        if any(c.isspace() for c in b):
            raise ValueError(f"block {b!r} contains whitespace")
        if alphabet is not None:
            alphabet.check_word(b)
    return canonicalize(blocks, Tail.parse(tail))


def _build_bc(e, alphabet):
    if isinstance(e, list) and e and not isinstance(e[0], list):
        head, args = e[0], e[1:]
        if head == "mono" and len(args) == 1 and isinstance(args[0], Quoted):
            return Mono(parse_monomial(args[0], alphabet))
        if head == "true" and not args:
            return TrueC()
        if head == "not" and len(args) == 1:
            return Not(_build_bc(args[0], alphabet))
        if head in ("and", "or") and args:
            parts = [_build_bc(a, alphabet) for a in args]
            return And(*parts) if head == "and" else Or(*parts)
    raise ValueError(f"malformed Boolean combination near {e!r}")


def parse_boolcomb(text: str, alphabet: Optional[Alphabet] = None) -> BoolComb:
    """``(and (not (mono "a ...")) (mono "b $"))``."""
    try:
        return _build_bc(read(text), alphabet)
    except SexpError as exc:
        raise ValueError(str(exc)) from None


# fingerprints -------------------------------------------------------------

def universe_size(n_letters: int, d: int, tails: Iterable[Tail]) -> int:
    """Number of canonical monomials of degree at most ``d`` with the given tails."""
    base = sum((2 * n_letters) ** m for m in range(d + 1))
    return sum(2 * base if t is Tail.FINITE else base for t in set(tails))


def _max_universe() -> int:
    raw = os.environ.get("DDO_MAX_UNIVERSE")
    if raw is None:
        return DEFAULT_MAX_UNIVERSE
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"DDO_MAX_UNIVERSE must be an integer, got {raw!r}") from None


def _check_cap(alphabet: Alphabet, d: int, tails) -> None:
    if d < 0:
        raise ValueError("degree must be nonnegative")
    size = universe_size(len(alphabet), d, tails)
    cap = _max_universe()
    if size > cap:
        raise ResourceError(f"{size} monomials of degree <= {d} exceed the cap {cap} (DDO_MAX_UNIVERSE)")


def _infty_children(blocks: tuple, letters) -> Iterator[tuple]:
    for a in letters:
        yield blocks[:-1] + (blocks[-1] + a,)
    if blocks[-1] or len(blocks) == 1:
        for a in letters:
            yield blocks + (a,)


def _infty_tree(alphabet: Alphabet, d: int, keep) -> Iterator[tuple]:
    """Canonical infinite-tail block tuples of degree <= d, pruned by ``keep``.

    Each tuple has a unique parent (drop the last letter, or the last
    one-letter block), and children denote sublanguages, so pruning on
    ``keep`` is sound whenever ``keep`` is monotone.
    """
    stack = [("",)]
    while stack:
        blocks = stack.pop()
        if not keep(blocks):
            continue
        yield blocks
        if sum(map(len, blocks)) < d:
            stack.extend(_infty_children(blocks, alphabet.letters))


def canonical_monomials(alphabet: Alphabet, d: int, tails: Iterable[Tail]) -> list[Monomial]:
    tails = set(tails)
    _check_cap(alphabet, d, tails)
    out = []
    for blocks in _infty_tree(alphabet, d, lambda b: True):
        for t in (Tail.INFTY, Tail.OMEGA):
            if t in tails:
                out.append(Monomial(blocks, t))
        if Tail.FINITE in tails:
            out.append(Monomial(blocks, Tail.FINITE))
            out.append(Monomial(blocks + ("",), Tail.FINITE))
    return sorted(out, key=_mono_key)


def _mono_key(m: Monomial):
    return (m.degree, list(Tail).index(m.tail), len(m.blocks), m.blocks)


def fingerprint(w: AnyWord, d: int, tails: Iterable[Tail], alphabet: Alphabet) -> frozenset:
    """All canonical monomials of degree <= d with the given tails that contain ``w``."""
    tails = set(tails)
    _check_cap(alphabet, d, tails)
    if isinstance(w, UPWord):
        alphabet.check_word(w.stem + w.loop)
    else:
        alphabet.check_word(w)
    infinite = isinstance(w, UPWord)
    out = set()
    for blocks in _infty_tree(alphabet, d, lambda b: member(Monomial(b, Tail.INFTY), w)):
        if Tail.INFTY in tails:
            out.add(Monomial(blocks, Tail.INFTY))
        if Tail.OMEGA in tails and infinite:
            out.add(Monomial(blocks, Tail.OMEGA))
        if Tail.FINITE in tails and not infinite:
            for cand in (Monomial(blocks, Tail.FINITE), Monomial(blocks + ("",), Tail.FINITE)):
                if member(cand, w):
                    out.add(cand)
    return frozenset(out)


# compilation to Σ1 ----------------------------------------------------------

def compile_to_sigma1(m: Monomial) -> lg.Sentence:
    """Existential sentence of quantifier depth ``degree(m)`` defining ``m``.

    One variable per letter of the blocks; the first block is anchored by
    ``min``, letters inside a block are chained by successor, consecutive
    blocks are ordered by ``<``.  A finite tail adds ``max`` on the last
    variable; when the last block is empty the finiteness constraint becomes
    the separate conjunct ``∃y max(y)`` (no prenex Σ1 sentence of that depth
    defines such a monomial).
    """
    if m.tail is Tail.FINITE and m.degree == 0:
        raise ValueError(f"monomial {m} has degree 0 and a finite tail; it is not Σ1-definable "
                         "at depth 0")
    vars_, conj = [], []
    prev_last = None
    for i, block in enumerate(m.blocks):
        names = [f"x{i + 1}_{j + 1}" for j in range(len(block))]
        for j, (v, a) in enumerate(zip(names, block)):
            conj.append(lg.Label(v, a))
            if j == 0 and i == 0:
                conj.append(lg.Min(v))
            if j > 0:
                conj.append(lg.Succ(v, names[j - 1]))
        if names:
            if prev_last is not None:
                conj.append(lg.Less(prev_last, names[0]))
            prev_last = names[-1]
        vars_.extend(names)
    tail_extra = None
    if m.tail is Tail.FINITE:
        if m.blocks[-1]:
            conj.append(lg.Max(prev_last))
        else:
            tail_extra = lg.Exists("y", lg.Max("y"))
    body = lg.And(*conj) if len(conj) != 1 else conj[0]
    if not conj:
        body = lg.Top()
    f = body
    for v in reversed(vars_):
        f = lg.Exists(v, f)
    if tail_extra is not None:
        f = lg.And(f, tail_extra)
    return lg.Sentence(f)
