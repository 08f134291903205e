"""Positioned factorizations of words and the R-/L-factorizations of a homomorphism.

A factorization is a sequence of ``(position, factor)`` entries with 1-based
positions, increasing and nonoverlapping.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .algebra import green
from .langexpr import Monomial, Tail, canonicalize, match_positions
from .recognition import RecognizingHom
from .words import AnyWord, UPWord, up_prefix

__all__ = [
    "Factorization",
    "is_factorization_of",
    "join",
    "join_blocks",
    "is_subfactorization",
    "r_factorization",
    "l_factorization",
    "rk_factorization",
    "lk_factorization",
    "greedy_factorization",
    "monomial_of",
    "factorization_type",
    "stabilizer_prefix",
    "stabilizer_suffix",
    "covered",
    "interleave",
    "substitution_premise",
]


@dataclass(frozen=True)
class Factorization:
    entries: tuple

    def __init__(self, entries: Iterable = ()):
        es = tuple((int(x), str(u)) for x, u in entries)
        prev_end = 0
        for x, u in es:
            if x < 1:
                raise ValueError(f"positions are 1-based, got {x}")
            if not u:
                raise ValueError("factors must be nonempty")
            if x < prev_end:
                raise ValueError(f"entry at {x} overlaps or precedes the previous factor")
            prev_end = x + len(u)
        object.__setattr__(self, "entries", es)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __str__(self):
        return "(" + " ".join(f"{x}:{u}" for x, u in self.entries) + ")"

    @property
    def positions(self) -> frozenset:
        return frozenset(p for x, u in self.entries for p in range(x, x + len(u)))


def _letter(w: AnyWord, p: int) -> Optional[str]:
    """Letter at 1-based position ``p`` or ``None`` beyond a finite word."""
    if isinstance(w, UPWord):
        return w.letter(p - 1)
    return w[p - 1] if p <= len(w) else None


def _factor(w: AnyWord, start: int, end: int) -> str:
    """Letters at 1-based positions ``start..end`` inclusive."""
    if isinstance(w, UPWord):
        return up_prefix(w, end)[start - 1:]
    return w[start - 1:end]


def is_factorization_of(F: Factorization, w: AnyWord) -> bool:
    for x, u in F:
        for i, a in enumerate(u):
            if _letter(w, x + i) != a:
                return False
    return True


def join_blocks(intervals: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    """Merge intervals ``[start, end]`` that share a position; adjacent ones stay apart."""
    out: list[list[int]] = []
    for s, e in sorted(intervals):
        if out and s <= out[-1][1]:
            out[-1][1] = max(out[-1][1], e)
        else:
            out.append([s, e])
    return [(s, e) for s, e in out]


def _intervals(F: Factorization):
    return [(x, x + len(u) - 1) for x, u in F]


def join(F: Factorization, G: Factorization, w: AnyWord) -> Factorization:
    for name, H in (("F", F), ("G", G)):
        if not is_factorization_of(H, w):
            raise ValueError(f"{name} = {H} is not a factorization of {w}")
    blocks = join_blocks(_intervals(F) + _intervals(G))
    return Factorization((s, _factor(w, s, e)) for s, e in blocks)


def is_subfactorization(F: Factorization, G: Factorization) -> bool:
    """``F ⪯ G``: each F-factor sits inside some G-factor at the matching offset."""
    for x, u in F:
        ok = False
        for y, v in G:
            off = x - y
            if 0 <= off and off + len(u) <= len(v) and v[off:off + len(u)] == u:
                ok = True
                break
        if not ok:
            return False
    return True


def _prefix_images(h: RecognizingHom, w: str) -> list[int]:
    T = h.monoid.table
    out = [h.identity]
    for a in w:
        out.append(int(T[out[-1], h.generators[a]]))
    return out


def _r_scan_prefix(h: RecognizingHom, w: AnyWord) -> str:
    """A finite prefix of ``w`` after which the R-class never changes."""
    if not isinstance(w, UPWord):
        return w
    M = h.monoid
    seen = {}
    x = h.image(w.stem)
    v = h.image(w.loop)
    i = 0
    while x not in seen:
        seen[x] = i
        x = M.mul(x, v)
        i += 1
    # h(u v^j) repeats h(u v^seen[x]); everything past u v^i is R-equivalent
    return w.stem + w.loop * i


def r_factorization(h: RecognizingHom, w: AnyWord) -> Factorization:
    G = green(h.monoid)
    text = _r_scan_prefix(h, w)
    if not text and isinstance(w, UPWord):
        text = w.loop
    imgs = _prefix_images(h, text)
    out = []
    for j in range(len(text)):
        if j == 0 or G.lt_r(imgs[j + 1], imgs[j]):
            out.append((j + 1, text[j]))
    return Factorization(out)


def l_factorization(h: RecognizingHom, w: AnyWord) -> Factorization:
    if isinstance(w, UPWord):
        raise ValueError("L-factorizations are defined for finite words only")
    G = green(h.monoid)
    T = h.monoid.table
    n = len(w)
    suf = [h.identity] * (n + 1)
    for j in range(n - 1, -1, -1):
        suf[j] = int(T[h.generators[w[j]], suf[j + 1]])
    out = []
    for j in range(n):
        if j == n - 1 or G.lt_l(suf[j], suf[j + 1]):
            out.append((j + 1, w[j]))
    return Factorization(out)


def _context_join(markers: Factorization, w: AnyWord, k: int) -> Factorization:
    if k < 1:
        raise ValueError("k must be a positive integer")
    hi = None if isinstance(w, UPWord) else len(w)
    iv = []
    for z, _ in markers:
        e = z + k if hi is None else min(hi, z + k)
        iv.append((max(1, z - k), e))
    return Factorization((s, _factor(w, s, e)) for s, e in join_blocks(iv))


def rk_factorization(h: RecognizingHom, w: AnyWord, k: int) -> Factorization:
    return _context_join(r_factorization(h, w), w, k)


def lk_factorization(h: RecognizingHom, w: AnyWord, k: int) -> Factorization:
    return _context_join(l_factorization(h, w), w, k)


def greedy_factorization(m: Monomial, w: AnyWord) -> Optional[Factorization]:
    """Leftmost placement of the blocks of ``m`` in ``w``; empty blocks are omitted."""
    starts = match_positions(m, w)
    if starts is None:
        return None
    return Factorization((s + 1, b) for s, b in zip(starts, m.blocks) if b)


def factorization_type(F: Factorization) -> tuple[str, ...]:
    return tuple(u for _, u in F)


def monomial_of(F: Factorization, tail: Tail = Tail.INFTY) -> Monomial:
    """``P_F = u1 Γ* u2 ... Γ* ul`` with the given tail."""
    if not len(F):
        return canonicalize(("",), tail)
    if F.entries[0][0] != 1:
        raise ValueError("P_F needs a factorization whose first factor starts at position 1")
    return canonicalize(factorization_type(F), tail)


def stabilizer_prefix(h: RecognizingHom, u: str) -> Optional[tuple[str, int]]:
    """Shortest prefix ``p`` of ``u`` with ``h(p) e = h(p)`` for an idempotent ``e`` in h(Γ+)."""
    M = h.monoid
    plus = _plus_idempotents(h)
    for j, x in enumerate(_prefix_images(h, u)):
        for e in plus:
            if M.mul(x, e) == x:
                return u[:j], e
    return None


def stabilizer_suffix(h: RecognizingHom, u: str) -> Optional[tuple[str, int]]:
    """Dual of :func:`stabilizer_prefix`: suffix ``q`` with ``e h(q) = h(q)``."""
    M = h.monoid
    plus = _plus_idempotents(h)
    for j in range(len(u), -1, -1):
        x = h.image(u[j:])
        for e in plus:
            if M.mul(e, x) == x:
                return u[j:], e
    return None


def _plus_idempotents(h: RecognizingHom) -> list[int]:
    """Idempotents in the image of nonempty words."""
    M = h.monoid
    reach = set(h.generators.values())
    frontier = list(reach)
    while frontier:
        nxt = []
        for x in frontier:
            for g in set(h.generators.values()):
                y = M.mul(x, g)
                if y not in reach:
                    reach.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(e for e in reach if M.mul(e, e) == e)


def covered(positions: Iterable[int], segments: Sequence[tuple[int, int]]) -> bool:
    """Every position lies in one of the 1-based inclusive ``segments``."""
    return all(any(s <= p <= e for s, e in segments) for p in positions)


def interleave(ws: Sequence[str], gaps: Sequence[str]) -> tuple[str, list[tuple[int, int]]]:
    """``w0 g1 w1 ... gl wl`` together with the 1-based spans of the ``w`` blocks."""
    if len(ws) != len(gaps) + 1:
        raise ValueError("need exactly one more w block than gaps")
    text, spans = "", []
    for i, w in enumerate(ws):
        spans.append((len(text) + 1, len(text) + len(w)))
        text += w
        if i < len(gaps):
            text += gaps[i]
    return text, spans


def substitution_premise(h: RecognizingHom, ws: Sequence[str], us: Sequence[str],
                         vs: Sequence[str], k: int) -> bool:
    """Premise for replacing the gaps ``us`` by ``vs`` between the fixed blocks ``ws``.

    The blocks must cover the R(k)-positions of ``u = w0 u1 ... ul wl`` and the
    L(k)-positions of ``v = w0 v1 ... vl wl``.  The outer blocks ``w0`` and ``wl``
    must be nonempty: with an empty outer block the gap itself holds the first
    (or last) letter and the covering condition no longer anchors the ends.
    """
    if len(us) != len(vs):
        raise ValueError("us and vs must have the same length")
    if not ws[0] or not ws[-1]:
        return False
    u, su = interleave(ws, us)
    v, sv = interleave(ws, vs)
    return covered(rk_factorization(h, u, k).positions, su) and \
        covered(lk_factorization(h, v, k).positions, sv)
