"""Finite monoids given by multiplication tables.

Elements are 0-based indices.  The B1 identity is checked through the unique
idempotent power of each element, so no global exponent is needed: for every
valid ``n`` the power ``z^n`` is the idempotent of the cyclic semigroup of z.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

__all__ = [
    "FiniteMonoid",
    "SubSemigroup",
    "GreenData",
    "LinkedPair",
    "B1Witness",
    "idempotent_power",
    "exponent",
    "green",
    "linked_pairs",
    "is_b1",
    "is_aperiodic",
    "b1_check_equation",
    "monoid_from_json",
    "monoid_to_json",
    "from_rows",
]


class FiniteMonoid:
    """A finite monoid ``{0, ..., size-1}`` with a multiplication table."""

    def __init__(self, table, identity: int, labels: Optional[Sequence[str]] = None,
                 check: bool = True):
        t = np.asarray(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise ValueError("multiplication table must be a nonempty square array")
        n = t.shape[0]
        if t.min() < 0 or t.max() >= n:
            raise ValueError("table entries out of range")
        if not 0 <= identity < n:
            raise ValueError("identity out of range")
        t.setflags(write=False)
        self.table = t
        self.size = n
        self.identity = identity
        self.labels = tuple(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != n:
            raise ValueError("need one label per element")
        if check:
            self._validate()

    def _validate(self):
        t, n, one = self.table, self.size, self.identity
        idx = np.arange(n)
        if not (np.array_equal(t[one], idx) and np.array_equal(t[:, one], idx)):
            raise ValueError(f"element {one} is not a two-sided identity")
        for a in range(n):
            # (ab)c == a(bc) for all b, c
            if not np.array_equal(t[t[a]], t[a][t]):
                bad = np.argwhere(t[t[a]] != t[a][t])[0]
                raise ValueError(f"table is not associative at ({a}, {bad[0]}, {bad[1]})")

    def __repr__(self):
        return f"FiniteMonoid(size={self.size}, identity={self.identity})"

    def __eq__(self, other):
        return (isinstance(other, FiniteMonoid) and self.identity == other.identity
                and np.array_equal(self.table, other.table))

    def __hash__(self):
        return hash((self.identity, self.table.tobytes()))

    def mul(self, *xs: int) -> int:
        r = self.identity
        for x in xs:
            r = int(self.table[r, x])
        return r

    def power(self, x: int, n: int) -> int:
        r = self.identity
        for _ in range(n):
            r = int(self.table[r, x])
        return r

    def name(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    @property
    def elements(self) -> range:
        return range(self.size)

    @cached_property
    def omega(self) -> np.ndarray:
        """``omega[x]`` is the idempotent power of ``x``."""
        out = np.array([_idempotent_power(self.table, x) for x in range(self.size)], dtype=np.int64)
        out.setflags(write=False)
        return out

    @cached_property
    def idempotents(self) -> tuple[int, ...]:
        t = self.table
        return tuple(x for x in range(self.size) if t[x, x] == x)

    def whole(self) -> "SubSemigroup":
        return SubSemigroup(self, frozenset(range(self.size)))


def _idempotent_power(t: np.ndarray, x: int) -> int:
    p = x
    for _ in range(t.shape[0] + 1):
        if t[p, p] == p:
            return int(p)
        p = int(t[p, x])
    raise AssertionError("no idempotent power found; table is not a finite semigroup")


@dataclass(frozen=True)
class SubSemigroup:
    parent: FiniteMonoid
    elements: frozenset

    def __post_init__(self):
        els = frozenset(int(x) for x in self.elements)
        object.__setattr__(self, "elements", els)
        if not els:
            raise ValueError("subsemigroup must be nonempty")
        t = self.parent.table
        for x in els:
            for y in els:
                if int(t[x, y]) not in els:
                    raise ValueError(f"not closed: {x}*{y} = {t[x, y]}")

    @property
    def sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.elements))

    @property
    def idempotents(self) -> tuple[int, ...]:
        t = self.parent.table
        return tuple(x for x in self.sorted if t[x, x] == x)

    def with_identity(self) -> frozenset:
        """Elements of S^1 inside the parent monoid."""
        return self.elements | {self.parent.identity}

    def __len__(self):
        return len(self.elements)


def _as_sub(S) -> SubSemigroup:
    return S.whole() if isinstance(S, FiniteMonoid) else S


def idempotent_power(M: FiniteMonoid, x: int) -> int:
    return int(M.omega[x])


def _index_period(t: np.ndarray, x: int) -> tuple[int, int]:
    seen = {}
    p, i = x, 1
    while p not in seen:
        seen[p] = i
        p, i = int(t[p, x]), i + 1
    return seen[p], i - seen[p]


def exponent(M) -> int:
    """Smallest ``n >= 1`` such that every ``x^n`` is idempotent."""
    S = _as_sub(M)
    t = S.parent.table
    ip = [_index_period(t, x) for x in S.sorted]
    lo = max(i for i, _ in ip)
    per = int(np.lcm.reduce([p for _, p in ip]))
    return -(-lo // per) * per


@dataclass(frozen=True)
class GreenData:
    """Green's preorders ``<=_R``, ``<=_L`` on a semigroup S, ideals taken in S^1.

    ``leq_r[x, y]`` is true iff ``x`` lies in ``y S^1``.  Indices refer to the
    parent monoid; rows and columns outside S are False.
    """

    elements: tuple[int, ...]
    leq_r: np.ndarray
    leq_l: np.ndarray
    r_class: dict
    l_class: dict

    def R(self, x: int, y: int) -> bool:
        return bool(self.leq_r[x, y] and self.leq_r[y, x])

    def L(self, x: int, y: int) -> bool:
        return bool(self.leq_l[x, y] and self.leq_l[y, x])

    def lt_r(self, x: int, y: int) -> bool:
        return bool(self.leq_r[x, y] and not self.leq_r[y, x])

    def lt_l(self, x: int, y: int) -> bool:
        return bool(self.leq_l[x, y] and not self.leq_l[y, x])


def _classes(elements, leq) -> dict:
    labels, nxt = {}, 0
    for x in elements:
        if x in labels:
            continue
        for y in elements:
            if leq[x, y] and leq[y, x]:
                labels[y] = nxt
        nxt += 1
    return labels


def green(M) -> GreenData:
    S = _as_sub(M)
    t = S.parent.table
    n = S.parent.size
    els = S.sorted
    ones = sorted(S.with_identity())
    leq_r = np.zeros((n, n), dtype=bool)
    leq_l = np.zeros((n, n), dtype=bool)
    for y in els:
        leq_r[t[y, ones], y] = True
        leq_l[t[ones, y], y] = True
    mask = np.zeros(n, dtype=bool)
    mask[list(els)] = True
    leq_r &= mask[:, None] & mask[None, :]
    leq_l &= mask[:, None] & mask[None, :]
    leq_r.setflags(write=False)
    leq_l.setflags(write=False)
    return GreenData(els, leq_r, leq_l, _classes(els, leq_r), _classes(els, leq_l))


class LinkedPair(NamedTuple):
    s: int
    e: int


def linked_pairs(M: FiniteMonoid) -> list[LinkedPair]:
    """All ``(s, e)`` with ``e`` idempotent and ``s e = s``, sorted by ``(s, e)``."""
    t = M.table
    ids = M.idempotents
    return [LinkedPair(s, e) for s in range(M.size) for e in ids if t[s, e] == s]


def is_aperiodic(M) -> bool:
    S = _as_sub(M)
    t = S.parent.table
    return all(_index_period(t, x)[1] == 1 for x in S.sorted)


class B1Witness(NamedTuple):
    e: int
    f: int
    s: int
    t: int
    x: int
    y: int


def _b1_sides(M: FiniteMonoid, e, f, s, t, x, y) -> tuple[int, int]:
    T, om = M.table, M.omega
    left_pow = int(om[M.mul(e, x, f, y)])
    right_pow = int(om[M.mul(t, e, s, f)])
    return (M.mul(left_pow, e, x, f, right_pow), M.mul(left_pow, e, s, f, right_pow))


def b1_check_equation(S, e, f, s, t, x, y) -> bool:
    """Evaluate ``(exfy)^n exf (tesf)^n == (exfy)^n esf (tesf)^n``."""
    S = _as_sub(S)
    M = S.parent
    for name, v in (("e", e), ("f", f)):
        if M.table[v, v] != v:
            raise ValueError(f"{name}={v} is not idempotent")
    lhs, rhs = _b1_sides(M, e, f, s, t, x, y)
    return lhs == rhs


def is_b1(S) -> tuple[bool, Optional[B1Witness]]:
    """Exhaustive B1 check; returns the first violating assignment if any.

    Loops run over ``e, f`` (idempotents), then ``x``; ``y, s, t`` are
    handled as numpy axes.
    """
    S = _as_sub(S)
    M = S.parent
    T, om = M.table, M.omega
    els = np.array(S.sorted, dtype=np.int64)
    for e in S.idempotents:
        for f in S.idempotents:
            esf = T[T[e, els], f]                      # [s]
            tesf = om[T[els[:, None], esf[None, :]]]   # [t, s] -> (tesf)^n
            for x in els:
                exf = int(T[T[e, x], f])
                lp = om[T[exf, els]]                   # [y] -> (exfy)^n
                lhs = T[T[lp, exf][:, None, None], tesf[None, :, :]]
                rhs = T[T[lp[:, None], esf[None, :]][:, None, :], tesf[None, :, :]]
                bad = np.argwhere(lhs != rhs)
                if len(bad):
                    yi, ti, si = bad[0]
                    return False, B1Witness(e, f, int(els[si]), int(els[ti]), int(x), int(els[yi]))
    return True, None


def monoid_to_json(M: FiniteMonoid) -> dict:
    doc = {"size": M.size, "identity": M.identity, "table": [int(v) for v in M.table.reshape(-1)]}
    if M.labels:
        doc["labels"] = list(M.labels)
    return doc


def monoid_from_json(doc) -> FiniteMonoid:
    if isinstance(doc, (str, bytes)):
        doc = json.loads(doc)
    unknown = set(doc) - {"size", "identity", "table", "labels"}
    if unknown:
        raise ValueError(f"unknown monoid fields: {sorted(unknown)}")
    n = doc["size"]
    flat = doc["table"]
    if not isinstance(n, int) or n < 1 or len(flat) != n * n:
        raise ValueError("monoid table must have size*size entries")
    return FiniteMonoid(np.array(flat).reshape(n, n), doc["identity"], doc.get("labels"))


def from_rows(rows: Iterable[Iterable[int]], identity: int = 0, labels=None) -> FiniteMonoid:
    return FiniteMonoid(np.array([list(r) for r in rows]), identity, labels)
