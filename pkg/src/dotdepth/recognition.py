"""Recognizing homomorphisms ``h : Γ* -> M`` with an Accept table on linked pairs.

The monoid built from an automaton consists of transition profiles of
nonempty words plus a fresh identity that only the empty word reaches.
``Accept(s, e)`` records whether the block ``[s][e]^omega`` lies in the
language; it is computed from one pair of representative words, which is
sound because profile monoids recognize strongly (every word of the block
has the same accepting behaviour).

Syntactic congruence over monoid elements
-----------------------------------------
For a strongly recognizing ``h`` every context word ``u, v, w`` matters only
through its image, so ``p ≡ q`` iff for all ``u, v, w`` in M

* ``Accept(upv, 1) = Accept(uqv, 1)`` and, for ``e = w^omega``,
  ``Accept(upve, e) = Accept(uqve, e)``  (linear contexts ``upvw^omega``),
* with ``e = (pv)^omega``: ``Accept(ue, e) = Accept(ue', e')`` for the
  q-analogue ``e' = (qv)^omega``  (cyclic contexts ``u(pv)^omega``).

Writing ``τ(x) = (Accept(xe, e))_e`` over idempotents and
``κ(c) = (Accept(u c^omega, c^omega))_u``, the relation above is the largest
congruence contained in ``ker τ ∩ ker κ`` on ``M \\ {1}``.  It is computed by
partition refinement under left and right multiplication by generators.

Conditions on ``Synt¹(L)`` versus ``Synt₊(L)``
------------------------------------------------
All fragment checks run on ``Synt₊(L)``.  The map ``Synt₊(L) -> Synt¹(L)``
that sends the fresh identity to 1 is a surjective homomorphism which is the
identity on ``Synt(L)``.  It maps linked pairs onto linked pairs, preserves
and reflects R between elements of ``Synt(L)``, and the block of a pair
``(s, 1)`` is the finite-word block ``[s]`` in both monoids.  An element of
``Synt(L)`` that is neutral in ``Synt¹(L)`` adds only pairs whose blocks are
already blocks of ``Synt₊(L)`` pairs.  Hence the linked-pair condition holds
in one monoid iff it holds in the other.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Optional

import numpy as np

from .algebra import FiniteMonoid, LinkedPair, linked_pairs, monoid_from_json, monoid_to_json
from .automata import ExtendedBuchiAutomaton
from .words import Alphabet, AnyWord, UPWord

__all__ = [
    "Profile",
    "RecognizingHom",
    "build_pure_profile_hom",
    "up_member",
    "syntactic_partition",
    "syntactic_quotient",
    "restrict",
    "hom_to_json",
    "hom_from_json",
]

PARTS = ("all", "finite", "infinite", "none")


@dataclass(frozen=True)
class Profile:
    """Transition profile as bitmask rows.

    ``reach[p]`` has bit q set iff some run goes from p to q; ``flag[p]`` has
    bit q set iff such a run visits a Büchi state (flag rows are subsets of
    reach rows, which is the "maximized flag" form).
    """

    reach: tuple
    flag: tuple

    @classmethod
    def letter(cls, A: ExtendedBuchiAutomaton, a: str) -> "Profile":
        F = A.finals_omega
        reach = [0] * A.states
        flag = [0] * A.states
        for (p, b, q) in A.transitions:
            if b == a:
                reach[p] |= 1 << q
                if q in F:
                    flag[p] |= 1 << q
        return cls(tuple(reach), tuple(flag))

    def then(self, other: "Profile") -> "Profile":
        reach, flag = [], []
        for p in range(len(self.reach)):
            r = f = 0
            rp, fp = self.reach[p], self.flag[p]
            q = 0
            while rp >> q:
                if rp >> q & 1:
                    r |= other.reach[q]
                    f |= other.flag[q]
                    if fp >> q & 1:
                        f |= other.reach[q]
                q += 1
            reach.append(r)
            flag.append(f)
        return Profile(tuple(reach), tuple(flag))

    def triples(self) -> frozenset:
        n = len(self.reach)
        return frozenset((p, int(self.flag[p] >> q & 1), q)
                         for p in range(n) for q in range(n) if self.reach[p] >> q & 1)


@dataclass(frozen=True, eq=False)
class RecognizingHom:
    """A homomorphism to a finite monoid together with its Accept table.

    ``source``/``part`` tie the homomorphism back to an automaton so that
    certificates can be checked against the automaton itself; ``part``
    records a restriction to finite or infinite words.
    """

    monoid: FiniteMonoid
    alphabet: Alphabet
    generators: dict
    epsilon_strict: bool
    preimage: dict
    accept: dict
    source: Optional[ExtendedBuchiAutomaton] = None
    part: str = "all"
    mode: str = "infty"

    @property
    def identity(self) -> int:
        return self.monoid.identity

    @cached_property
    def pairs(self) -> list:
        return linked_pairs(self.monoid)

    @cached_property
    def accept_matrix(self) -> np.ndarray:
        n = self.monoid.size
        A = np.zeros((n, n), dtype=bool)
        for (s, e), v in self.accept.items():
            A[s, e] = v
        A.setflags(write=False)
        return A

    def Accept(self, s: int, e: int) -> bool:
        return self.accept[LinkedPair(s, e)]

    def image(self, w: str) -> int:
        t = self.monoid.table
        x = self.identity
        for a in w:
            x = int(t[x, self.generators[a]])
        return x

    def block_word(self, s: int, e: int) -> AnyWord:
        """The representative ``pre(s) pre(e)^omega`` of the block ``[s][e]^omega``."""
        if e == self.identity:
            return self.preimage[s]
        return UPWord(self.preimage[s], self.preimage[e])

    def language_member(self, w: AnyWord) -> bool:
        if self.part == "none":
            return False
        if self.part == "finite" and isinstance(w, UPWord):
            return False
        if self.part == "infinite" and not isinstance(w, UPWord):
            return False
        if self.source is not None:
            return self.source.member(w)
        return up_member(self, w)


def up_member(h: RecognizingHom, w: AnyWord) -> bool:
    if isinstance(w, UPWord):
        e = int(h.monoid.omega[h.image(w.loop)])
        s = h.monoid.mul(h.image(w.stem), e)
        return h.Accept(s, e)
    return h.Accept(h.image(w), h.identity)


def build_pure_profile_hom(A: ExtendedBuchiAutomaton) -> RecognizingHom:
    letters = A.alphabet.letters
    letter_profiles = [Profile.letter(A, a) for a in letters]
    elems: list = [None]          # index 0 is the fresh identity
    index: dict = {}
    preimage = {0: ""}
    parent = [0]
    via = [-1]
    right = [[None] * len(letters)]
    queue = deque()
    for i, pr in enumerate(letter_profiles):
        if pr not in index:
            index[pr] = len(elems)
            elems.append(pr)
            preimage[index[pr]] = letters[i]
            parent.append(0)
            via.append(i)
            right.append([None] * len(letters))
            queue.append(index[pr])
        right[0][i] = index[pr]
    while queue:
        x = queue.popleft()
        for i, a in enumerate(letters):
            pr = elems[x].then(letter_profiles[i])
            y = index.get(pr)
            if y is None:
                y = index[pr] = len(elems)
                elems.append(pr)
                preimage[y] = preimage[x] + a
                parent.append(x)
                via.append(i)
                right.append([None] * len(letters))
                queue.append(y)
            right[x][i] = y
    n = len(elems)
    R = np.array(right, dtype=np.int64)
    table = np.empty((n, n), dtype=np.int64)
    table[:, 0] = np.arange(n)
    # elements are numbered in BFS order, so parents come first
    for y in range(1, n):
        table[:, y] = R[table[:, parent[y]], via[y]]
    M = FiniteMonoid(table, 0, labels=["1"] + [preimage[i] for i in range(1, n)], check=n <= 150)
    gens = {a: int(R[0, i]) for i, a in enumerate(letters)}
    accept = _accept_from_representatives(M, preimage, A.member)
    return RecognizingHom(M, A.alphabet, gens, True, preimage, accept, source=A, mode=A.mode)


def _accept_from_representatives(M: FiniteMonoid, preimage: dict, member) -> dict:
    one = M.identity
    out = {}
    for (s, e) in linked_pairs(M):
        w = preimage[s] if e == one else UPWord(preimage[s], preimage[e])
        out[LinkedPair(s, e)] = bool(member(w))
    return out


def _refine(M: FiniteMonoid, gens: list, labels: np.ndarray) -> np.ndarray:
    T = M.table
    g = np.array(gens, dtype=np.int64)
    count = len(set(labels.tolist()))
    while True:
        keys = np.concatenate([labels[:, None], labels[T[:, g]], labels[T[g, :]].T], axis=1)
        _, new = np.unique(keys, axis=0, return_inverse=True)
        new = new.reshape(-1)
        c = int(new.max()) + 1
        if c == count:
            return new
        labels, count = new, c


def syntactic_partition(h: RecognizingHom) -> np.ndarray:
    """Class label per element; the identity is always alone in its class."""
    if not h.epsilon_strict:
        raise ValueError("syntactic quotient needs a homomorphism with h(u) = 1 only for u = 1")
    M = h.monoid
    T, om = M.table, M.omega
    A = h.accept_matrix
    n = M.size
    ids = np.array(M.idempotents, dtype=np.int64)
    tau = A[T[:, ids], ids[None, :]]                 # [x, e] -> Accept(xe, e)
    e_of = om                                        # c -> c^omega
    kappa = A[T[:, e_of], e_of[None, :]].T           # [c, u] -> Accept(u c^omega, c^omega)
    key = np.concatenate([tau, kappa], axis=1).astype(np.int8)
    key = np.concatenate([np.zeros((n, 1), dtype=np.int8), key], axis=1)
    key[M.identity, 0] = 1
    _, labels = np.unique(key, axis=0, return_inverse=True)
    labels = _refine(M, sorted(set(h.generators.values())), labels.reshape(-1))
    return labels


def quotient_by(h: RecognizingHom, labels) -> RecognizingHom:
    """Quotient of ``h`` by a congruence given as element labels."""
    M = h.monoid
    labels = np.asarray(labels)
    order = [M.identity] + [x for x in range(M.size) if x != M.identity]
    rep_of_label: dict = {}
    for x in order:
        rep_of_label.setdefault(int(labels[x]), x)
    reps = list(rep_of_label.values())
    new_index = {lab: i for i, lab in enumerate(rep_of_label)}
    cls = np.array([new_index[int(labels[x])] for x in range(M.size)], dtype=np.int64)
    r = np.array(reps, dtype=np.int64)
    table = cls[M.table[np.ix_(r, r)]]
    preimage = {i: h.preimage[x] for i, x in enumerate(reps)}
    labels_out = ["1" if i == 0 and h.epsilon_strict else (preimage[i] or "1") for i in range(len(reps))]
    Q = FiniteMonoid(table, 0, labels=labels_out)
    gens = {a: int(cls[g]) for a, g in h.generators.items()}
    accept = _accept_from_representatives(Q, preimage, h.language_member)
    return RecognizingHom(Q, h.alphabet, gens, h.epsilon_strict, preimage, accept,
                          source=h.source, part=h.part, mode=h.mode)


def syntactic_quotient(h: RecognizingHom) -> RecognizingHom:
    """The pure syntactic homomorphism ``h_+ : Γ* -> Synt₊(L)``."""
    return quotient_by(h, syntactic_partition(h))


def restrict(h: RecognizingHom, part: str) -> RecognizingHom:
    """Recognizer for ``L ∩ Γ*`` (``part="finite"``) or ``L ∩ Γ^omega``."""
    if part not in ("finite", "infinite"):
        raise ValueError("part must be 'finite' or 'infinite'")
    if not h.epsilon_strict:
        raise ValueError("restriction needs a homomorphism with h(u) = 1 only for u = 1")
    one = h.identity
    keep_finite = part == "finite"
    accept = {p: v and ((p.e == one) == keep_finite) for p, v in h.accept.items()}
    new_part = part if h.part in ("all", part) else "none"
    return replace(h, accept=accept, part=new_part)


def hom_to_json(h: RecognizingHom) -> dict:
    doc = monoid_to_json(h.monoid)
    doc["alphabet"] = list(h.alphabet.letters)
    doc["generators"] = dict(h.generators)
    doc["epsilon_strict"] = h.epsilon_strict
    doc["accept"] = [[int(s), int(e)] for (s, e) in sorted(h.accept) if h.accept[(s, e)]]
    doc["preimage"] = {str(x): h.preimage[x] for x in sorted(h.preimage)}
    doc["mode"] = h.mode
    return doc


_HOM_FIELDS = {"size", "identity", "table", "labels", "alphabet", "generators",
               "epsilon_strict", "accept", "preimage", "mode"}


def hom_from_json(doc) -> RecognizingHom:
    if isinstance(doc, (str, bytes)):
        doc = json.loads(doc)
    unknown = set(doc) - _HOM_FIELDS
    if unknown:
        raise ValueError(f"unknown homomorphism fields: {sorted(unknown)}")
    M = monoid_from_json({k: doc[k] for k in ("size", "identity", "table", "labels") if k in doc})
    gens = doc["generators"]
    alphabet = Alphabet.of(doc.get("alphabet", list(gens)))
    if set(gens) != set(alphabet.letters):
        raise ValueError("generators must map exactly the alphabet letters")
    for a, g in gens.items():
        if not isinstance(g, int) or not 0 <= g < M.size:
            raise ValueError(f"generator image of {a!r} out of range")
    strict = bool(doc["epsilon_strict"])
    # shortest preimages by breadth-first search; every element must be reachable
    pre = {M.identity: ""}
    frontier = [M.identity]
    seen_nonempty = set()
    while frontier:
        nxt = []
        for x in frontier:
            for a in alphabet.letters:
                y = M.mul(x, gens[a])
                if y not in seen_nonempty:
                    seen_nonempty.add(y)
                    if y not in pre:
                        pre[y] = pre[x] + a
                    nxt.append(y)
        frontier = nxt
    missing = set(range(M.size)) - set(pre)
    if missing:
        raise ValueError(f"elements {sorted(missing)} are not images of any word")
    if strict and M.identity in seen_nonempty:
        raise ValueError("epsilon_strict is set but a nonempty word maps to the identity")
    given = doc.get("preimage")
    if given is not None:
        for k, w in given.items():
            x = int(k)
            if x not in pre:
                raise ValueError(f"preimage given for unknown element {k}")
            h_w = M.mul(*[gens[a] for a in alphabet.check_word(w)])
            if h_w != x:
                raise ValueError(f"preimage {w!r} does not map to element {x}")
            pre[x] = w
    accepted = set()
    valid = set(linked_pairs(M))
    for item in doc.get("accept", []):
        p = LinkedPair(int(item[0]), int(item[1]))
        if p not in valid:
            raise ValueError(f"accept lists {tuple(p)}, which is not a linked pair")
        accepted.add(p)
    accept = {p: p in accepted for p in valid}
    mode = doc.get("mode", "infty")
    return RecognizingHom(M, alphabet, dict(gens), strict, pre, accept, mode=mode)
