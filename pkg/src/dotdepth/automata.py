"""Extended Büchi automata over finite and infinite words.

An automaton carries two sorts of final states: ``finite_final`` accepts
finite words, ``buechi_final`` accepts infinite words by the Büchi
condition.  ``mode`` says which sorts are in use.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from .words import Alphabet, UPWord, AnyWord

__all__ = ["ExtendedBuchiAutomaton", "ParseError", "MODES", "parse", "serialize", "load"]

MODES = ("star", "omega", "infty")
_FIELDS = ("alphabet", "states", "initial", "transitions", "finite_final", "buechi_final", "mode")


class ParseError(ValueError):
    """Malformed automaton document; ``location`` points into the JSON."""

    def __init__(self, message: str, location: str = ""):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


@dataclass(frozen=True)
class ExtendedBuchiAutomaton:
    alphabet: Alphabet
    states: int
    initial: frozenset
    transitions: frozenset
    finite_final: frozenset = frozenset()
    buechi_final: frozenset = frozenset()
    mode: str = "infty"

    def __post_init__(self):
        for name in ("initial", "transitions", "finite_final", "buechi_final"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.states < 1:
            raise ValueError("automaton needs at least one state")
        if not self.initial:
            raise ValueError("initial state set must be nonempty")
        rng = range(self.states)
        for name in ("initial", "finite_final", "buechi_final"):
            for q in getattr(self, name):
                if q not in rng:
                    raise ValueError(f"{name} references undeclared state {q}")
        for (p, a, q) in self.transitions:
            if p not in rng or q not in rng:
                raise ValueError(f"transition {(p, a, q)} references an undeclared state")
            if a not in self.alphabet:
                raise ValueError(f"transition {(p, a, q)} uses a letter outside the alphabet")

    @classmethod
    def build(cls, letters: Iterable[str], states: int, initial, transitions,
              finite_final=(), buechi_final=(), mode="infty") -> "ExtendedBuchiAutomaton":
        return cls(Alphabet.of(letters), states, frozenset(initial),
                   frozenset((p, a, q) for p, a, q in transitions),
                   frozenset(finite_final), frozenset(buechi_final), mode)

    # effective final sets per mode
    @property
    def finals_star(self) -> frozenset:
        return frozenset() if self.mode == "omega" else self.finite_final

    @property
    def finals_omega(self) -> frozenset:
        return frozenset() if self.mode == "star" else self.buechi_final

    def delta(self) -> dict:
        """``(state, letter) -> frozenset of successors``."""
        d = {}
        for (p, a, q) in self.transitions:
            d.setdefault((p, a), set()).add(q)
        return {k: frozenset(v) for k, v in d.items()}

    def step(self, current: Iterable[int], word: str) -> frozenset:
        d = self._delta
        cur = frozenset(current)
        for a in word:
            cur = frozenset(q for p in cur for q in d.get((p, a), ()))
        return cur

    @property
    def _delta(self) -> dict:
        try:
            return self.__dict__["_delta_cache"]
        except KeyError:
            d = self.delta()
            object.__setattr__(self, "_delta_cache", d)
            return d

    def accepts_finite(self, w: str) -> bool:
        if self.mode == "omega":
            raise ValueError("accepts_finite is undefined for mode=omega automata")
        return bool(self.step(self.initial, self.alphabet.check_word(w)) & self.finite_final)

    def accepts_up(self, w: UPWord) -> bool:
        """Büchi acceptance of ``stem loop^omega`` via the loop-block relation."""
        if self.mode == "star":
            raise ValueError("accepts_up is undefined for mode=star automata")
        self.alphabet.check_word(w.stem + w.loop)
        start = self.step(self.initial, w.stem)
        if not start:
            return False
        F = self.buechi_final
        d = self._delta
        # block relation over one copy of the loop: p -> {(q, passed_final)}
        edges = {}
        for p in range(self.states):
            cur = {(p, False)}
            for a in w.loop:
                nxt = set()
                for (r, flag) in cur:
                    for q in d.get((r, a), ()):
                        nxt.add((q, flag or q in F))
                cur = {(q, f) for (q, f) in nxt if f or (q, True) not in nxt}
            edges[p] = cur
        reach = set(start)
        todo = list(start)
        while todo:
            p = todo.pop()
            for (q, _) in edges[p]:
                if q not in reach:
                    reach.add(q)
                    todo.append(q)
        # accept iff some flagged edge p -> q has p reachable and q reaching back to p
        for p in reach:
            for (q, flag) in edges[p]:
                if flag and _reaches(edges, q, p):
                    return True
        return False

    def member(self, w: AnyWord) -> bool:
        """Membership in the language of the automaton, respecting ``mode``."""
        if isinstance(w, UPWord):
            return False if self.mode == "star" else self.accepts_up(w)
        return False if self.mode == "omega" else self.accepts_finite(w)


def _reaches(edges, src, dst) -> bool:
    seen = {src}
    todo = [src]
    while todo:
        p = todo.pop()
        if p == dst:
            return True
        for (q, _) in edges[p]:
            if q not in seen:
                seen.add(q)
                todo.append(q)
    return False


def _to_doc(A: ExtendedBuchiAutomaton) -> dict:
    letters = A.alphabet.letters
    order = {a: i for i, a in enumerate(letters)}
    return {
        "alphabet": list(letters),
        "states": A.states,
        "initial": sorted(A.initial),
        "transitions": [list(t) for t in sorted(A.transitions, key=lambda t: (t[0], order[t[1]], t[2]))],
        "finite_final": sorted(A.finite_final),
        "buechi_final": sorted(A.buechi_final),
        "mode": A.mode,
    }


def serialize(A: ExtendedBuchiAutomaton) -> bytes:
    """Canonical JSON: fixed field order, sorted state lists and transitions."""
    doc = _to_doc(A)
    lines = ["{"]
    for i, k in enumerate(_FIELDS):
        sep = "," if i < len(_FIELDS) - 1 else ""
        lines.append(f"  {json.dumps(k)}: {json.dumps(doc[k], ensure_ascii=False)}{sep}")
    lines.append("}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def _state_list(doc, key, n, required=False):
    if key not in doc:
        if required:
            raise ParseError("missing field", key)
        return frozenset()
    v = doc[key]
    if not isinstance(v, list):
        raise ParseError("expected a list of states", key)
    for i, q in enumerate(v):
        if not isinstance(q, int) or isinstance(q, bool):
            raise ParseError(f"state must be an integer, got {q!r}", f"{key}[{i}]")
        if not 0 <= q < n:
            raise ParseError(f"undeclared state {q}", f"{key}[{i}]")
    return frozenset(v)


def parse(data) -> ExtendedBuchiAutomaton:
    if isinstance(data, (bytes, bytearray)):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", "$")
    unknown = sorted(set(doc) - set(_FIELDS))
    if unknown:
        raise ParseError(f"unknown field {unknown[0]!r}", unknown[0])
    for k in ("alphabet", "states", "initial", "transitions"):
        if k not in doc:
            raise ParseError("missing field", k)
    letters = doc["alphabet"]
    if not isinstance(letters, list) or not letters:
        raise ParseError("alphabet must be a nonempty list", "alphabet")
    try:
        alphabet = Alphabet.of(letters)
    except (ValueError, TypeError) as exc:
        raise ParseError(str(exc), "alphabet") from None
    n = doc["states"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError("states must be a positive integer", "states")
    initial = _state_list(doc, "initial", n, required=True)
    if not initial:
        raise ParseError("initial state set must be nonempty", "initial")
    trans = doc["transitions"]
    if not isinstance(trans, list):
        raise ParseError("expected a list of [src, letter, dst]", "transitions")
    ts = set()
    for i, t in enumerate(trans):
        loc = f"transitions[{i}]"
        if not isinstance(t, list) or len(t) != 3:
            raise ParseError("expected [src, letter, dst]", loc)
        p, a, q = t
        for j, s in ((0, p), (2, q)):
            if not isinstance(s, int) or isinstance(s, bool):
                raise ParseError(f"state must be an integer, got {s!r}", f"{loc}[{j}]")
            if not 0 <= s < n:
                raise ParseError(f"undeclared state {s}", f"{loc}[{j}]")
        if a not in alphabet:
            raise ParseError(f"letter {a!r} not in alphabet", f"{loc}[1]")
        ts.add((p, a, q))
    mode = doc.get("mode", "infty")
    if mode not in MODES:
        raise ParseError(f"mode must be one of {list(MODES)}", "mode")
    return ExtendedBuchiAutomaton(alphabet, n, initial, frozenset(ts),
                                  _state_list(doc, "finite_final", n),
                                  _state_list(doc, "buechi_final", n), mode)


def load(path) -> ExtendedBuchiAutomaton:
    with open(path, "rb") as fh:
        return parse(fh.read())
