"""Deliberately naive reference implementations and enumerators.

Nothing here shares code with the main decision path beyond the data types:
membership is tested by exhaustive splitting, formulas by dense tensor
evaluation, Büchi acceptance by a (state, loop phase) product graph, and the
syntactic congruence by enumerating word contexts.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from . import logic as lg
from .automata import ExtendedBuchiAutomaton
from .langexpr import Monomial, Tail
from .words import Alphabet, AnyWord, UPWord, up_canonicalize, up_prefix

__all__ = [
    "Grid",
    "enumerate_words",
    "enumerate_up",
    "brute_member_monomial",
    "brute_eval_finite",
    "brute_eval_up",
    "brute_accepts_up",
    "brute_member",
    "brute_syntactic_separate",
    "brute_syntactic_partition",
    "enumerate_automata",
    "random_sentences",
]


@dataclass(frozen=True)
class Grid:
    alphabet: Alphabet
    max_word_len: int = 6
    max_stem: int = 3
    max_loop: int = 3
    max_formula_depth: int = 3
    max_monomial_degree: int = 4
    max_states: int = 2

    def __post_init__(self):
        for name in ("max_word_len", "max_stem", "max_loop", "max_formula_depth",
                     "max_monomial_degree", "max_states"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")


def _words_up_to(letters, n) -> Iterator[str]:
    for m in range(n + 1):
        for t in itertools.product(letters, repeat=m):
            yield "".join(t)


def enumerate_words(g: Grid) -> Iterator[str]:
    """All words up to ``max_word_len``, by length then lexicographically."""
    return _words_up_to(g.alphabet.letters, g.max_word_len)


def enumerate_up(g: Grid) -> Iterator[UPWord]:
    """Canonical ultimately periodic words with bounded stem and loop, without repeats."""
    seen = set()
    for v in _words_up_to(g.alphabet.letters, g.max_loop):
        if not v:
            continue
        for u in _words_up_to(g.alphabet.letters, g.max_stem):
            c = up_canonicalize(UPWord(u, v))
            if c not in seen:
                seen.add(c)
                yield c


# monomials ----------------------------------------------------------------

def _splits(blocks, text: str, pos: int, anchored_end: bool) -> bool:
    if not blocks:
        return not anchored_end or pos == len(text)
    b = blocks[0]
    for i in range(pos, len(text) - len(b) + 1):
        if text[i:i + len(b)] == b and _splits(blocks[1:], text, i + len(b), anchored_end):
            return True
    return False


def _brute_finite(m: Monomial, w: str, anchored_end: bool) -> bool:
    first = m.blocks[0]
    if not w.startswith(first):
        return False
    return _splits(m.blocks[1:], w, len(first), anchored_end)


def brute_member_monomial(m: Monomial, w: AnyWord) -> bool:
    if not isinstance(w, UPWord):
        if m.tail is Tail.OMEGA:
            return False
        return _brute_finite(m, w, m.tail is Tail.FINITE)
    if m.tail is Tail.FINITE:
        return False
    # grow explicit prefixes until two consecutive doublings agree
    reps = m.degree + 1
    prev = None
    while True:
        ans = _brute_finite(m, up_prefix(w, len(w.stem) + reps * len(w.loop)), False)
        if ans == prev:
            return ans
        prev, reps = ans, 2 * reps


# formulas -----------------------------------------------------------------

def _dense(f, word: str, infinite: bool, axes: dict, nvars: int):
    """Boolean tensor of ``f`` over all assignments of the bound variables."""
    n = len(word)
    shape = [1] * nvars

    def pos(v):
        s = list(shape)
        s[axes[v]] = n
        return np.arange(n).reshape(s)

    if isinstance(f, lg.Top):
        return np.ones([1] * nvars, dtype=bool)
    if isinstance(f, lg.Label):
        arr = np.array([c == f.letter for c in word], dtype=bool)
        s = list(shape)
        s[axes[f.var]] = n
        return arr.reshape(s)
    if isinstance(f, lg.Min):
        return pos(f.var) == 0
    if isinstance(f, lg.Max):
        return (pos(f.var) == n - 1) & (not infinite)
    if isinstance(f, lg.Less):
        return pos(f.x) < pos(f.y)
    if isinstance(f, lg.Succ):
        return pos(f.x) == pos(f.y) + 1
    if isinstance(f, lg.Not):
        return ~_dense(f.arg, word, infinite, axes, nvars)
    if isinstance(f, lg.And):
        out = np.ones([1] * nvars, dtype=bool)
        for p in f.parts:
            out = out & _dense(p, word, infinite, axes, nvars)
        return out
    if isinstance(f, lg.Or):
        out = np.zeros([1] * nvars, dtype=bool)
        for p in f.parts:
            out = out | _dense(p, word, infinite, axes, nvars)
        return out
    # quantifier: add an axis, reduce it away
    axes2 = dict(axes)
    axes2[f.var] = nvars
    inner = _dense(f.body, word, infinite, axes2, nvars + 1)
    inner = np.broadcast_to(inner, inner.shape[:nvars] + (n,)) if inner.shape[nvars] == 1 and n != 1 else inner
    if n == 0:
        red = np.zeros(inner.shape[:nvars], dtype=bool) if isinstance(f, lg.Exists) \
            else np.ones(inner.shape[:nvars], dtype=bool)
    else:
        red = inner.any(axis=nvars) if isinstance(f, lg.Exists) else inner.all(axis=nvars)
    return red


def _dense_sentence(f, word: str, infinite: bool) -> bool:
    return bool(_dense(f, word, infinite, {}, 0).reshape(-1)[0])


def brute_eval_finite(s, w: str) -> bool:
    f = s.formula if isinstance(s, lg.Sentence) else s
    return _dense_sentence(f, w, False)


def _blocks_up(f, w: UPWord) -> bool:
    if isinstance(f, lg.Not):
        return not _blocks_up(f.arg, w)
    if isinstance(f, lg.And):
        return all(_blocks_up(p, w) for p in f.parts)
    if isinstance(f, lg.Or):
        return any(_blocks_up(p, w) for p in f.parts)
    if not isinstance(f, (lg.Exists, lg.Forall)):
        return _dense_sentence(f, "", True)
    k = lg.depth(f)
    reps = 2 * (k + 1)
    prev = None
    while True:
        ans = _dense_sentence(f, up_prefix(w, len(w.stem) + reps * len(w.loop)), True)
        if ans == prev:
            return ans
        prev, reps = ans, 2 * reps


def brute_eval_up(s, w: UPWord) -> bool:
    """Windows of doubling length until two consecutive answers agree."""
    f = s.formula if isinstance(s, lg.Sentence) else s
    if lg.classify(f)[0] == "Other":
        raise lg.FormulaError("oracle evaluates BΣ₁ sentences only")
    return _blocks_up(f, w)


def _rand_qf(rng: random.Random, vars_, letters, size):
    if size <= 1:
        kind = rng.randrange(6)
        x, y = rng.choice(vars_), rng.choice(vars_)
        atom = [lg.Label(x, rng.choice(letters)), lg.Min(x), lg.Max(x), lg.Less(x, y),
                lg.Succ(x, y), lg.Label(y, rng.choice(letters))][kind]
        return lg.Not(atom) if rng.random() < 0.3 else atom
    left = rng.randint(1, size - 1)
    op = lg.And if rng.random() < 0.6 else lg.Or
    return op(_rand_qf(rng, vars_, letters, left), _rand_qf(rng, vars_, letters, size - left))


def random_sentences(alphabet: Alphabet, max_depth: int, count: int, seed: int = 0):
    """Seeded random BΣ₁ sentences with at most ``max_depth`` variables per block."""
    rng = random.Random(seed)
    letters = alphabet.letters
    out = []
    for _ in range(count):
        parts = []
        for _ in range(rng.randint(1, 2)):
            k = rng.randint(1, max_depth)
            vars_ = [f"v{i}" for i in range(k)]
            body = _rand_qf(rng, vars_, letters, rng.randint(1, 2 * k + 1))
            universal = rng.random() < 0.25
            f = body
            for v in reversed(vars_):
                f = lg.Forall(v, f) if universal else lg.Exists(v, f)
            parts.append(lg.Not(f) if rng.random() < 0.3 else f)
        f = parts[0] if len(parts) == 1 else (lg.And if rng.random() < 0.5 else lg.Or)(*parts)
        out.append(lg.Sentence(f))
    return out


# automata -----------------------------------------------------------------

def brute_accepts_up(A: ExtendedBuchiAutomaton, w: UPWord) -> bool:
    """Büchi acceptance via the product of A with the loop phase."""
    F = A.finals_omega
    starts = set(A.initial)
    for a in w.stem:
        starts = {q for (p, b, q) in A.transitions if p in starts and b == a}
    L = len(w.loop)
    succ = {}
    for (p, b, q) in A.transitions:
        for i in range(L):
            if w.loop[i] == b:
                succ.setdefault((p, i), set()).add((q, (i + 1) % L))
    nodes = [(q, 0) for q in starts]
    reach = set(nodes)
    while nodes:
        x = nodes.pop()
        for y in succ.get(x, ()):
            if y not in reach:
                reach.add(y)
                nodes.append(y)

    def reaches(src, dst):
        seen, todo = {src}, [src]
        while todo:
            x = todo.pop()
            for y in succ.get(x, ()):
                if y == dst:
                    return True
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return False

    return any(x[0] in F and reaches(x, x) for x in reach)


def brute_member(A: ExtendedBuchiAutomaton, w: AnyWord) -> bool:
    """Membership by direct subset simulation and the product-graph Büchi check."""
    if isinstance(w, UPWord):
        return A.mode != "star" and brute_accepts_up(A, w)
    if A.mode == "omega":
        return False
    cur = set(A.initial)
    for a in w:
        cur = {q for (p, b, q) in A.transitions if p in cur and b == a}
    return bool(cur & A.finite_final)


def _context_words(u, p, v, w, variant):
    if variant == "linear":
        return u + p + v if not w else UPWord(u + p + v, w)
    return UPWord(u, p + v)


def brute_syntactic_separate(A: ExtendedBuchiAutomaton, p: str, q: str, g: Grid):
    """First word context within the grid bounds that separates ``p`` and ``q``."""
    if not p or not q:
        raise ValueError("p and q must be nonempty")
    words = list(_words_up_to(A.alphabet.letters, g.max_word_len))
    for total in range(3 * g.max_word_len + 1):
        for u in words:
            for v in words:
                rest = total - len(u) - len(v)
                if rest < 0:
                    continue
                for w in words:
                    if len(w) != rest:
                        continue
                    if brute_member(A, _context_words(u, p, v, w, "linear")) != \
                            brute_member(A, _context_words(u, q, v, w, "linear")):
                        return (u, v, w, "linear")
                if rest == 0 and brute_member(A, UPWord(u, p + v)) != brute_member(A, UPWord(u, q + v)):
                    return (u, v, "", "cyclic")
    return None


def brute_syntactic_partition(A: ExtendedBuchiAutomaton, reps: list[str], g: Grid) -> list[int]:
    """Group nonempty representative words by the absence of a separating context."""
    labels: list[int] = []
    classes: list[str] = []
    for r in reps:
        for i, c in enumerate(classes):
            if brute_syntactic_separate(A, r, c, g) is None:
                labels.append(i)
                break
        else:
            classes.append(r)
            labels.append(len(classes) - 1)
    return labels


def _subsets(n):
    for mask in range(1 << n):
        yield frozenset(i for i in range(n) if mask >> i & 1)


def enumerate_automata(g: Grid, modes=("infty",), sample: Optional[int] = None,
                       seed: int = 0) -> Iterator[ExtendedBuchiAutomaton]:
    """Every automaton up to ``max_states`` states (nonempty initial set), or a seeded sample.

    Order: states, mode, initial, transitions, finite finals, Büchi finals.
    Final sets that the mode ignores are fixed to empty so the stream has no
    behavioural duplicates of that kind.
    """
    letters = g.alphabet.letters
    if sample is not None:
        rng = random.Random(seed)
        seen = set()
        tries = 0
        while len(seen) < sample and tries < 50 * sample:
            tries += 1
            n = rng.randint(1, max(1, g.max_states))
            mode = rng.choice(list(modes))
            init = frozenset(q for q in range(n) if rng.random() < 0.5) or frozenset([0])
            trans = frozenset((p, a, q) for p in range(n) for a in letters for q in range(n)
                              if rng.random() < 0.45)
            ff = frozenset() if mode == "omega" else frozenset(q for q in range(n) if rng.random() < 0.4)
            bf = frozenset() if mode == "star" else frozenset(q for q in range(n) if rng.random() < 0.4)
            A = ExtendedBuchiAutomaton(g.alphabet, n, init, trans, ff, bf, mode)
            if A not in seen:
                seen.add(A)
                yield A
        return
    for n in range(1, g.max_states + 1):
        all_t = [(p, a, q) for p in range(n) for a in letters for q in range(n)]
        for mode in modes:
            for init in _subsets(n):
                if not init:
                    continue
                for tmask in range(1 << len(all_t)):
                    trans = frozenset(all_t[i] for i in range(len(all_t)) if tmask >> i & 1)
                    for ff in ([frozenset()] if mode == "omega" else _subsets(n)):
                        for bf in ([frozenset()] if mode == "star" else _subsets(n)):
                            yield ExtendedBuchiAutomaton(g.alphabet, n, init, trans, ff, bf, mode)
