"""First-order formulas over words with predicates ``<``, ``+1``, ``min``, ``max``.

Positions are 1-based in the semantics and 0-based inside the evaluator.
``Succ(x, y)`` means ``x = y + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .sexp import Quoted, SexpError, read
from .words import AnyWord, UPWord, up_prefix

__all__ = [
    "Top", "Label", "Min", "Max", "Less", "Succ", "And", "Or", "Not", "Exists", "Forall",
    "Formula", "Sentence", "FormulaError",
    "free_vars", "depth", "signature", "classify", "eval_finite", "eval_up", "evaluate",
    "window_bound", "parse_sexp", "to_sexp", "exists_chain", "forall_chain",
]


class FormulaError(ValueError):
    pass


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Label:
    var: str
    letter: str


@dataclass(frozen=True)
class Min:
    var: str


@dataclass(frozen=True)
class Max:
    var: str


@dataclass(frozen=True)
class Less:
    x: str
    y: str


@dataclass(frozen=True)
class Succ:
    """``x = y + 1``."""
    x: str
    y: str


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
    arg: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


Formula = Union[Top, Label, Min, Max, Less, Succ, And, Or, Not, Exists, Forall]
_ATOMS = (Top, Label, Min, Max, Less, Succ)
_SIG = {Less: "<", Succ: "+1", Min: "min", Max: "max"}


def _atom_vars(f) -> tuple:
    if isinstance(f, (Label, Min, Max)):
        return (f.var,)
    if isinstance(f, (Less, Succ)):
        return (f.x, f.y)
    return ()


def free_vars(f) -> frozenset:
    if isinstance(f, _ATOMS):
        return frozenset(_atom_vars(f))
    if isinstance(f, (And, Or)):
        return frozenset().union(*(free_vars(p) for p in f.parts))
    if isinstance(f, Not):
        return free_vars(f.arg)
    return free_vars(f.body) - {f.var}


def depth(f) -> int:
    if isinstance(f, _ATOMS):
        return 0
    if isinstance(f, (And, Or)):
        return max((depth(p) for p in f.parts), default=0)
    if isinstance(f, Not):
        return depth(f.arg)
    return 1 + depth(f.body)


def signature(f) -> frozenset:
    if isinstance(f, _ATOMS):
        s = _SIG.get(type(f))
        return frozenset([s]) if s else frozenset()
    if isinstance(f, (And, Or)):
        return frozenset().union(*(signature(p) for p in f.parts))
    if isinstance(f, Not):
        return signature(f.arg)
    return signature(f.body)


def _chain(f, kind):
    vars_ = []
    while isinstance(f, kind):
        vars_.append(f.var)
        f = f.body
    return tuple(vars_), f


def exists_chain(f):
    return _chain(f, Exists)


def forall_chain(f):
    return _chain(f, Forall)


def _is_qf(f) -> bool:
    return depth(f) == 0


def _is_sigma1(f) -> bool:
    _, body = exists_chain(f)
    return _is_qf(body) and not free_vars(f)


def _is_pi1(f) -> bool:
    _, body = forall_chain(f)
    return _is_qf(body) and not free_vars(f)


def _is_bsigma1(f) -> bool:
    if free_vars(f):
        return False
    if _is_sigma1(f) or _is_pi1(f):
        return True
    if isinstance(f, Not):
        return _is_bsigma1(f.arg)
    if isinstance(f, (And, Or)):
        return all(_is_bsigma1(p) for p in f.parts)
    return False


@dataclass(frozen=True)
class Sentence:
    """A formula without free variables."""

    formula: Formula

    def __post_init__(self):
        fv = free_vars(self.formula)
        if fv:
            raise FormulaError(f"free variables in sentence: {', '.join(sorted(fv))}")
        f = self.formula
        cache = self.__dict__
        cache["depth"] = depth(f)
        cache["signature"] = signature(f)
        cache["kind"] = _kind(f)
        cache["_evaluator"] = (lambda g: lambda st: g([], st))(_compile(f, {}))
        cache["_up_evaluator"] = _compile_up(f) if cache["kind"] != "Other" else None

    def __str__(self):
        return to_sexp(self.formula)


def _kind(f) -> str:
    if _is_sigma1(f):
        return "Sigma1"
    if _is_bsigma1(f):
        return "BSigma1"
    return "Other"


def classify(s) -> tuple[str, frozenset]:
    """``("Sigma1" | "BSigma1" | "Other", signature)``."""
    if isinstance(s, Sentence):
        return s.kind, s.signature
    return _kind(s), signature(s)


# evaluation ---------------------------------------------------------------
#
# Formulas are compiled once into closures over a list of variable slots.
# An existential chain is searched variable by variable; each top-level
# conjunct of its body is checked as soon as its variables are bound, and
# min/successor/label conjuncts narrow the candidate positions.

class _Structure:
    __slots__ = ("word", "n", "infinite", "by_letter")

    def __init__(self, word: str, infinite: bool):
        self.word = word
        self.n = len(word)
        self.infinite = infinite
        self.by_letter = {}
        for i, a in enumerate(word):
            self.by_letter.setdefault(a, []).append(i)


def _compile(f, idx: dict):
    if isinstance(f, Top):
        return lambda env, st: True
    if isinstance(f, Label):
        i, a = idx[f.var], f.letter
        return lambda env, st: st.word[env[i]] == a
    if isinstance(f, Min):
        i = idx[f.var]
        return lambda env, st: env[i] == 0
    if isinstance(f, Max):
        i = idx[f.var]
        return lambda env, st: not st.infinite and env[i] == st.n - 1
    if isinstance(f, Less):
        i, j = idx[f.x], idx[f.y]
        return lambda env, st: env[i] < env[j]
    if isinstance(f, Succ):
        i, j = idx[f.x], idx[f.y]
        return lambda env, st: env[i] == env[j] + 1
    if isinstance(f, Not):
        g = _compile(f.arg, idx)
        return lambda env, st: not g(env, st)
    if isinstance(f, And):
        gs = [_compile(p, idx) for p in f.parts]
        return lambda env, st: all(g(env, st) for g in gs)
    if isinstance(f, Or):
        gs = [_compile(p, idx) for p in f.parts]
        return lambda env, st: any(g(env, st) for g in gs)
    if isinstance(f, Exists):
        vars_, body = exists_chain(f)
        return _compile_search(vars_, body, idx, negate=False)
    vars_, body = forall_chain(f)
    return _compile_search(vars_, Not(body), idx, negate=True)


def _hint(c, var: str, slot_of: dict, level_of: dict, lvl: int):
    """Candidate generator for ``var`` from a single conjunct, if it gives one."""
    if isinstance(c, Min) and c.var == var:
        return lambda env, st: (0,) if st.n else ()
    if isinstance(c, Label) and c.var == var:
        a = c.letter
        return lambda env, st: st.by_letter.get(a, ())
    if isinstance(c, Succ):
        if c.x == var and c.y != var and level_of.get(c.y, -1) < lvl:
            j = slot_of[c.y]
            return lambda env, st: (env[j] + 1,) if env[j] + 1 < st.n else ()
        if c.y == var and c.x != var and level_of.get(c.x, -1) < lvl:
            j = slot_of[c.x]
            return lambda env, st: (env[j] - 1,) if env[j] >= 1 else ()
    return None


def _compile_search(vars_, body, idx: dict, negate: bool):
    base = max(idx.values(), default=-1) + 1
    idx2 = dict(idx)
    level_of = {}
    for lvl, v in enumerate(vars_):
        idx2[v] = base + lvl
        level_of[v] = lvl
    # shadowed outer variables are no longer visible by name
    outer_level = {v: -1 for v in idx if v not in level_of}
    conj = list(body.parts) if isinstance(body, And) else [body]
    k = len(vars_)
    checks = [[] for _ in range(k + 1)]   # checks[l]: conjuncts complete after binding l vars
    hints = [None] * k
    for c in conj:
        need = [level_of[v] for v in free_vars(c) if v in level_of]
        at = max(need) + 1 if need else 0
        checks[at].append(_compile(c, idx2))
        if need and hints[at - 1] is None and not isinstance(c, Label):
            hints[at - 1] = _hint(c, vars_[at - 1], idx2, {**outer_level, **level_of}, at - 1)
    for c in conj:
        for lvl in range(k):
            if hints[lvl] is None and isinstance(c, Label) and c.var == vars_[lvl]:
                hints[lvl] = _hint(c, vars_[lvl], idx2, level_of, lvl)
    if k == 0:
        pre = checks[0]
        return lambda env, st: all(g(env, st) for g in pre) != negate

    def run(env, st):
        for g in checks[0]:
            if not g(env, st):
                return negate
        # a closed subformula can run before the enclosing block has bound its slots
        n0 = len(env)
        env.extend([0] * (base + k - n0))
        try:
            found = _dfs(0, env, st)
        finally:
            del env[n0:]
        return found != negate

    def _dfs(lvl, env, st):
        slot = base + lvl
        h = hints[lvl]
        cands = h(env, st) if h is not None else range(st.n)
        nxt = checks[lvl + 1]
        last = lvl + 1 == k
        for p in cands:
            env[slot] = p
            ok = True
            for g in nxt:
                if not g(env, st):
                    ok = False
                    break
            if ok and (last or _dfs(lvl + 1, env, st)):
                return True
        return False

    return run


def _compiled(s) -> "Sentence":
    if isinstance(s, Sentence):
        return s
    return Sentence(s)


def eval_finite(s, w: str) -> bool:
    s = _compiled(s)
    return s._evaluator(_Structure(w, False))


def window_bound(w: UPWord, k: int) -> int:
    """Prefix length that suffices for an existential block of ``k`` variables."""
    return len(w.stem) + (k + 1) * (k + len(w.loop) + 1)


def _compile_up(f):
    """Evaluator over UPWords: each quantifier block runs on its own window."""
    if isinstance(f, (Exists, Forall)):
        vars_, _ = exists_chain(f) if isinstance(f, Exists) else forall_chain(f)
        g = _compile(f, {})
        k = len(vars_)
        return lambda w: g([], _Structure(up_prefix(w, window_bound(w, k)), True))
    if isinstance(f, Not):
        g = _compile_up(f.arg)
        return lambda w: not g(w)
    if isinstance(f, And):
        gs = [_compile_up(p) for p in f.parts]
        return lambda w: all(g(w) for g in gs)
    if isinstance(f, Or):
        gs = [_compile_up(p) for p in f.parts]
        return lambda w: any(g(w) for g in gs)
    g = _compile(f, {})
    return lambda w: g([], _Structure("", True))


def eval_up(s, w: UPWord) -> bool:
    s = _compiled(s)
    if s.kind == "Other":
        raise FormulaError("not in BΣ₁: evaluation over infinite words needs a Boolean "
                           "combination of existential sentences")
    return s._up_evaluator(w)


def evaluate(s, w: AnyWord) -> bool:
    return eval_up(s, w) if isinstance(w, UPWord) else eval_finite(s, w)


# s-expressions ------------------------------------------------------------

_UNARY = {"min": Min, "max": Max}
_BINARY = {"less": Less, "succ": Succ}


def _build(e):
    if not isinstance(e, list) or not e or isinstance(e[0], list):
        raise FormulaError(f"expected a formula, got {e!r}")
    head, args = e[0], e[1:]

    def arity(n):
        if len(args) != n:
            raise FormulaError(f"({head} ...) takes {n} argument(s), got {len(args)}")

    def sym(x):
        if isinstance(x, list):
            raise FormulaError(f"({head} ...) expects a symbol, got a list")
        return str(x)

    if head == "true":
        arity(0)
        return Top()
    if head == "label":
        arity(2)
        letter = sym(args[1])
        if len(letter) != 1:
            raise FormulaError(f"label letter must be a single character, got {letter!r}")
        return Label(sym(args[0]), letter)
    if head in _UNARY:
        arity(1)
        return _UNARY[head](sym(args[0]))
    if head in _BINARY:
        arity(2)
        return _BINARY[head](sym(args[0]), sym(args[1]))
    if head == "not":
        arity(1)
        return Not(_build(args[0]))
    if head in ("and", "or"):
        if not args:
            raise FormulaError(f"({head}) needs at least one argument")
        parts = [_build(a) for a in args]
        return And(*parts) if head == "and" else Or(*parts)
    if head in ("exists", "forall"):
        arity(2)
        q = Exists if head == "exists" else Forall
        return q(sym(args[0]), _build(args[1]))
    raise FormulaError(f"unknown operator {head!r}")


def parse_sexp(text: str) -> Sentence:
    try:
        e = read(text)
    except SexpError as exc:
        raise FormulaError(str(exc)) from None
    return Sentence(_build(e))


def to_sexp(f) -> str:
    if isinstance(f, Sentence):
        f = f.formula
    if isinstance(f, Top):
        return "(true)"
    if isinstance(f, Label):
        return f"(label {f.var} {f.letter})"
    if isinstance(f, Min):
        return f"(min {f.var})"
    if isinstance(f, Max):
        return f"(max {f.var})"
    if isinstance(f, Less):
        return f"(less {f.x} {f.y})"
    if isinstance(f, Succ):
        return f"(succ {f.x} {f.y})"
    if isinstance(f, Not):
        return f"(not {to_sexp(f.arg)})"
    if isinstance(f, (And, Or)):
        op = "and" if isinstance(f, And) else "or"
        return f"({op} {' '.join(to_sexp(p) for p in f.parts)})"
    q = "exists" if isinstance(f, Exists) else "forall"
    return f"({q} {f.var} {to_sexp(f.body)})"
