"""Decision procedures for the alternation-free fragments, with certificates.

``thm5``   BΣ1[<,+1,min] over finite and infinite words: B1 and R-closed.
``thm15``  BΣ1[<,+1,min,max] over finite and infinite words: B1 and R+-closed.
``thm14``  dot-depth one over finite words: B1.
``thm17``  dot-depth one over infinite words: B1 and R+-closed.

Every "no" carries a certificate that is re-verified against the language
before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .algebra import (B1Witness, GreenData, LinkedPair, SubSemigroup, b1_check_equation,
                      exponent, green, is_b1)
from .automata import ExtendedBuchiAutomaton
from .recognition import (RecognizingHom, build_pure_profile_hom, restrict,
                          syntactic_quotient)
from .words import AnyWord, UPWord

__all__ = [
    "VerificationError",
    "B1Violation",
    "LinkedPairViolation",
    "Context",
    "Verdict",
    "synt_semigroup",
    "check_b1_condition",
    "check_r_closed",
    "check_r_plus_closed",
    "lemma10_diagnostic",
    "b1_witness_words",
    "distinguishing_context",
    "context_words",
    "certify_b1",
    "certify_linked_pairs",
    "verify_certificate",
    "decide_hom",
    "decide_all",
    "THEOREMS",
]

THEOREMS = ("thm5", "thm14", "thm15", "thm17")
YES, NO, NA = "yes", "no", "n/a"


class VerificationError(RuntimeError):
    """A certificate failed re-verification; indicates an internal bug."""


@dataclass(frozen=True)
class Context:
    u: str
    v: str
    w: str
    variant: str  # "linear" | "cyclic"

    def to_json(self):
        return {"u": self.u, "v": self.v, "w": self.w, "variant": self.variant}


def context_words(ctx: Context, p: str, q: str) -> tuple[AnyWord, AnyWord]:
    """Instantiate ``upvw^omega`` / ``u(pv)^omega`` for both ``p`` and ``q``."""
    if ctx.variant == "linear":
        if ctx.w:
            return UPWord(ctx.u + p + ctx.v, ctx.w), UPWord(ctx.u + q + ctx.v, ctx.w)
        return ctx.u + p + ctx.v, ctx.u + q + ctx.v
    return UPWord(ctx.u, p + ctx.v), UPWord(ctx.u, q + ctx.v)


@dataclass(frozen=True)
class B1Violation:
    witness: B1Witness
    words: dict            # name -> representative word
    n: int
    p: str
    q: str
    context: Context
    kind: str = "B1Violation"

    def to_json(self):
        return {
            "kind": self.kind,
            "elements": dict(self.witness._asdict()),
            "words": dict(self.words),
            "n": self.n,
            "p": self.p,
            "q": self.q,
            "context": self.context.to_json(),
        }


@dataclass(frozen=True)
class LinkedPairViolation:
    first: LinkedPair
    second: LinkedPair
    words: dict            # "s", "e", "t", "f" -> representatives
    member: AnyWord        # witness of the accepted block
    non_member: AnyWord    # witness of the rejected block
    kind: str = "LinkedPairViolation"

    def to_json(self):
        return {
            "kind": self.kind,
            "pairs": [list(self.first), list(self.second)],
            "words": dict(self.words),
            "member": str(self.member),
            "non_member": str(self.non_member),
        }


Certificate = Union[B1Violation, LinkedPairViolation]


def _require_strict(h: RecognizingHom):
    if not h.epsilon_strict:
        raise ValueError("condition needs a homomorphism with h(u) = 1 only for u = 1")


def synt_semigroup(h: RecognizingHom) -> SubSemigroup:
    """``h(Γ+)``; for a strict homomorphism this is everything but the identity."""
    _require_strict(h)
    M = h.monoid
    return SubSemigroup(M, frozenset(x for x in range(M.size) if x != M.identity))


def check_b1_condition(h: RecognizingHom) -> tuple[bool, Optional[B1Witness]]:
    return is_b1(synt_semigroup(h))


def _linked_pair_violation(h: RecognizingHom, plus: bool):
    G = green(h.monoid)
    one = h.identity
    pairs = [p for p in h.pairs if not plus or p.e != one]
    for i, (s, e) in enumerate(pairs):
        for (t, f) in pairs[i + 1:]:
            if G.R(s, t) and h.Accept(s, e) != h.Accept(t, f):
                return False, (LinkedPair(s, e), LinkedPair(t, f))
    return True, None


def check_r_closed(h: RecognizingHom):
    """Accept is constant on linked pairs whose first components are R-related."""
    return _linked_pair_violation(h, plus=False)


def check_r_plus_closed(h: RecognizingHom):
    """As :func:`check_r_closed`, restricted to pairs with ``e != 1 != f``."""
    _require_strict(h)
    return _linked_pair_violation(h, plus=True)


def lemma10_diagnostic(h: RecognizingHom) -> bool:
    one = h.identity
    return all(h.Accept(s, one) == h.Accept(s, e) for (s, e) in h.pairs)


def b1_witness_words(e: str, f: str, s: str, t: str, x: str, y: str, n: int) -> tuple[str, str]:
    """The word pair ``(e^n x f^n y)^n e^n {x|s} f^n (t e^n s f^n)^n``."""
    for name, w in zip("efstxy", (e, f, s, t, x, y)):
        if not w:
            raise ValueError(f"word {name} must be nonempty")
    if n < 1:
        raise ValueError("n must be positive")
    en, fn = e * n, f * n
    head = (en + x + fn + y) * n
    tail = (t + en + s + fn) * n
    return head + en + x + fn + tail, head + en + s + fn + tail


def _contexts_by_length(h: RecognizingHom):
    """Monoid-level contexts ordered by total preimage length, linear before cyclic."""
    n = h.monoid.size
    ln = [len(h.preimage[x]) for x in range(n)]
    out = []
    for u in range(n):
        for v in range(n):
            for w in range(n):
                out.append((ln[u] + ln[v] + ln[w], 0, u, v, w))
            out.append((ln[u] + ln[v], 1, u, v, h.identity))
    out.sort()
    return out


def _context_value(h: RecognizingHom, x: int, variant: int, u: int, v: int, w: int) -> bool:
    M = h.monoid
    one = h.identity
    if variant == 0:
        if w == one:
            return h.Accept(M.mul(u, x, v), one)
        e = int(M.omega[w])
        return h.Accept(M.mul(u, x, v, e), e)
    e = int(M.omega[M.mul(x, v)])
    return h.Accept(M.mul(u, e), e)


def distinguishing_context(h: RecognizingHom, p: str, q: str) -> Context:
    """First context (in length order) separating ``p`` from ``q`` in the language."""
    if not p or not q:
        raise ValueError("p and q must be nonempty")
    _require_strict(h)
    hp, hq = h.image(p), h.image(q)
    if hp == hq:
        raise ValueError(f"h(p) = h(q) = {hp}; no context can separate them")
    for (_, variant, u, v, w) in _contexts_by_length(h):
        if _context_value(h, hp, variant, u, v, w) != _context_value(h, hq, variant, u, v, w):
            pre = h.preimage
            ctx = Context(pre[u], pre[v], pre[w] if variant == 0 else "",
                          "linear" if variant == 0 else "cyclic")
            wp, wq = context_words(ctx, p, q)
            if h.language_member(wp) == h.language_member(wq):
                raise VerificationError(f"context {ctx} does not separate {p!r} and {q!r} in L")
            return ctx
    raise ValueError("no separating context; is the homomorphism syntactic?")


def certify_b1(h: RecognizingHom, witness: B1Witness) -> B1Violation:
    S = synt_semigroup(h)
    n = exponent(S)
    words = {k: h.preimage[v] for k, v in witness._asdict().items()}
    p, q = b1_witness_words(words["e"], words["f"], words["s"], words["t"], words["x"], words["y"], n)
    ctx = distinguishing_context(h, p, q)
    cert = B1Violation(witness, words, n, p, q, ctx)
    verify_certificate(h, cert)
    return cert


def certify_linked_pairs(h: RecognizingHom, pairs) -> LinkedPairViolation:
    a, b = pairs
    if not h.Accept(*a):
        a, b = b, a
    words = {"s": h.preimage[a.s], "e": h.preimage[a.e], "t": h.preimage[b.s], "f": h.preimage[b.e]}
    cert = LinkedPairViolation(a, b, words, h.block_word(*a), h.block_word(*b))
    verify_certificate(h, cert)
    return cert


def verify_certificate(h: RecognizingHom, cert: Certificate) -> bool:
    """Re-check a certificate; raises :class:`VerificationError` on failure."""
    if isinstance(cert, B1Violation):
        S = synt_semigroup(h)
        if b1_check_equation(S, *cert.witness):
            raise VerificationError("B1 witness satisfies the equation")
        for k, v in cert.witness._asdict().items():
            if h.image(cert.words[k]) != v:
                raise VerificationError(f"word for {k} does not map to element {v}")
        if h.image(cert.p) == h.image(cert.q):
            raise VerificationError("witness words have equal images")
        wp, wq = context_words(cert.context, cert.p, cert.q)
        if h.language_member(wp) == h.language_member(wq):
            raise VerificationError("context does not separate the witness words")
        return True
    G = green(h.monoid)
    a, b = cert.first, cert.second
    if not G.R(a.s, b.s):
        raise VerificationError("first components are not R-related")
    if h.Accept(*a) == h.Accept(*b):
        raise VerificationError("Accept agrees on both pairs")
    if not (h.language_member(cert.member) and not h.language_member(cert.non_member)):
        raise VerificationError("representative memberships do not confirm the Accept table")
    return True


@dataclass
class Verdict:
    mode: str
    verdicts: dict = field(default_factory=lambda: {t: NA for t in THEOREMS})
    reasons: dict = field(default_factory=dict)
    certificates: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "verdicts": dict(self.verdicts),
            "reasons": dict(self.reasons),
            "certificate": {k: c.to_json() for k, c in self.certificates.items()},
            "diagnostics": dict(self.diagnostics),
        }

    def to_text(self) -> str:
        lines = [f"mode: {self.mode}"]
        for t in THEOREMS:
            line = f"  {t:6s} {self.verdicts[t]}"
            if t in self.reasons:
                line += f"  (failed: {self.reasons[t]})"
            lines.append(line)
        for k, v in self.diagnostics.items():
            lines.append(f"  {k}: {v}")
        for t, c in self.certificates.items():
            lines.append(f"certificate for {t}: {c.kind}")
            if isinstance(c, B1Violation):
                lines.append(f"  elements {dict(c.witness._asdict())}, n = {c.n}")
                lines.append(f"  p = {c.p}")
                lines.append(f"  q = {c.q}")
                ctx = c.context
                lines.append(f"  context ({ctx.variant}): u={ctx.u!r} v={ctx.v!r} w={ctx.w!r}")
            else:
                lines.append(f"  pairs {tuple(c.first)} accepted vs {tuple(c.second)} rejected")
                lines.append(f"  member {c.member}   non-member {c.non_member}")
        return "\n".join(lines)


def _evaluate(h: RecognizingHom, plus: Optional[bool]):
    """B1, then (optionally) the linked-pair condition; first failure wins.

    ``plus=None`` checks B1 only.
    """
    ok, wit = check_b1_condition(h)
    if not ok:
        return NO, "B1", certify_b1(h, wit)
    if plus is None:
        return YES, None, None
    ok, pairs = check_r_plus_closed(h) if plus else check_r_closed(h)
    if not ok:
        return NO, "R_plus_closed" if plus else "R_closed", certify_linked_pairs(h, pairs)
    return YES, None, None


def _record(v: Verdict, thm: str, result):
    verdict, reason, cert = result
    v.verdicts[thm] = verdict
    if reason:
        v.reasons[thm] = reason
        v.certificates[thm] = cert


def decide_hom(h: RecognizingHom, mode: Optional[str] = None) -> Verdict:
    """Run the applicable theorems on a strict recognizing homomorphism."""
    _require_strict(h)
    mode = mode or h.mode
    synt = syntactic_quotient(h)
    v = Verdict(mode)
    v.diagnostics["synt_size"] = synt.monoid.size - 1
    if mode == "infty":
        _record(v, "thm5", _evaluate(synt, plus=False))
        _record(v, "thm15", _evaluate(synt, plus=True))
        v.diagnostics["lemma10"] = lemma10_diagnostic(synt)
        fin = syntactic_quotient(restrict(synt, "finite"))
        _record(v, "thm14", _evaluate(fin, plus=None))
        inf = syntactic_quotient(restrict(synt, "infinite"))
        _record(v, "thm17", _evaluate(inf, plus=True))
    elif mode == "star":
        _record(v, "thm14", _evaluate(synt, plus=None))
    elif mode == "omega":
        _record(v, "thm17", _evaluate(synt, plus=True))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return v


def decide_all(A: ExtendedBuchiAutomaton) -> Verdict:
    return decide_hom(build_pure_profile_hom(A), A.mode)
