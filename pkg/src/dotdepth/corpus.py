"""Small named automata used by the tests, the acceptance suite and the CLI.

``EXPECTED`` lists the verdicts each language is known to have.
"""

from __future__ import annotations

from .automata import ExtendedBuchiAutomaton

__all__ = ["CORPUS", "EXPECTED", "get", "duplicate", "parity_product", "names"]

AB = ("a", "b")


def _a_then_all():
    # aΓ^∞
    return ExtendedBuchiAutomaton.build(
        AB, 2, [0], [(0, "a", 1), (1, "a", 1), (1, "b", 1)], [1], [1], "infty")


def _ends_with_a():
    # Γ*a
    return ExtendedBuchiAutomaton.build(
        AB, 2, [0], [(0, "a", 0), (0, "b", 0), (0, "a", 1)], [1], [], "infty")


def _all_infinite():
    # Γ^ω
    return ExtendedBuchiAutomaton.build(AB, 1, [0], [(0, "a", 0), (0, "b", 0)], [], [0], "infty")


def _everything():
    # Γ^∞
    return ExtendedBuchiAutomaton.build(AB, 1, [0], [(0, "a", 0), (0, "b", 0)], [0], [0], "infty")


def _nothing():
    return ExtendedBuchiAutomaton.build(AB, 1, [0], [(0, "a", 0), (0, "b", 0)], [], [], "infty")


def _even_as():
    # (aa)* over {a}
    return ExtendedBuchiAutomaton.build(("a",), 2, [0], [(0, "a", 1), (1, "a", 0)], [0], [], "star")


def _ab_star():
    # (ab)*
    return ExtendedBuchiAutomaton.build(AB, 2, [0], [(0, "a", 1), (1, "b", 0)], [0], [], "star")


def _contains_ab():
    # Γ*abΓ^ω
    t = [(0, "a", 0), (0, "b", 0), (0, "a", 1), (1, "b", 2), (2, "a", 2), (2, "b", 2)]
    return ExtendedBuchiAutomaton.build(AB, 3, [0], t, [], [2], "omega")


def _infinitely_many_a():
    # (b*a)^ω
    t = [(0, "a", 1), (0, "b", 0), (1, "a", 1), (1, "b", 0)]
    return ExtendedBuchiAutomaton.build(AB, 2, [0], t, [], [1], "omega")


def _b_after_a_ends_b():
    # Γ*a then only b's, finite or infinite: Γ*ab* ∪ Γ*ab^ω
    t = [(0, "a", 0), (0, "b", 0), (0, "a", 1), (1, "b", 1)]
    return ExtendedBuchiAutomaton.build(AB, 2, [0], t, [1], [1], "infty")


def _depth_two_dyck():
    # (a(ab)*b)*: star-free but not of dot-depth one
    t = [(0, "a", 1), (1, "a", 2), (2, "b", 1), (1, "b", 0)]
    return ExtendedBuchiAutomaton.build(AB, 3, [0], t, [0], [], "star")


CORPUS = {
    "a_all": _a_then_all,
    "ends_a": _ends_with_a,
    "omega": _all_infinite,
    "all": _everything,
    "empty": _nothing,
    "even_a": _even_as,
    "ab_star": _ab_star,
    "contains_ab": _contains_ab,
    "inf_a": _infinitely_many_a,
    "last_a_then_b": _b_after_a_ends_b,
    "dyck2": _depth_two_dyck,
}

_ALL_YES = {"thm5": "yes", "thm14": "yes", "thm15": "yes", "thm17": "yes"}

EXPECTED = {
    "a_all": dict(_ALL_YES),
    "ends_a": {"thm5": "no", "thm14": "yes", "thm15": "yes", "thm17": "yes"},
    "omega": {"thm5": "no", "thm14": "yes", "thm15": "yes", "thm17": "yes"},
    "all": dict(_ALL_YES),
    "empty": dict(_ALL_YES),
    "even_a": {"thm5": "n/a", "thm14": "no", "thm15": "n/a", "thm17": "n/a"},
    "ab_star": {"thm5": "n/a", "thm14": "yes", "thm15": "n/a", "thm17": "n/a"},
    "contains_ab": {"thm5": "n/a", "thm14": "n/a", "thm15": "n/a", "thm17": "yes"},
    "inf_a": {"thm5": "n/a", "thm14": "n/a", "thm15": "n/a", "thm17": "no"},
    "last_a_then_b": {"thm5": "no", "thm14": "yes", "thm15": "no", "thm17": "no"},
    "dyck2": {"thm5": "n/a", "thm14": "no", "thm15": "n/a", "thm17": "n/a"},
}


def names() -> list[str]:
    return list(CORPUS)


def get(name: str) -> ExtendedBuchiAutomaton:
    try:
        return CORPUS[name]()
    except KeyError:
        raise KeyError(f"unknown corpus language {name!r}; known: {', '.join(CORPUS)}") from None


def duplicate(A: ExtendedBuchiAutomaton) -> ExtendedBuchiAutomaton:
    """Disjoint union of ``A`` with a copy of itself (same language)."""
    n = A.states
    sh = lambda S: set(S) | {q + n for q in S}
    trans = set(A.transitions) | {(p + n, a, q + n) for (p, a, q) in A.transitions}
    return ExtendedBuchiAutomaton(A.alphabet, 2 * n, frozenset(sh(A.initial)), frozenset(trans),
                                  frozenset(sh(A.finite_final)), frozenset(sh(A.buechi_final)), A.mode)


def parity_product(A: ExtendedBuchiAutomaton) -> ExtendedBuchiAutomaton:
    """Product of ``A`` with a length-parity counter (same language, twice the states)."""
    n = A.states
    enc = lambda q, b: 2 * q + b
    trans = {(enc(p, b), a, enc(q, 1 - b)) for (p, a, q) in A.transitions for b in (0, 1)}
    both = lambda S: {enc(q, b) for q in S for b in (0, 1)}
    return ExtendedBuchiAutomaton(A.alphabet, 2 * n, frozenset(enc(q, 0) for q in A.initial),
                                  frozenset(trans), frozenset(both(A.finite_final)),
                                  frozenset(both(A.buechi_final)), A.mode)
