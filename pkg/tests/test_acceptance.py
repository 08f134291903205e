"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or directly as a script.
"""

import itertools
import random
import time

import pytest

from dotdepth import corpus, decide, factorize as fz, logic as lg, oracles, recognition as rc
from dotdepth.algebra import (SubSemigroup, b1_check_equation, exponent, green, is_aperiodic,
                              is_b1, linked_pairs)
from dotdepth.langexpr import (Tail, canonical_monomials, compile_to_sigma1, fingerprint,
                               member, universe_size)
from dotdepth.words import Alphabet, UPWord, alph_k

AB = Alphabet.of("ab")
GRID = oracles.Grid(AB)
FUZZ_COUNT = 200


def _report(n, ok, detail):
    line = f"criterion {n:2d} {'PASS' if ok else 'FAIL'}: {detail}"
    print(line)
    return line


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print()
            _report(n, ok, detail)
        assert ok, detail
    return emit


# shared helpers -------------------------------------------------------------

_HOMS = {}


def synt(A):
    key = id(A)
    if key not in _HOMS:
        _HOMS[key] = (A, rc.syntactic_quotient(rc.build_pure_profile_hom(A)))
    return _HOMS[key][1]


def grid_words():
    return list(oracles.enumerate_words(GRID))


def grid_ups():
    return list(oracles.enumerate_up(GRID))


def fuzzed(count=FUZZ_COUNT, seed=2024, modes=("infty",)):
    g = oracles.Grid(AB, max_states=3)
    return list(oracles.enumerate_automata(g, modes=modes, sample=count, seed=seed))


def part_member(A, thm):
    """Membership in the language a theorem's verdict is about."""
    kind = None
    if A.mode == "infty":
        kind = {"thm14": str, "thm17": UPWord}.get(thm)
    return lambda w: (kind is None or isinstance(w, kind)) and oracles.brute_member(A, w)


def hom_for(A, thm):
    h = synt(A)
    if A.mode == "infty" and thm == "thm14":
        return rc.syntactic_quotient(rc.restrict(h, "finite"))
    if A.mode == "infty" and thm == "thm17":
        return rc.syntactic_quotient(rc.restrict(h, "infinite"))
    return h


def naive_is_b1(M, els):
    n = exponent(SubSemigroup(M, els))
    ids = [e for e in els if M.mul(e, e) == e]
    for e, f in itertools.product(ids, repeat=2):
        for s, t, x, y in itertools.product(els, repeat=4):
            left = M.power(M.mul(e, x, f, y), n)
            right = M.power(M.mul(t, e, s, f), n)
            if M.mul(left, e, x, f, right) != M.mul(left, e, s, f, right):
                return False
    return True


def recheck(A, thm, cert):
    """Independent re-verification of a certificate against the automaton."""
    h = hom_for(A, thm)
    in_l = part_member(A, thm)
    if isinstance(cert, decide.B1Violation):
        S = decide.synt_semigroup(h)
        if b1_check_equation(S, *cert.witness):
            return "witness satisfies the B1 equation"
        for k, v in cert.witness._asdict().items():
            if h.image(cert.words[k]) != v:
                return f"word for {k} maps elsewhere"
        if h.image(cert.p) == h.image(cert.q):
            return "word pair has equal syntactic images"
        wp, wq = decide.context_words(cert.context, cert.p, cert.q)
        if in_l(wp) == in_l(wq):
            return "context does not separate the pair on the automaton"
        return None
    G = green(h.monoid)
    if not G.R(cert.first.s, cert.second.s):
        return "pairs not R-related"
    if h.Accept(*cert.first) == h.Accept(*cert.second):
        return "Accept agrees"
    if not in_l(cert.member) or in_l(cert.non_member):
        return "representative memberships contradict the Accept table"
    return None


def b1_homs():
    out = []
    for name in corpus.names():
        h = synt(corpus.get(name))
        if decide.check_b1_condition(h)[0]:
            out.append((name, h))
    return out


# criteria -------------------------------------------------------------------

def criterion_1():
    expect = {
        "a_all": {"thm5": "yes", "thm15": "yes"},
        "ends_a": {"thm5": "no", "thm15": "yes"},
        "omega": {"thm5": "no", "thm15": "yes"},
        "all": {t: "yes" for t in decide.THEOREMS},
        "empty": {t: "yes" for t in decide.THEOREMS},
    }
    bad = []
    for name, want in expect.items():
        A = corpus.get(name)
        assert A.mode == "infty" and A.alphabet == AB
        got = decide.decide_all(A).verdicts
        for thm, v in want.items():
            if got[thm] != v:
                bad.append(f"{name}.{thm}={got[thm]} (want {v})")
    return not bad, "5 reference languages match" if not bad else "; ".join(bad)


def criterion_2():
    problems = []
    for name, want in (("even_a", False), ("ab_star", True)):
        h = synt(corpus.get(name))
        S = decide.synt_semigroup(h)
        if naive_is_b1(h.monoid, S.sorted) != want or is_b1(S)[0] != want:
            problems.append(f"{name}: exhaustive B1 oracle disagrees with the fixed value")
    A = corpus.get("even_a")
    v = decide.decide_all(A)
    cert = v.certificates.get("thm14")
    if v.verdicts["thm14"] != "no" or not isinstance(cert, decide.B1Violation):
        problems.append("(aa)* did not yield thm14 no with a B1Violation")
    else:
        wp, wq = decide.context_words(cert.context, cert.p, cert.q)
        if oracles.brute_member(A, wp) == oracles.brute_member(A, wq):
            problems.append("(aa)* context does not separate the pair")
    if decide.decide_all(corpus.get("ab_star")).verdicts["thm14"] != "yes":
        problems.append("(ab)* thm14 is not yes")
    return not problems, "(aa)* no with verified B1 certificate, (ab)* yes" if not problems \
        else "; ".join(problems)


def _all_automata():
    out = [corpus.get(n) for n in corpus.names()]
    out += [corpus.duplicate(A) for A in out] + [corpus.parity_product(A) for A in out]
    out += fuzzed(modes=("infty", "star", "omega"), seed=7)
    return out


def criterion_3():
    total, failures = 0, []
    for A in _all_automata():
        v = decide.decide_all(A)
        for thm, cert in v.certificates.items():
            total += 1
            why = recheck(A, thm, cert)
            if why:
                failures.append(f"{thm}: {why}")
    ok = not failures and total > 0
    return ok, f"{total} certificates re-verified, {len(failures)} failures" + \
        (f" ({failures[0]})" if failures else "")


def criterion_4():
    checked, violations = 0, 0
    words = list(oracles._words_up_to(AB.letters, 4))
    for name in corpus.names():
        A = corpus.get(name)
        h = rc.build_pure_profile_hom(A)
        letters = A.alphabet.letters
        ws = list(oracles._words_up_to(letters, 4)) if letters != AB.letters else words
        img = {w: h.image(w) for w in ws}
        for (s, e) in linked_pairs(h.monoid):
            us = [u for u in ws if img[u] == s]
            if e == h.identity:
                members = us
            else:
                vs = [v for v in ws if v and img[v] == e]
                members = [UPWord(u, v) for u in us for v in vs]
            seen = {oracles.brute_member(A, w) for w in members}
            checked += len(members)
            if len(seen) > 1:
                violations += 1
            elif seen and seen != {h.Accept(s, e)}:
                violations += 1
    return violations == 0, f"{checked} block members checked, {violations} violations"


def criterion_5():
    words, ups = grid_words(), grid_ups()
    W = words + ups
    mono_dis = 0
    monos = canonical_monomials(AB, GRID.max_monomial_degree, set(Tail))
    for m in monos:
        for w in W:
            if member(m, w) != oracles.brute_member_monomial(m, w):
                mono_dis += 1
    sentences = oracles.random_sentences(AB, GRID.max_formula_depth, 400, seed=11)
    sentences = [s for s in sentences if s.kind != "Other"]
    logic_dis = 0
    for s in sentences:
        for w in ups:
            if lg.eval_up(s, w) != oracles.brute_eval_up(s, w):
                logic_dis += 1
    autos = [corpus.get(n) for n in corpus.names()] + fuzzed(modes=("infty", "star", "omega"), seed=5)
    rec_dis = 0
    for A in autos:
        h = synt(A)
        for w in (ups if A.alphabet == AB else list(oracles.enumerate_up(oracles.Grid(A.alphabet)))):
            if A.mode != "star" and rc.up_member(h, w) != A.accepts_up(w):
                rec_dis += 1
            if rc.up_member(h, w) != oracles.brute_member(A, w):
                rec_dis += 1
    ok = mono_dis == logic_dis == rec_dis == 0
    return ok, (f"monomials {len(monos)}x{len(W)} ({mono_dis} disagreements), "
                f"sentences {len(sentences)}x{len(ups)} ({logic_dis}), "
                f"automata {len(autos)}x{len(ups)} ({rec_dis})")


def criterion_6():
    W = grid_words() + grid_ups()
    monos = canonical_monomials(AB, 4, set(Tail))
    compiled = skipped = dis = bad_depth = 0
    for m in monos:
        if m.tail is Tail.FINITE and m.degree == 0:
            skipped += 1
            continue
        s = compile_to_sigma1(m)
        compiled += 1
        if s.depth != m.degree or lg.classify(s)[0] == "Other":
            bad_depth += 1
        for w in W:
            if m.tail is Tail.OMEGA and not isinstance(w, UPWord):
                truth = False  # the Ω tail restricts the model class to infinite words
            else:
                truth = lg.evaluate(s, w)
            if truth != member(m, w):
                dis += 1
    ok = dis == 0 and bad_depth == 0
    return ok, (f"{compiled} monomials x {len(W)} words, {dis} disagreements, "
                f"{bad_depth} depth mismatches, {skipped} degree-0 finite monomials excluded")


def _sandwich(S):
    M, G = S.parent, green(S)
    checked = bad = 0
    els = S.sorted
    for e, f in itertools.product(S.idempotents, repeat=2):
        for x, s in itertools.product(els, repeat=2):
            exf, esf = M.mul(e, x, f), M.mul(e, s, f)
            us = [u for u in els if G.R(u, M.mul(u, exf))]
            vs = [v for v in els if G.L(M.mul(esf, v), v)]
            for u in us:
                for v in vs:
                    checked += 1
                    bad += M.mul(u, exf, v) != M.mul(u, esf, v)
    return checked, bad


def _words(letters, n):
    return map("".join, itertools.product(letters, repeat=n))


def _drop_letters(h):
    M, G, k = h.monoid, green(h.monoid), h.monoid.size
    letters = h.alphabet.letters
    checked = bad = 0
    for ul in range(4):
        for u in _words(letters, ul):
            hu = h.image(u)
            for xl in range(k, k + 3):
                for x in _words(letters, xl):
                    hx = h.image(x)
                    if G.R(hu, M.mul(hu, hx)):
                        for a in letters:
                            if G.lt_r(M.mul(hu, hx, h.generators[a]), M.mul(hu, hx)):
                                checked += 1
                                bad += alph_k(x, k) == alph_k(x + a, k)
                    if G.L(hu, M.mul(hx, hu)):
                        for a in letters:
                            if G.lt_l(M.mul(h.generators[a], hx, hu), M.mul(hx, hu)):
                                checked += 1
                                bad += alph_k(x, k) == alph_k(a + x, k)
    return checked, bad


def criterion_7():
    homs = [(n, synt(corpus.get(n))) for n in corpus.names()]
    fuzz_homs = [(f"fuzz{i}", synt(A)) for i, A in enumerate(fuzzed(seed=99, count=60))]
    aperiodic_fail = sw_checked = sw_bad = st_checked = st_bad = dr_checked = dr_bad = 0
    b1_count = 0
    for name, h in homs + fuzz_homs:
        S = decide.synt_semigroup(h)
        b1 = decide.check_b1_condition(h)[0]
        if b1:
            b1_count += 1
            aperiodic_fail += not is_aperiodic(S)
            if len(S) <= 8:
                c, b = _sandwich(S)
                sw_checked += c
                sw_bad += b
        if name.startswith("fuzz"):
            continue
        M = h.monoid
        for u in _words(h.alphabet.letters, M.size - 1):
            st_checked += 1
            st = fz.stabilizer_prefix(h, u)
            if st is None or M.mul(h.image(st[0]), st[1]) != h.image(st[0]):
                st_bad += 1
        if b1:
            c, b = _drop_letters(h)
            dr_checked += c
            dr_bad += b
    ok = aperiodic_fail == sw_bad == st_bad == dr_bad == 0 and sw_checked and dr_checked
    return bool(ok), (f"{b1_count} B1 semigroups aperiodic ({aperiodic_fail} exceptions); "
                      f"sandwich identity {sw_checked} instances ({sw_bad} bad); "
                      f"stabilizer {st_checked} words ({st_bad} bad); "
                      f"alph_k drops {dr_checked} ({dr_bad} bad)")


def _gap_runs(n, cov):
    out, start = [], None
    for p in range(1, n + 2):
        free = p <= n and p not in cov
        if free and start is None:
            start = p
        elif not free and start is not None:
            out.append((start, p - 1))
            start = None
    return out


def _substitution_sample(h, k, rng):
    letters = h.alphabet.letters
    n = rng.randint(k + 2, 3 * k + 6)
    u = "".join(rng.choice(letters) for _ in range(n))
    cov = fz.rk_factorization(h, u, k).positions
    pieces = []
    for s, e in _gap_runs(n, cov):
        if rng.random() < 0.3:
            continue
        a = rng.randint(s, e + 1)
        pieces.append((a, rng.randint(a - 1, e)))
    if not pieces:
        return None
    ws, us, pos = [], [], 1
    for a, b in pieces:
        ws.append(u[pos - 1:a - 1])
        us.append(u[a - 1:b])
        pos = b + 1
    ws.append(u[pos - 1:])
    vs = ["".join(rng.choice(letters) for _ in range(rng.randint(0, 4))) for _ in us]
    if not fz.substitution_premise(h, ws, us, vs, k):
        return None
    return u, fz.interleave(ws, vs)[0]


def criterion_8():
    rng = random.Random(1234)
    homs = b1_homs()
    pairs = bad = 0
    per = 0
    for name, h in homs:
        for k in (h.monoid.size, h.monoid.size + 1):
            got = tries = 0
            while got < 150 and tries < 20000:
                tries += 1
                r = _substitution_sample(h, k, rng)
                if r is None:
                    continue
                got += 1
                u, v = r
                bad += h.image(u) != h.image(v)
            pairs += got
            per = min(per, got) if per else got
    ok = pairs >= 1000 and bad == 0
    return ok, f"{pairs} premise-satisfying pairs over {len(homs)} B1 homomorphisms, {bad} violations"


def criterion_9():
    autos = fuzzed(count=FUZZ_COUNT, seed=31)
    problems = []
    for A in autos:
        h = synt(A)
        rc_ok = decide.check_r_closed(h)[0]
        rp_ok = decide.check_r_plus_closed(h)[0]
        v = decide.decide_hom(h, "infty")
        if rc_ok and not rp_ok:
            problems.append("R-closed but not R+-closed")
        if v.verdicts["thm5"] == "yes" and v.verdicts["thm15"] != "yes":
            problems.append("thm5 yes but thm15 no")
        if v.verdicts["thm5"] == "yes" and not v.diagnostics["lemma10"]:
            problems.append("thm5 yes but lemma10 diagnostic false")
    variant_bad = []
    for name in corpus.names():
        A = corpus.get(name)
        base = decide.decide_all(A).verdicts
        for B in (corpus.duplicate(A), corpus.parity_product(A)):
            if decide.decide_all(B).verdicts != base:
                variant_bad.append(name)
    ok = not problems and not variant_bad and len(autos) >= 200
    return ok, (f"{len(autos)} fuzzed automata, {len(problems)} invariant violations; "
                f"{2 * len(corpus.names())} equivalent variants, {len(variant_bad)} verdict changes")


def criterion_10():
    W = grid_words() + grid_ups()
    cands = [(n, corpus.get(n)) for n in corpus.names()]
    cands += [(f"fuzz{i}", A) for i, A in enumerate(fuzzed(count=80, seed=77))]
    chosen = []
    for name, A in cands:
        h = synt(A)
        if A.mode == "infty" and h.monoid.size <= 3 and \
                decide.decide_hom(h, "infty").verdicts["thm5"] == "yes":
            chosen.append((name, A, h.monoid.size))
    fps = {}
    bad = []
    report = []
    for name, A, size in chosen:
        d = min(4 * size * size, 6)
        if d not in fps:
            fps[d] = {w: fingerprint(w, d, {Tail.INFTY}, AB) for w in W}
        groups = {}
        for w in W:
            groups.setdefault(fps[d][w], set()).add(oracles.brute_member(A, w))
        if any(len(g) > 1 for g in groups.values()):
            bad.append(name)
        if not name.startswith("fuzz"):
            report.append(f"{name}: d={d} (bound {4 * size * size})")
    cap = universe_size(2, 6, {Tail.INFTY})
    ok = not bad and chosen
    return bool(ok), (f"{len(chosen)} languages ({'; '.join(report)}; plus "
                      f"{len(chosen) - len(report)} fuzzed), degree capped at 6 "
                      f"({cap} monomials), {len(bad)} separations missed")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("n", range(1, 11))
def test_criterion(n, report):
    ok, detail = CRITERIA[n - 1]()
    report(n, ok, detail)


if __name__ == "__main__":
    for i, c in enumerate(CRITERIA, 1):
        t = time.time()
        ok, detail = c()
        _report(i, ok, f"{detail} [{time.time() - t:.1f}s]")
