"""Command-line front end: ``dotdepth <subcommand> ...``.

Exit codes: 0 analysis completed (whatever the verdicts), 2 input error,
3 a certificate failed re-verification.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import automata, corpus, decide, factorize, langexpr, logic, oracles, recognition
from .words import Alphabet, UPWord, parse_upword

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 2, 3


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _load_automaton(path: str) -> automata.ExtendedBuchiAutomaton:
    if path.startswith("corpus:"):
        try:
            return corpus.get(path[len("corpus:"):])
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
    try:
        return automata.parse(_read(path))
    except automata.ParseError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_hom(path: str) -> recognition.RecognizingHom:
    try:
        return recognition.hom_from_json(_read(path))
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{path}: invalid homomorphism: {exc}") from None


def _word_arg(args):
    if args.word is not None and args.upword is not None:
        raise InputError("give either --word or --upword, not both")
    if args.upword is not None:
        try:
            return parse_upword(args.upword)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    if args.word is None:
        raise InputError("a word is required (--word or --upword)")
    return args.word


def _oracle_check(verdict: decide.Verdict, member, mode: str) -> None:
    """Re-check every certificate against an independent membership test."""
    for thm, cert in verdict.certificates.items():
        part = None
        if mode == "infty" and thm == "thm14":
            part = "finite"
        elif mode == "infty" and thm == "thm17":
            part = "infinite"

        def in_l(w):
            if part == "finite" and isinstance(w, UPWord):
                return False
            if part == "infinite" and not isinstance(w, UPWord):
                return False
            return member(w)

        if isinstance(cert, decide.B1Violation):
            wp, wq = decide.context_words(cert.context, cert.p, cert.q)
            ok = in_l(wp) != in_l(wq)
        else:
            ok = in_l(cert.member) and not in_l(cert.non_member)
        if not ok:
            raise decide.VerificationError(f"oracle rejects the certificate for {thm}")


def cmd_decide(args) -> int:
    if args.hom:
        h = _load_hom(args.input)
        v = decide.decide_hom(h, h.mode)
        member = lambda w: recognition.up_member(h, w)
    else:
        A = _load_automaton(args.input)
        v = decide.decide_all(A)
        member = lambda w: oracles.brute_member(A, w)
    if args.oracle_check:
        _oracle_check(v, member, v.mode)
        v.diagnostics["oracle_check"] = "passed"
    if args.report == "json":
        print(json.dumps(v.to_json(), indent=2, sort_keys=True))
    else:
        print(v.to_text())
    return EXIT_OK


def _load_expression(args):
    sources = [x for x in (args.formula, args.sexp, args.monomial, args.boolcomb) if x is not None]
    if len(sources) != 1:
        raise InputError("give exactly one of --formula, --sexp, --monomial, --boolcomb")
    try:
        if args.formula is not None:
            return "formula", logic.parse_sexp(_read(args.formula))
        if args.sexp is not None:
            return "formula", logic.parse_sexp(args.sexp)
        if args.monomial is not None:
            return "monomial", langexpr.parse_monomial(args.monomial)
        return "boolcomb", langexpr.parse_boolcomb(args.boolcomb)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_eval(args) -> int:
    kind, expr = _load_expression(args)
    w = _word_arg(args)
    if kind == "formula":
        cls, sig = logic.classify(expr)
        if args.upword is not None and cls == "Other":
            raise InputError(f"formula is not in BΣ₁ (class {cls}); cannot evaluate on an infinite word")
        result = logic.evaluate(expr, w)
        extra = {"class": cls, "signature": sorted(sig), "depth": expr.depth}
    elif kind == "monomial":
        result = langexpr.member(expr, w)
        extra = {"degree": expr.degree}
    else:
        result = langexpr.boolcomb_member(expr, w)
        extra = {}
    if args.json:
        print(json.dumps({"result": result, "word": str(w), **extra}, sort_keys=True))
    else:
        print("true" if result else "false")
    return EXIT_OK


def cmd_syntactic(args) -> int:
    A = _load_automaton(args.input)
    h = recognition.syntactic_quotient(recognition.build_pure_profile_hom(A))
    print(json.dumps(recognition.hom_to_json(h), indent=2, sort_keys=True))
    return EXIT_OK


def cmd_factorize(args) -> int:
    h = _load_hom(args.input) if args.hom else \
        recognition.syntactic_quotient(recognition.build_pure_profile_hom(_load_automaton(args.input)))
    w = _word_arg(args)
    try:
        h.alphabet.check_word(w if isinstance(w, str) else w.stem + w.loop)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    infinite = not isinstance(w, str)
    if args.left and infinite:
        raise InputError("L-factorizations are defined for finite words only")
    k = args.k if args.k is not None else h.monoid.size
    if k < 1:
        raise InputError("--k must be positive")
    out = {"R": factorize.r_factorization(h, w), f"R({k})": factorize.rk_factorization(h, w, k)}
    if not infinite:
        out["L"] = factorize.l_factorization(h, w)
        out[f"L({k})"] = factorize.lk_factorization(h, w, k)
        if args.join:
            out["join"] = factorize.join(out[f"R({k})"], out[f"L({k})"], w)
    for name, F in out.items():
        print(f"{name}: {F}")
    return EXIT_OK


def cmd_fingerprint(args) -> int:
    try:
        alphabet = Alphabet.of(args.alphabet)
        tails = {langexpr.Tail.parse(t) for t in args.tails.split(",")}
    except ValueError as exc:
        raise InputError(str(exc)) from None
    w = _word_arg(args)
    try:
        fp = langexpr.fingerprint(w, args.degree, tails, alphabet)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    except langexpr.ResourceError as exc:
        raise InputError(str(exc)) from None
    for m in sorted(fp, key=langexpr._mono_key):
        print(str(m))
    return EXIT_OK


def cmd_fuzz(args) -> int:
    g = oracles.Grid(Alphabet.of(args.alphabet), max_states=args.states)
    checked, problems = 0, []
    for A in oracles.enumerate_automata(g, modes=("infty",), sample=args.count, seed=args.seed):
        h = recognition.syntactic_quotient(recognition.build_pure_profile_hom(A))
        rc, _ = decide.check_r_closed(h)
        rpc, _ = decide.check_r_plus_closed(h)
        v = decide.decide_hom(h, "infty")
        if rc and not rpc:
            problems.append(("R-closed without R+-closed", A))
        if v.verdicts["thm5"] == "yes" and v.verdicts["thm15"] != "yes":
            problems.append(("thm5 yes but thm15 no", A))
        if v.verdicts["thm5"] == "yes" and not v.diagnostics["lemma10"]:
            problems.append(("thm5 yes but lemma10 fails", A))
        checked += 1
    report = {"checked": checked, "violations": [
        {"what": what, "automaton": json.loads(automata.serialize(A))} for what, A in problems]}
    print(json.dumps(report, indent=2, sort_keys=True))
    return EXIT_VERIFY if problems else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dotdepth", description="Dot-depth one / BΣ₁ decision tool.")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decide", help="decide the fragments for an automaton (or homomorphism)")
    d.add_argument("input", help="automaton JSON file, 'corpus:NAME', or homomorphism JSON with --hom")
    d.add_argument("--hom", action="store_true", help="input is a homomorphism export")
    d.add_argument("--report", choices=("text", "json"), default="text")
    d.add_argument("--oracle-check", action="store_true", help="re-verify certificates with the oracles")
    d.set_defaults(func=cmd_decide)

    e = sub.add_parser("eval", help="evaluate a formula or monomial on a word")
    e.add_argument("--formula", help="file with an s-expression sentence")
    e.add_argument("--sexp", help="s-expression sentence given inline")
    e.add_argument("--monomial", help='monomial text, e.g. "ab *ba $"')
    e.add_argument("--boolcomb", help='Boolean combination, e.g. (not (mono "a ..."))')
    e.add_argument("--word")
    e.add_argument("--upword", help="ultimately periodic word stem:loop")
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_eval)

    s = sub.add_parser("syntactic", help="export the pure syntactic homomorphism")
    s.add_argument("input")
    s.set_defaults(func=cmd_syntactic)

    f = sub.add_parser("factorize", help="print R-, L-, R(k)- and L(k)-factorizations")
    f.add_argument("input")
    f.add_argument("--hom", action="store_true")
    f.add_argument("--word")
    f.add_argument("--upword")
    f.add_argument("--k", type=int)
    f.add_argument("--left", action="store_true", help="require L-factorizations (finite words only)")
    f.add_argument("--join", action="store_true", help="also print the join of R(k) and L(k)")
    f.set_defaults(func=cmd_factorize)

    fp = sub.add_parser("fingerprint", help="monomials of bounded degree containing a word")
    fp.add_argument("--alphabet", required=True, help="letters, e.g. ab")
    fp.add_argument("--degree", type=int, required=True)
    fp.add_argument("--tails", default="$,...", help="comma-separated tails among $ ... ^w")
    fp.add_argument("--word")
    fp.add_argument("--upword")
    fp.set_defaults(func=cmd_fingerprint)

    z = sub.add_parser("fuzz", help="check verdict invariants on sampled automata")
    z.add_argument("--count", type=int, default=200)
    z.add_argument("--seed", type=int, default=0)
    z.add_argument("--states", type=int, default=3)
    z.add_argument("--alphabet", default="ab")
    z.set_defaults(func=cmd_fuzz)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except decide.VerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
