import numpy as np
import pytest

from dotdepth import corpus, oracles, recognition as rc
from dotdepth.algebra import from_rows
from dotdepth.words import Alphabet, UPWord

from conftest import pure_hom, synt_hom


def _table(h):
    return h.monoid.table.tolist()


def _accepted(h):
    return {tuple(p) for p, v in h.accept.items() if v}


def test_quotient_a_all():
    h = synt_hom("a_all")
    assert _table(h) == [[0, 1, 2], [1, 1, 1], [2, 2, 2]]
    assert h.preimage == {0: "", 1: "a", 2: "b"}
    assert _accepted(h) == {(1, 0), (1, 1), (1, 2)}


def test_quotient_ends_a():
    h = synt_hom("ends_a")
    assert _table(h) == [[0, 1, 2], [1, 1, 2], [2, 1, 2]]
    assert _accepted(h) == {(1, 0)}


def test_quotient_omega():
    h = synt_hom("omega")
    assert _table(h) == [[0, 1], [1, 1]]
    assert h.Accept(1, 1) and not h.Accept(0, 0) and not h.Accept(1, 0)


def test_trivial_languages():
    assert synt_hom("all").monoid.size == 2
    assert all(synt_hom("all").accept.values())
    assert not any(synt_hom("empty").accept.values())


def test_quotient_even_a():
    h = synt_hom("even_a")
    assert _table(h) == [[0, 1, 2], [1, 2, 1], [2, 1, 2]]
    assert h.preimage[1] == "a" and h.preimage[2] == "aa"
    assert _accepted(h) == {(0, 0), (2, 0)}


@pytest.mark.parametrize("name, size", [
    ("ab_star", 6), ("contains_ab", 5), ("inf_a", 3), ("last_a_then_b", 3), ("dyck2", 15)])
def test_quotient_sizes(name, size):
    assert synt_hom(name).monoid.size == size


@pytest.mark.parametrize("name", corpus.names())
def test_pure_hom_is_epsilon_strict(name):
    h = pure_hom(name)
    assert h.epsilon_strict
    assert h.preimage[h.identity] == ""
    for x, w in h.preimage.items():
        assert h.image(w) == x
    for a, g in h.generators.items():
        assert g != h.identity


@pytest.mark.parametrize("name", corpus.names())
def test_up_member_matches_automaton(name):
    A = corpus.get(name)
    g = oracles.Grid(A.alphabet, max_word_len=5)
    for h in (pure_hom(name), synt_hom(name)):
        for w in list(oracles.enumerate_words(g)) + list(oracles.enumerate_up(g)):
            assert rc.up_member(h, w) == oracles.brute_member(A, w), (name, w)


@pytest.mark.parametrize("name", corpus.names())
def test_syntactic_partition_matches_context_search(name):
    A = corpus.get(name)
    h = pure_hom(name)
    g = oracles.Grid(A.alphabet, max_word_len=3)
    xs = [x for x in range(h.monoid.size) if x != h.identity]
    brute = oracles.brute_syntactic_partition(A, [h.preimage[x] for x in xs], g)
    labels = rc.syntactic_partition(h)
    for i in range(len(xs)):
        for j in range(len(xs)):
            assert (brute[i] == brute[j]) == (labels[xs[i]] == labels[xs[j]])
    assert sum(labels == labels[h.identity]) == 1


@pytest.mark.parametrize("name", corpus.names())
def test_quotient_is_idempotent(name):
    h = synt_hom(name)
    q = rc.syntactic_quotient(h)
    assert np.array_equal(q.monoid.table, h.monoid.table)
    assert q.accept == h.accept


def test_restrict():
    h = synt_hom("a_all")
    fin = rc.restrict(h, "finite")
    inf = rc.restrict(h, "infinite")
    assert _accepted(fin) == {(1, 0)}
    assert _accepted(inf) == {(1, 1), (1, 2)}
    assert fin.language_member("ab") and not fin.language_member(UPWord("a", "b"))
    assert inf.language_member(UPWord("a", "b")) and not inf.language_member("ab")
    assert rc.restrict(fin, "infinite").part == "none"
    with pytest.raises(ValueError):
        rc.restrict(h, "both")


def test_non_strict_hom_rejected():
    M = from_rows([[0, 1], [1, 1]])
    h = rc.RecognizingHom(M, Alphabet.of("ab"), {"a": 0, "b": 1}, False,
                          {0: "", 1: "b"}, {(0, 0): True, (1, 0): False, (1, 1): False})
    with pytest.raises(ValueError):
        rc.syntactic_quotient(h)
    with pytest.raises(ValueError):
        rc.restrict(h, "finite")


@pytest.mark.parametrize("name", corpus.names())
def test_json_round_trip(name):
    h = synt_hom(name)
    back = rc.hom_from_json(rc.hom_to_json(h))
    assert np.array_equal(back.monoid.table, h.monoid.table)
    assert back.generators == h.generators
    assert back.accept == h.accept
    assert back.mode == h.mode
    assert back.preimage == h.preimage


def test_json_rejects_garbage():
    doc = rc.hom_to_json(synt_hom("a_all"))
    with pytest.raises(ValueError):
        rc.hom_from_json({**doc, "extra": 1})
    with pytest.raises(ValueError):
        rc.hom_from_json({**doc, "generators": {"a": 1, "b": 9}})
