import json

import pytest
from hypothesis import given, settings, strategies as st

from dotdepth import corpus, oracles
from dotdepth.automata import ExtendedBuchiAutomaton, ParseError, load, parse, serialize
from dotdepth.words import Alphabet, UPWord


def test_accepts_finite_examples():
    A = corpus.get("a_all")
    assert A.accepts_finite("ab")
    assert not A.accepts_finite("")
    E = corpus.get("ends_a")
    assert E.accepts_finite("ba")
    assert not E.accepts_finite("ab")
    with pytest.raises(ValueError):
        A.accepts_finite("abc")


def test_accepts_up_examples():
    A = corpus.get("a_all")
    assert A.accepts_up(UPWord("a", "b"))
    assert not A.accepts_up(UPWord("", "b"))
    E = corpus.get("ends_a")
    assert not any(E.accepts_up(w) for w in (UPWord("", "a"), UPWord("b", "ab")))
    assert corpus.get("inf_a").accepts_up(UPWord("bbb", "ba"))
    assert not corpus.get("inf_a").accepts_up(UPWord("aaa", "b"))


def test_mode_restrictions():
    with pytest.raises(ValueError):
        corpus.get("contains_ab").accepts_finite("a")
    with pytest.raises(ValueError):
        corpus.get("even_a").accepts_up(UPWord("", "a"))
    assert not corpus.get("contains_ab").member("ab")
    assert not corpus.get("even_a").member(UPWord("", "a"))


def test_minimal_document():
    A = parse(b'{"alphabet": ["a"], "states": 1, "initial": [0], "transitions": []}')
    assert A.states == 1
    assert A.mode == "infty"


@pytest.mark.parametrize("doc, where", [
    ({"alphabet": ["a"], "states": 1, "initial": [0], "transitions": [[0, "a", 3]]}, "transitions[0][2]"),
    ({"alphabet": [], "states": 1, "initial": [0], "transitions": []}, "alphabet"),
    ({"alphabet": ["a"], "states": 1, "initial": [], "transitions": []}, "initial"),
    ({"alphabet": ["a"], "states": 1, "initial": [0], "transitions": [], "colour": 1}, "colour"),
    ({"alphabet": ["a"], "states": 1, "initial": [0], "transitions": [], "mode": "both"}, "mode"),
    ({"alphabet": ["a"], "states": 1, "initial": [0], "transitions": [[0, "b", 0]]}, "transitions[0][1]"),
    ({"alphabet": ["a"], "states": 2, "initial": [0], "transitions": [], "buechi_final": [2]}, "buechi_final[0]"),
])
def test_parse_errors_carry_locations(doc, where):
    with pytest.raises(ParseError) as info:
        parse(json.dumps(doc))
    assert info.value.location == where


def test_fixture_with_undeclared_state(fixtures):
    with pytest.raises(ParseError, match="undeclared state 5"):
        load(fixtures / "bad_state.json")
    with pytest.raises(ParseError):
        parse(b"{not json")


def test_round_trip_is_canonical(fixtures):
    for name in corpus.names():
        A = corpus.get(name)
        data = serialize(A)
        assert parse(data) == A
        assert serialize(parse(data)) == data
        assert (fixtures / f"{name}.json").read_bytes() == data


def test_constructor_validation():
    with pytest.raises(ValueError):
        ExtendedBuchiAutomaton.build("a", 1, [0], [(0, "a", 1)])
    with pytest.raises(ValueError):
        ExtendedBuchiAutomaton.build("a", 1, [], [])
    with pytest.raises(ValueError):
        ExtendedBuchiAutomaton.build("a", 1, [0], [], mode="finite")


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_accepts_up_matches_product_oracle(seed):
    g = oracles.Grid(Alphabet.of("ab"), max_stem=2, max_loop=2, max_states=3)
    ups = list(oracles.enumerate_up(g))
    for A in oracles.enumerate_automata(g, sample=3, seed=seed):
        for w in ups:
            assert A.accepts_up(w) == oracles.brute_accepts_up(A, w)
