import functools
from pathlib import Path

import pytest

from dotdepth import corpus, recognition
from dotdepth.words import Alphabet

FIXTURES = Path(__file__).parent / "fixtures"


@functools.lru_cache(maxsize=None)
def pure_hom(name):
    return recognition.build_pure_profile_hom(corpus.get(name))


@functools.lru_cache(maxsize=None)
def synt_hom(name):
    return recognition.syntactic_quotient(pure_hom(name))


@pytest.fixture
def ab():
    return Alphabet.of("ab")


@pytest.fixture
def fixtures():
    return FIXTURES
