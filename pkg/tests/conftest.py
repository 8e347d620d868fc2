import os

import pytest


def pytest_terminal_summary(terminalreporter):
    """One pass/fail line per acceptance criterion, printed after the run."""
    try:
        from tests.test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, elapsed in RESULTS:
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"{status}  {name}  ({elapsed:.2f}s)")

from caption_ir.config import Config
from caption_ir.counts import CountStore
from caption_ir.grammar import load_grammar
from caption_ir.lexicon import load_lexicon_files
from caption_ir.retrieval import load_corpus
from caption_ir.trainer import batch_train, load_gold

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def fixture_path(*parts) -> str:
    return os.path.join(FIXTURES, *parts)


def read_fixture(*parts) -> str:
    with open(fixture_path(*parts), encoding="utf-8") as f:
        return f.read()


@pytest.fixture(scope="session")
def config():
    return Config()


@pytest.fixture(scope="session")
def lexicon():
    return load_lexicon_files(
        fixture_path("lexicon", "lexicon.txt"),
        fixture_path("lexicon", "hierarchy.txt"),
        fixture_path("lexicon", "formats.txt"))


@pytest.fixture(scope="session")
def grammar_text():
    return read_fixture("grammar.txt")


@pytest.fixture()
def grammar(grammar_text):
    # fresh per test: rule counts are mutable training state
    return load_grammar(grammar_text)


@pytest.fixture(scope="session")
def corpus():
    return load_corpus(read_fixture("corpus.txt"))


@pytest.fixture(scope="session")
def gold_text():
    return read_fixture("gold.txt")


@pytest.fixture()
def empty_store(lexicon):
    return CountStore(pos_of=lexicon.pos_of)


@pytest.fixture(scope="session")
def trained():
    """(grammar, store, session) after batch training on the gold set.

    Session-scoped for speed; tests must not mutate it (use `empty_store`
    or retrain locally when they do).
    """
    lexicon = load_lexicon_files(
        fixture_path("lexicon", "lexicon.txt"),
        fixture_path("lexicon", "hierarchy.txt"),
        fixture_path("lexicon", "formats.txt"))
    grammar = load_grammar(read_fixture("grammar.txt"))
    corpus = load_corpus(read_fixture("corpus.txt"))
    store = CountStore(pos_of=lexicon.pos_of)
    gold = load_gold(read_fixture("gold.txt"), grammar, lexicon)
    session = batch_train(gold, corpus, grammar, lexicon, store, Config())
    return grammar, store, session


@pytest.fixture(scope="session")
def trained_grammar(trained):
    return trained[0]


@pytest.fixture(scope="session")
def trained_store(trained):
    return trained[1]
