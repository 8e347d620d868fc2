"""Data-directory layout and the engine object shared by CLI and service.

Layout under the data directory:
    lexicon/lexicon.txt, lexicon/hierarchy.txt, lexicon/formats.txt
    grammar.txt  counts.txt  corpus.txt  gold.txt
    index/records.jsonl  journal.txt  config.txt
"""
from __future__ import annotations

import os
from dataclasses import dataclass

from .config import Config, load_config
from .counts import CountStore
from .grammar import Grammar, load_grammar
from .lexicon import Lexicon, load_lexicon
from .retrieval import CaptionIndex, load_corpus
from .trainer import ReviewSession


class WorkspaceError(ValueError):
    pass


@dataclass
class Paths:
    root: str

    @property
    def lexicon(self): return os.path.join(self.root, "lexicon", "lexicon.txt")
    @property
    def hierarchy(self): return os.path.join(self.root, "lexicon", "hierarchy.txt")
    @property
    def formats(self): return os.path.join(self.root, "lexicon", "formats.txt")
    @property
    def grammar(self): return os.path.join(self.root, "grammar.txt")
    @property
    def counts(self): return os.path.join(self.root, "counts.txt")
    @property
    def corpus(self): return os.path.join(self.root, "corpus.txt")
    @property
    def gold(self): return os.path.join(self.root, "gold.txt")
    @property
    def journal(self): return os.path.join(self.root, "journal.txt")
    @property
    def config(self): return os.path.join(self.root, "config.txt")
    @property
    def index(self): return os.path.join(self.root, "index", "records.jsonl")


def _read(path: str, default: str | None = None) -> str:
    if not os.path.exists(path):
        if default is not None:
            return default
        raise WorkspaceError(f"missing file {path}")
    with open(path, encoding="utf-8") as f:
        return f.read()


class Engine:
    """Loaded lexicon, grammar, counts, index and session over one
    data directory."""

    def __init__(self, data_dir: str, config_path: str | None = None):
        self.paths = Paths(data_dir)
        self.config = load_config(
            _read(config_path) if config_path
            else _read(self.paths.config, ""),
            Config(data_dir=data_dir))
        self.lexicon: Lexicon = load_lexicon(
            _read(self.paths.lexicon),
            _read(self.paths.hierarchy),
            _read(self.paths.formats, ""))
        self.grammar: Grammar = load_grammar(_read(self.paths.grammar))
        self.store: CountStore = CountStore.load(
            _read(self.paths.counts, "total 0\n"), pos_of=self.lexicon.pos_of)
        self.index: CaptionIndex | None = None
        self.session: ReviewSession | None = None
        self._journal_file = None

    # -- persistence ------------------------------------------------------

    def save_counts(self):
        with open(self.paths.counts, "w", encoding="utf-8") as f:
            f.write(self.store.save())

    def save_grammar(self):
        with open(self.paths.grammar, "w", encoding="utf-8") as f:
            f.write(self.grammar.save())

    def load_index(self) -> CaptionIndex:
        if self.index is None:
            self.index = CaptionIndex.load(_read(self.paths.index, ""),
                                           self.lexicon)
        return self.index

    def save_index(self):
        if self.index is None:
            return
        os.makedirs(os.path.dirname(self.paths.index), exist_ok=True)
        with open(self.paths.index, "w", encoding="utf-8") as f:
            f.write(self.index.save())

    def corpus(self) -> list[tuple[str, str]]:
        return load_corpus(_read(self.paths.corpus))

    # -- review session -----------------------------------------------------

    def open_session(self, resume: bool = True) -> ReviewSession:
        """Open (or resume) the single review session for this directory."""
        if self.session is not None:
            return self.session
        corpus = self.corpus()
        journal_text = _read(self.paths.journal, "") if resume else ""
        if journal_text.strip():
            from .trainer import replay_journal
            session = replay_journal(journal_text, corpus, self.grammar,
                                     self.lexicon, self.store, self.config)
        else:
            session = ReviewSession(corpus, self.grammar, self.lexicon,
                                    self.store, self.config)
        self._journal_file = open(self.paths.journal, "a", encoding="utf-8")

        def sink(line: str):
            self._journal_file.write(line)
            self._journal_file.flush()

        session._journal_sink = sink
        self.session = session
        return session

    def close(self):
        if self._journal_file is not None:
            self._journal_file.close()
            self._journal_file = None
