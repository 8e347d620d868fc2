"""Count training: propose parses, walk the N-best list on rejection,
and harvest pair / unary / rule counts from accepted trees.

Every decision is appended to a journal, so an interrupted session resumes
exactly and the whole store can be rebuilt by replaying the journal.
"""
from __future__ import annotations

from dataclasses import dataclass

from .config import Config
from .counts import CodePolicy, CountStore
from .grammar import Grammar
from .lexicon import Lexicon
from .parser import (ParseError, ParseNode, from_bracket, nbest_parse,
                     stat_rule_key)
from .semantics import MeaningList, meaning_list


class TrainerError(ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass
class Proposal:
    caption_id: str
    caption_text: str
    rank: int
    tree: ParseNode
    meaning: MeaningList
    score: float
    total_candidates: int


def apply_accepted_tree(tree: ParseNode, grammar: Grammar, lexicon: Lexicon,
                        store: CountStore, config: Config | None = None):
    """Count updates for one accepted parse: every rule instance, every
    binary node's (rule, head, dependent) pair with its superconcept
    cross-product, and every leaf sense."""
    config = config or Config()
    policy = CodePolicy(frozenset(config.code_categories))
    for node in tree.walk():
        if node.rule is not None:
            grammar.rule(node.rule.id).count += 1
        if node.rule is not None and node.rule.is_binary:
            head_child = node.children[node.rule.head_pos - 1]
            dep_child = node.children[2 - node.rule.head_pos]
            key = stat_rule_key(node.rule, dep_child, lexicon)
            store.increment_pair(lexicon, key, head_child.head.synset,
                                 dep_child.head.synset, 1, policy=policy,
                                 depth_cap=config.ancestor_depth_cap)
    for leaf in tree.leaves():
        if lexicon.has_synset(leaf.head.synset):
            store.increment_unary(lexicon, leaf.head.synset, 1)


class ReviewSession:
    """One reviewer walking the corpus; exclusive writer of the store."""

    def __init__(self, corpus: list[tuple[str, str]], grammar: Grammar,
                 lexicon: Lexicon, store: CountStore,
                 config: Config | None = None, journal_sink=None):
        self.corpus = list(corpus)
        self.grammar = grammar
        self.lexicon = lexicon
        self.store = store
        self.config = config or Config()
        self.cursor = 0
        self.rank = 1
        self.decisions: list[tuple[str, str]] = []
        self.first_try_accepted = 0
        self.total_reviewed = 0
        self._cache_id = None
        self._cache_trees = None
        self._journal_sink = journal_sink

    # -- helpers -----------------------------------------------------------

    @property
    def exhausted(self) -> bool:
        return self.cursor >= len(self.corpus)

    def _log(self, caption_id: str, outcome: str):
        self.decisions.append((caption_id, outcome))
        if self._journal_sink is not None:
            self._journal_sink(f"{caption_id} {outcome}\n")

    def _advance(self):
        self.cursor += 1
        self.rank = 1
        self._cache_id = None
        self._cache_trees = None

    def _nbest(self) -> list[ParseNode]:
        caption_id, text = self.corpus[self.cursor]
        if self._cache_id != caption_id:
            tokens = self.lexicon.tokenize(text)
            result = nbest_parse(self.grammar, self.lexicon, self.store,
                                 tokens, self.config.review_depth,
                                 self.config)
            self._cache_id = caption_id
            self._cache_trees = result.trees
        return self._cache_trees

    # -- session operations ---------------------------------------------------

    def propose(self) -> Proposal | None:
        """Current proposal, auto-skipping unparsable or exhausted captions.
        None when the corpus is finished."""
        while not self.exhausted:
            caption_id, text = self.corpus[self.cursor]
            try:
                trees = self._nbest()
            except ParseError:
                self._log(caption_id, "skip")
                self._advance()
                continue
            if self.rank > len(trees):
                self._log(caption_id, "skip")
                self._advance()
                continue
            tree = trees[self.rank - 1]
            return Proposal(caption_id, text, self.rank, tree,
                            meaning_list(tree, self.grammar, self.lexicon),
                            tree.log_score, len(trees))
        return None

    def accept(self) -> Proposal:
        proposal = self.propose()
        if proposal is None:
            raise TrainerError("no outstanding proposal: corpus exhausted")
        apply_accepted_tree(proposal.tree, self.grammar, self.lexicon,
                            self.store, self.config)
        self.total_reviewed += 1
        if proposal.rank == 1:
            self.first_try_accepted += 1
        self._log(proposal.caption_id, str(proposal.rank))
        self._advance()
        return proposal

    def reject(self) -> int:
        """Move to the next-best parse of the same caption."""
        if self.propose() is None:
            raise TrainerError("no outstanding proposal: corpus exhausted")
        self.rank += 1
        return self.rank

    def skip(self):
        if self.exhausted:
            raise TrainerError("no outstanding proposal: corpus exhausted")
        caption_id, _text = self.corpus[self.cursor]
        self._log(caption_id, "skip")
        self._advance()

    @property
    def first_try_accuracy(self) -> float:
        if not self.total_reviewed:
            return 0.0
        return self.first_try_accepted / self.total_reviewed


# -- gold files and batch training ---------------------------------------------

def load_gold(text: str, grammar: Grammar,
              lexicon: Lexicon) -> list[tuple[str, ParseNode]]:
    """Gold file rows: `<caption-id>\\t<bracketed tree>`."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "\t" not in line:
            raise TrainerError("expected <caption-id>\\t<tree>", lineno)
        caption_id, bracket = line.split("\t", 1)
        try:
            tree = from_bracket(bracket, grammar, lexicon)
        except (ParseError, KeyError) as exc:
            raise TrainerError(f"bad gold tree for {caption_id}: {exc}",
                               lineno)
        for node in tree.walk():
            if node.children and len(node.children) > 2:
                raise TrainerError(
                    f"gold tree for {caption_id} has a ternary node", lineno)
        rows.append((caption_id, tree))
    return rows


def batch_train(gold_rows: list[tuple[str, ParseNode]],
                corpus: list[tuple[str, str]], grammar: Grammar,
                lexicon: Lexicon, store: CountStore,
                config: Config | None = None,
                journal_sink=None) -> ReviewSession:
    """Replay the gold trees as pre-recorded accepts.

    Each gold tree must appear in the current N-best list of its caption,
    exactly as an interactive monitor would have had to reach it; the
    resulting store state is identical to that interactive session's.
    """
    config = config or Config()
    by_id = dict(corpus)
    session = ReviewSession(corpus, grammar, lexicon, store, config,
                            journal_sink=journal_sink)
    gold_by_id = dict(gold_rows)
    while not session.exhausted:
        caption_id, _text = session.corpus[session.cursor]
        gold = gold_by_id.get(caption_id)
        if gold is None:
            session.skip()
            continue
        if caption_id not in by_id:
            raise TrainerError(f"gold caption {caption_id!r} not in corpus")
        trees = session._nbest()
        gold_key = gold.order_key()
        rank = next((i + 1 for i, t in enumerate(trees)
                     if t.order_key() == gold_key), None)
        if rank is None:
            raise TrainerError(
                f"gold tree for {caption_id} is not among the top "
                f"{config.review_depth} parses")
        session.rank = rank
        session.accept()
    return session


def replay_journal(journal_text: str, corpus: list[tuple[str, str]],
                   grammar: Grammar, lexicon: Lexicon, store: CountStore,
                   config: Config | None = None) -> ReviewSession:
    """Rebuild session state from a decision log; deterministic parsing
    makes the result byte-identical to the original run."""
    config = config or Config()
    session = ReviewSession(corpus, grammar, lexicon, store, config)
    for lineno, raw in enumerate(journal_text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise TrainerError(f"bad journal line {raw!r}", lineno)
        caption_id, outcome = parts
        if session.exhausted:
            raise TrainerError(
                f"journal entry {caption_id} beyond corpus end", lineno)
        current_id, _text = session.corpus[session.cursor]
        if caption_id != current_id:
            raise TrainerError(
                f"journal entry {caption_id} does not match corpus "
                f"position {current_id}", lineno)
        if outcome == "skip":
            session.skip()
        else:
            try:
                rank = int(outcome)
            except ValueError:
                raise TrainerError(f"bad journal outcome {outcome!r}", lineno)
            session.rank = rank
            session.accept()
    return session
