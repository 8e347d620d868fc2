"""Binary context-free grammar with head positions and case-relation labels.

Rules carry usage counts updated by the trainer; rule probabilities are
conditioned on the left-hand category with additive smoothing so unseen
rules never score log(0).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

LEX_CLASSES = (
    "noun", "verb", "adjective", "adverb", "preposition", "determiner",
    "conjunction", "comma", "period", "code", "prespart", "pastpart", "other",
)

RULE_SMOOTHING = 0.5


class GrammarError(ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass
class GrammarRule:
    lhs: str
    rhs: tuple[str, ...]
    head_pos: int  # 1-based index into rhs
    relation: str | None
    count: int = 0

    @property
    def id(self) -> str:
        return f"{self.lhs}:{'+'.join(self.rhs)}:{self.head_pos}"

    @property
    def is_binary(self) -> bool:
        return len(self.rhs) == 2


class Grammar:
    """Validated rule set with per-lhs totals for smoothed probabilities."""

    def __init__(self, rules: list[GrammarRule], start: str,
                 prep_map: dict[str, str] | None = None,
                 relation_verbs: dict[str, str] | None = None):
        self.rules = rules
        self.start = start
        self.prep_map = dict(prep_map or {})
        self.relation_verbs = dict(relation_verbs or {})
        self._by_id = {}
        for rule in rules:
            if rule.id in self._by_id:
                raise GrammarError(f"duplicate rule id {rule.id}")
            self._by_id[rule.id] = rule
        self.categories = {r.lhs for r in rules}
        if start not in self.categories:
            raise GrammarError(f"start category {start} never appears as a lhs")
        for rule in rules:
            for sym in rule.rhs:
                if sym not in self.categories and sym not in LEX_CLASSES:
                    raise GrammarError(
                        f"rule {rule.id}: symbol {sym!r} is neither a "
                        f"category nor a lexical class")
        self._check_unary_acyclic()

    def _check_unary_acyclic(self):
        edges: dict[str, set[str]] = {}
        for r in self.rules:
            if len(r.rhs) == 1 and r.rhs[0] in self.categories:
                edges.setdefault(r.rhs[0], set()).add(r.lhs)
        state: dict[str, int] = {}

        def visit(node):
            state[node] = 1
            for nxt in edges.get(node, ()):
                if state.get(nxt) == 1:
                    raise GrammarError(f"unary rule cycle through {nxt}")
                if state.get(nxt, 0) == 0:
                    visit(nxt)
            state[node] = 2

        for node in sorted(edges):
            if state.get(node, 0) == 0:
                visit(node)

    # -- queries ------------------------------------------------------------

    def rule(self, rule_id: str) -> GrammarRule:
        return self._by_id[rule_id]

    def has_rule(self, rule_id: str) -> bool:
        return rule_id in self._by_id

    def rules_for_lhs(self, lhs: str) -> list[GrammarRule]:
        return [r for r in self.rules if r.lhs == lhs]

    def lhs_total(self, lhs: str) -> int:
        return sum(r.count for r in self.rules if r.lhs == lhs)

    def relation_labels(self) -> set[str]:
        labels = {r.relation for r in self.rules if r.relation}
        labels.update(self.prep_map.values())
        labels.update(self.relation_verbs.values())
        return labels

    def rule_log_prob(self, rule: GrammarRule) -> float:
        """log P(rule | lhs) with additive smoothing; always <= 0."""
        if rule.id not in self._by_id:
            raise KeyError(f"rule {rule.id} not in grammar")
        siblings = self.rules_for_lhs(rule.lhs)
        total = sum(r.count for r in siblings)
        fanout = len(siblings)
        return math.log((rule.count + RULE_SMOOTHING)
                        / (total + RULE_SMOOTHING * fanout))

    @staticmethod
    def head_of(rule: GrammarRule, left_sense, right_sense):
        """(head, dependent) senses of a binary node."""
        if not rule.is_binary:
            raise GrammarError(f"rule {rule.id} is unary; it has no dependent")
        if rule.head_pos == 1:
            return left_sense, right_sense
        return right_sense, left_sense

    # -- persistence ----------------------------------------------------------

    def save(self) -> str:
        lines = [f"start={self.start}"]
        for cls, label in self.prep_map.items():
            lines.append(f"prepmap {cls} {label}")
        for synset, label in self.relation_verbs.items():
            lines.append(f"relverb {synset} {label}")
        for r in self.rules:
            parts = [r.lhs, "->", *r.rhs, f"head={r.head_pos}"]
            if r.relation:
                parts.append(f"rel={r.relation}")
            parts.append(f"count={r.count}")
            lines.append(" ".join(parts))
        return "\n".join(lines) + "\n"


def load_grammar(text: str) -> Grammar:
    rules: list[GrammarRule] = []
    start = None
    prep_map: dict[str, str] = {}
    relation_verbs: dict[str, str] = {}
    seen_ids = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("start="):
            start = line.split("=", 1)[1].strip()
            continue
        if line.startswith("prepmap "):
            _, cls, label = line.split()
            prep_map[cls] = label
            continue
        if line.startswith("relverb "):
            _, synset, label = line.split()
            relation_verbs[synset] = label
            continue
        if "->" not in line:
            raise GrammarError(f"bad grammar line {raw!r}", lineno)
        lhs_part, rhs_part = line.split("->", 1)
        lhs = lhs_part.strip()
        tokens = rhs_part.split()
        rhs = []
        head_pos = None
        relation = None
        count = 0
        for tok in tokens:
            if tok.startswith("head="):
                try:
                    head_pos = int(tok[5:])
                except ValueError:
                    raise GrammarError(f"bad head position {tok!r}", lineno)
            elif tok.startswith("rel="):
                relation = tok[4:]
            elif tok.startswith("count="):
                try:
                    count = int(tok[6:])
                except ValueError:
                    raise GrammarError(f"bad count {tok!r}", lineno)
                if count < 0:
                    raise GrammarError("negative rule count", lineno)
            else:
                rhs.append(tok)
        if len(rhs) == 0:
            raise GrammarError("rule with empty right-hand side", lineno)
        if len(rhs) > 2:
            raise GrammarError(
                f"rule {lhs} -> {' '.join(rhs)} has {len(rhs)} symbols; "
                "only unary and binary rules are allowed", lineno)
        if head_pos is None:
            raise GrammarError("missing head= position", lineno)
        if head_pos not in (1, 2) or head_pos > len(rhs):
            raise GrammarError(f"head position {head_pos} out of range", lineno)
        if len(rhs) == 2 and relation is None:
            raise GrammarError("binary rule requires rel=<label>", lineno)
        if len(rhs) == 1 and relation is not None:
            raise GrammarError("unary rule cannot carry rel=", lineno)
        rule = GrammarRule(lhs, tuple(rhs), head_pos, relation, count)
        if rule.id in seen_ids:
            raise GrammarError(f"duplicate rule id {rule.id}", lineno)
        seen_ids.add(rule.id)
        rules.append(rule)
    if start is None:
        raise GrammarError("missing start=<CATEGORY> header")
    return Grammar(rules, start, prep_map, relation_verbs)


def load_grammar_file(path) -> Grammar:
    with open(path, encoding="utf-8") as f:
        return load_grammar(f.read())
