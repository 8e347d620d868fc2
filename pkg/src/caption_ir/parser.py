"""N-best caption parsing by best-first branch-and-bound over a chart.

Every node contributes a nonpositive score term (log rule probability,
plus log co-occurrence probability at binary nodes), so a partial
constituent's score is an admissible upper bound on any parse containing
it: the agenda can prune anything scoring below the current N-th complete
parse. An exhaustive dynamic-programming enumerator with the identical
scoring function serves as the verification oracle.
"""
from __future__ import annotations

import heapq
import math
import re
from dataclasses import dataclass

from .config import Config
from .counts import CountStore
from .grammar import Grammar, GrammarRule
from .lexicon import Lexicon, WordSense

UNKNOWN_SENSE_RANK = 80
CODE_SENSE_RANK = 60


class ParseError(ValueError):
    def __init__(self, message, prefix_end=None, spans=None):
        super().__init__(message)
        self.prefix_end = prefix_end
        self.spans = spans or []


@dataclass(frozen=True)
class ParseNode:
    category: str               # grammar category, or lexclass for leaves
    start: int
    end: int
    head: WordSense
    log_score: float
    rule: GrammarRule | None = None
    children: tuple["ParseNode", ...] = ()
    token: str | None = None    # leaves only

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def order_key(self):
        if self.is_leaf:
            return (0, self.start, self.end, self.category,
                    self.head.rank, self.head.synset)
        return (1, self.start, self.end, self.category, self.rule.id,
                tuple(c.order_key() for c in self.children))

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()

    def leaves(self):
        return [n for n in self.walk() if n.is_leaf]


@dataclass
class ParseResult:
    trees: list[ParseNode]
    exhausted: bool


def prep_sense_of(node: ParseNode) -> WordSense | None:
    """The preposition governing a constituent, if any.

    For a PP this is the non-head child's leaf; other categories delegate
    to their head child, so wrappers like APPOSPP still expose their prep.
    """
    if node.is_leaf:
        return node.head if node.head.pos == "preposition" else None
    if node.category == "PP":
        others = [c for i, c in enumerate(node.children)
                  if i != node.rule.head_pos - 1]
        for child in others:
            found = prep_sense_of(child)
            if found is not None:
                return found
        return None
    head_child = node.children[node.rule.head_pos - 1]
    return prep_sense_of(head_child)


def stat_rule_key(rule: GrammarRule, dep_child: ParseNode,
                  lexicon: Lexicon) -> str:
    """Statistics key for a binary node: the rule id, specialized by the
    dependent PP's preposition subclass when there is one."""
    prep = prep_sense_of(dep_child)
    if prep is not None:
        cls = lexicon.prep_class(prep.synset)
        if cls:
            return f"{rule.id}@{cls}"
    return rule.id


def cooc_log_prob(store: CountStore, hierarchy: Lexicon, rule_key: str,
                  head: str, dep: str, threshold: int = 5,
                  floor: float = 0.5) -> float:
    """log P(dep | head, rule), capped at 1 and floored away from zero.

    The denominator is floored at the inheritance threshold so a head
    sense with no statistics cannot outscore a trained one.
    """
    est = store.estimated_pair_count(hierarchy, rule_key, head, dep,
                                     threshold=threshold, floor=floor)
    value = est.value if est.value > 0 else floor
    denom = max(store.unary(head), threshold, 1)
    return math.log(min(1.0, value / denom))


class Scorer:
    """Shared node factory so search and oracle score identically."""

    def __init__(self, grammar: Grammar, lexicon: Lexicon, store: CountStore,
                 config: Config | None = None):
        self.grammar = grammar
        self.lexicon = lexicon
        self.store = store
        self.config = config or Config()

    def leaf(self, token: str, index: int, sense: WordSense) -> ParseNode:
        return ParseNode(sense.lexclass, index, index + 1, sense, 0.0,
                         token=token)

    def unary(self, rule: GrammarRule, child: ParseNode) -> ParseNode:
        score = child.log_score + self.grammar.rule_log_prob(rule)
        return ParseNode(rule.lhs, child.start, child.end, child.head,
                         score, rule=rule, children=(child,))

    def binary(self, rule: GrammarRule, left: ParseNode,
               right: ParseNode) -> ParseNode:
        head_child = left if rule.head_pos == 1 else right
        dep_child = right if rule.head_pos == 1 else left
        key = stat_rule_key(rule, dep_child, self.lexicon)
        score = (left.log_score + right.log_score
                 + self.grammar.rule_log_prob(rule)
                 + cooc_log_prob(self.store, self.lexicon, key,
                                 head_child.head.synset,
                                 dep_child.head.synset,
                                 self.config.inherit_threshold,
                                 self.config.count_floor))
        return ParseNode(rule.lhs, left.start, right.end, head_child.head,
                         score, rule=rule, children=(left, right))

    # -- lexical candidates ----------------------------------------------------

    def unknown_category_senses(self, token: str) -> list[WordSense]:
        """Open-class category candidates for a word nothing else explains."""
        candidates: list[str] = []
        for root in self.config.unknown_roots:
            if not self.lexicon.has_synset(root):
                continue
            candidates.append(root)
            candidates.extend(self.lexicon.ako_children(root))
        candidates = sorted(set(candidates),
                            key=lambda s: (-self.store.unary(s), s))
        cap = self.config.unknown_candidate_cap
        return [WordSense(token, "noun", synset, UNKNOWN_SENSE_RANK)
                for synset in candidates[:cap]]

    def lexical_candidates(self, token: str) -> list[WordSense]:
        special = self.lexicon.classify_special(token)
        if special is not None:
            category, _value = special
            return [WordSense(token, "noun", category, CODE_SENSE_RANK,
                              form="code")]
        senses = self.lexicon.lookup_senses(token)
        if senses:
            return senses
        resolved = self.lexicon.resolve_unknown(token)
        if resolved:
            best_surface = resolved[0][0]
            senses = self.lexicon.lookup_senses(best_surface)
            if senses:
                return senses
        return self.unknown_category_senses(token)


class _Agenda:
    """Best-first chart parser returning derivations in score order."""

    def __init__(self, scorer: Scorer, tokens: list[str]):
        self.scorer = scorer
        self.tokens = tokens
        grammar = scorer.grammar
        self.unary_by_rhs: dict[str, list[GrammarRule]] = {}
        self.binary_by_left: dict[str, list[GrammarRule]] = {}
        self.binary_by_right: dict[str, list[GrammarRule]] = {}
        for rule in grammar.rules:
            if len(rule.rhs) == 1:
                self.unary_by_rhs.setdefault(rule.rhs[0], []).append(rule)
            else:
                self.binary_by_left.setdefault(rule.rhs[0], []).append(rule)
                self.binary_by_right.setdefault(rule.rhs[1], []).append(rule)

    @staticmethod
    def _symbol(node: ParseNode) -> str:
        return node.category

    def run(self, n: int, collect_pops=None) -> ParseResult:
        scorer = self.scorer
        tokens = self.tokens
        length = len(tokens)
        heap: list[tuple[float, tuple, ParseNode]] = []

        def push(node: ParseNode):
            heapq.heappush(heap, (-node.log_score, node.order_key(), node))

        for i, token in enumerate(tokens):
            for sense in scorer.lexical_candidates(token):
                push(scorer.leaf(token, i, sense))

        by_start: dict[tuple[int, str], list[ParseNode]] = {}
        by_end: dict[tuple[int, str], list[ParseNode]] = {}
        completes: list[ParseNode] = []
        threshold = -math.inf
        start_cat = scorer.grammar.start
        exhausted = False
        pruned_any = False

        while heap:
            neg, _key, node = heap[0]
            if len(completes) >= n and -neg < threshold:
                break
            heapq.heappop(heap)
            if collect_pops is not None:
                collect_pops.append(node)
            if (node.category == start_cat and node.start == 0
                    and node.end == length):
                completes.append(node)
                if len(completes) >= n:
                    scores = sorted((c.log_score for c in completes),
                                    reverse=True)
                    threshold = scores[n - 1]
            sym = self._symbol(node)
            by_start.setdefault((node.start, sym), []).append(node)
            by_end.setdefault((node.end, sym), []).append(node)

            new_nodes = []
            for rule in self.unary_by_rhs.get(sym, ()):
                new_nodes.append(scorer.unary(rule, node))
            for rule in self.binary_by_left.get(sym, ()):
                for partner in by_start.get((node.end, rule.rhs[1]), ()):
                    new_nodes.append(scorer.binary(rule, node, partner))
            for rule in self.binary_by_right.get(sym, ()):
                for partner in by_end.get((node.start, rule.rhs[0]), ()):
                    new_nodes.append(scorer.binary(rule, partner, node))
            for fresh in new_nodes:
                if len(completes) >= n and fresh.log_score < threshold:
                    pruned_any = True
                    continue
                push(fresh)
        else:
            # the agenda emptied; only then can we be sure nothing more
            # exists, and only if branch-and-bound never discarded anything
            # and no complete parse fell outside the requested n
            exhausted = not pruned_any and len(completes) <= n

        completes.sort(key=lambda t: (-t.log_score, t.order_key()))
        if not completes:
            prefix_end = max((e for (e, _s) in by_end), default=0)
            spans = sorted({(nd.start, nd.end, nd.category)
                            for lst in by_start.values() for nd in lst
                            if not nd.is_leaf})
            raise ParseError(
                f"no parse for tokens {tokens!r}; "
                f"longest parsable prefix ends at token {prefix_end}",
                prefix_end=prefix_end, spans=spans)
        return ParseResult(completes[:n], exhausted)


def nbest_parse(grammar: Grammar, lexicon: Lexicon, store: CountStore,
                tokens: list[str], n: int, config: Config | None = None,
                collect_pops=None) -> ParseResult:
    """Up to `n` complete parses in exact nonincreasing score order."""
    if not tokens:
        raise ParseError("cannot parse an empty token sequence")
    if n < 1:
        raise ValueError("n must be >= 1")
    scorer = Scorer(grammar, lexicon, store, config)
    return _Agenda(scorer, tokens).run(n, collect_pops=collect_pops)


def exhaustive_parses(grammar: Grammar, lexicon: Lexicon, store: CountStore,
                      tokens: list[str], config: Config | None = None
                      ) -> list[ParseNode]:
    """All parses by dynamic programming; the branch-and-bound oracle."""
    config = config or Config()
    if len(tokens) > config.oracle_cap:
        raise ParseError(
            f"{len(tokens)} tokens exceed the oracle cap {config.oracle_cap}")
    scorer = Scorer(grammar, lexicon, store, config)
    unary_by_rhs: dict[str, list[GrammarRule]] = {}
    binaries: list[GrammarRule] = []
    for rule in grammar.rules:
        if len(rule.rhs) == 1:
            unary_by_rhs.setdefault(rule.rhs[0], []).append(rule)
        else:
            binaries.append(rule)

    length = len(tokens)
    cells: dict[tuple[int, int], dict[str, list[ParseNode]]] = {}

    def close_unary(cell: dict[str, list[ParseNode]],
                    new_nodes: list[ParseNode]):
        queue = list(new_nodes)
        while queue:
            node = queue.pop(0)
            for rule in unary_by_rhs.get(node.category, ()):
                parent = scorer.unary(rule, node)
                cell.setdefault(parent.category, []).append(parent)
                queue.append(parent)

    for i, token in enumerate(tokens):
        cell: dict[str, list[ParseNode]] = {}
        fresh = []
        for sense in scorer.lexical_candidates(token):
            leaf = scorer.leaf(token, i, sense)
            cell.setdefault(leaf.category, []).append(leaf)
            fresh.append(leaf)
        close_unary(cell, fresh)
        cells[(i, i + 1)] = cell

    for width in range(2, length + 1):
        for start in range(0, length - width + 1):
            end = start + width
            cell: dict[str, list[ParseNode]] = {}
            fresh = []
            for split in range(start + 1, end):
                left_cell = cells[(start, split)]
                right_cell = cells[(split, end)]
                for rule in binaries:
                    for left in left_cell.get(rule.rhs[0], ()):
                        for right in right_cell.get(rule.rhs[1], ()):
                            node = scorer.binary(rule, left, right)
                            cell.setdefault(node.category, []).append(node)
                            fresh.append(node)
            close_unary(cell, fresh)
            cells[(start, end)] = cell

    roots = cells.get((0, length), {}).get(grammar.start, [])
    return sorted(roots, key=lambda t: (-t.log_score, t.order_key()))


def score_tree(tree: ParseNode, grammar: Grammar, lexicon: Lexicon,
               store: CountStore, config: Config | None = None) -> float:
    """Recompute the log score from the leaves up."""
    scorer = Scorer(grammar, lexicon, store, config)

    def rebuild(node: ParseNode) -> ParseNode:
        if node.is_leaf:
            return ParseNode(node.category, node.start, node.end, node.head,
                             0.0, token=node.token)
        kids = [rebuild(c) for c in node.children]
        if len(kids) == 1:
            return scorer.unary(node.rule, kids[0])
        return scorer.binary(node.rule, kids[0], kids[1])

    return rebuild(tree).log_score


# -- bracketed serialization ---------------------------------------------------

def to_bracket(node: ParseNode) -> str:
    if node.is_leaf:
        return (f'({node.category} head={node.head.synset} '
                f'score={node.log_score!r} "{node.token}")')
    kids = " ".join(to_bracket(c) for c in node.children)
    return (f"({node.category} head={node.head.synset} "
            f"score={node.log_score!r} {kids})")


_BRACKET_TOKEN = re.compile(r'\(|\)|"[^"]*"|[^\s()"]+')


def from_bracket(text: str, grammar: Grammar,
                 lexicon: Lexicon) -> ParseNode:
    """Rebuild a ParseNode from its bracketed form."""
    tokens = _BRACKET_TOKEN.findall(text)
    pos = 0
    leaf_index = 0

    def fail(msg):
        raise ParseError(f"bad bracketed tree: {msg}")

    def parse_node() -> ParseNode:
        nonlocal pos, leaf_index
        if pos >= len(tokens) or tokens[pos] != "(":
            fail("expected '('")
        pos += 1
        if pos >= len(tokens):
            fail("truncated")
        category = tokens[pos]
        pos += 1
        attrs = {}
        children = []
        literal = None
        while pos < len(tokens) and tokens[pos] != ")":
            tok = tokens[pos]
            if tok == "(":
                children.append(parse_node())
                continue
            if tok.startswith('"'):
                literal = tok[1:-1]
                pos += 1
                continue
            if "=" in tok:
                key, value = tok.split("=", 1)
                attrs[key] = value
                pos += 1
                continue
            fail(f"unexpected token {tok!r}")
        if pos >= len(tokens):
            fail("missing ')'")
        pos += 1
        synset = attrs.get("head")
        if synset is None:
            fail(f"node {category} lacks head=")
        score = float(attrs.get("score", "0"))
        if literal is not None and not children:
            sense = _recover_sense(lexicon, literal, category, synset)
            node = ParseNode(category, leaf_index, leaf_index + 1, sense,
                             score, token=literal)
            leaf_index += 1
            return node
        if not children:
            fail(f"node {category} has neither token nor children")
        rule = _recover_rule(grammar, category, children, attrs.get("rule"))
        head_child = children[rule.head_pos - 1]
        return ParseNode(category, children[0].start, children[-1].end,
                         head_child.head, score, rule=rule,
                         children=tuple(children))

    node = parse_node()
    if pos != len(tokens):
        fail("trailing content")
    return node


def _recover_sense(lexicon: Lexicon, token: str, lexclass: str,
                   synset: str) -> WordSense:
    """Reconstruct the leaf sense a parse would have used, so trees read
    back from brackets compare equal to freshly parsed ones."""
    if lexclass == "code":
        return WordSense(token, "noun", synset, CODE_SENSE_RANK, form="code")
    candidates = list(lexicon.lookup_senses(token))
    if not candidates:
        resolved = lexicon.resolve_unknown(token)
        if resolved:
            candidates = lexicon.lookup_senses(resolved[0][0])
    for sense in candidates:
        if sense.synset == synset and sense.lexclass == lexclass:
            return sense
    pos = lexclass if lexclass in ("noun", "verb", "adjective", "adverb",
                                   "preposition", "determiner", "conjunction",
                                   "other") else "noun"
    form = lexclass if lexclass in ("prespart", "pastpart") else None
    if form:
        pos = "verb"
    return WordSense(token, pos, synset, UNKNOWN_SENSE_RANK, form=form)


def _recover_rule(grammar: Grammar, lhs: str, children: list[ParseNode],
                  explicit_id: str | None) -> GrammarRule:
    if explicit_id:
        return grammar.rule(explicit_id)
    rhs = tuple(c.category for c in children)
    matches = [r for r in grammar.rules if r.lhs == lhs and r.rhs == rhs]
    if not matches:
        raise ParseError(f"no grammar rule {lhs} -> {' '.join(rhs)}")
    if len(matches) > 1:
        raise ParseError(
            f"ambiguous rule {lhs} -> {' '.join(rhs)}; bracket needs rule=")
    return matches[0]
