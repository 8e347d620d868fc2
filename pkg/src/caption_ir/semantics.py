"""Meaning lists: the semantic graphs extracted from parse trees.

A meaning list is a set of a_kind_of / property / relation predicates over
variables, one variable per noun or verb head occurrence. Verbs that merely
name a case relation (mount, attach, ...) are contracted away when they
link two entities, so "sidewinder attached to pylon" and "sidewinder on
pylon" come out with the same deep structure.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .config import Config
from .counts import CountStore
from .grammar import Grammar
from .lexicon import Lexicon
from .parser import ParseNode, nbest_parse, prep_sense_of, stat_rule_key

VARIABLE_POS = ("noun", "verb")
PROPERTY_POS = ("adjective", "adverb")


class MeaningError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Predicate:
    kind: str            # "ako" | "prop" | "rel"
    label: str           # synset for ako/prop, relation label for rel
    var: str
    var2: str | None = None

    def line(self) -> str:
        if self.kind == "rel":
            return f"rel {self.label} {self.var} {self.var2}"
        return f"{self.kind} {self.var} {self.label}"


@dataclass(frozen=True)
class MeaningList:
    predicates: frozenset[Predicate]
    variables: frozenset[str]

    def __post_init__(self):
        typed = {p.var for p in self.predicates if p.kind == "ako"}
        for p in self.predicates:
            endpoints = [p.var] + ([p.var2] if p.var2 else [])
            for v in endpoints:
                if v not in typed:
                    raise MeaningError(
                        f"variable {v} in {p.line()!r} has no a_kind_of type")
        ako_counts = {}
        for p in self.predicates:
            if p.kind == "ako":
                ako_counts[p.var] = ako_counts.get(p.var, 0) + 1
        for v, c in ako_counts.items():
            if c != 1:
                raise MeaningError(f"variable {v} has {c} a_kind_of predicates")

    def lines(self) -> list[str]:
        return [p.line() for p in sorted(self.predicates)]

    def text(self) -> str:
        return "\n".join(self.lines()) + "\n"

    def ako_synsets(self) -> set[str]:
        return {p.label for p in self.predicates if p.kind == "ako"}


def parse_meaning_text(text: str) -> MeaningList:
    predicates = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] in ("ako", "prop") and len(parts) == 3:
            predicates.add(Predicate(parts[0], parts[2], parts[1]))
        elif parts[0] == "rel" and len(parts) == 4:
            predicates.add(Predicate("rel", parts[1], parts[2], parts[3]))
        else:
            raise MeaningError(f"line {lineno}: bad predicate {raw!r}")
    variables = {p.var for p in predicates} | {
        p.var2 for p in predicates if p.var2}
    return MeaningList(frozenset(predicates), frozenset(variables))


def _head_leaf(node: ParseNode) -> ParseNode:
    while not node.is_leaf:
        node = node.children[node.rule.head_pos - 1]
    return node


def meaning_list(tree: ParseNode, grammar: Grammar,
                 lexicon: Lexicon) -> MeaningList:
    """Extract the semantic graph of a parse tree."""
    predicates: set[Predicate] = set()
    var_of: dict[int, str] = {}

    for leaf in tree.leaves():
        if leaf.head.pos in VARIABLE_POS:
            var = f"v{leaf.start + 1}"
            var_of[leaf.start] = var
            predicates.add(Predicate("ako", leaf.head.synset, var))

    for node in tree.walk():
        if node.is_leaf or not node.rule or not node.rule.is_binary:
            continue
        rule = node.rule
        head_child = node.children[rule.head_pos - 1]
        dep_child = node.children[2 - rule.head_pos]
        head_leaf = _head_leaf(head_child)
        dep_leaf = _head_leaf(dep_child)
        head_var = var_of.get(head_leaf.start)
        label = rule.relation
        prep = prep_sense_of(dep_child)
        if prep is not None and label == "prep-attach":
            cls = lexicon.prep_class(prep.synset)
            label = grammar.prep_map.get(cls, label)
        if dep_leaf.head.pos in PROPERTY_POS:
            if head_var is not None:
                predicates.add(
                    Predicate("prop", dep_leaf.head.synset, head_var))
        elif dep_leaf.head.pos in VARIABLE_POS:
            dep_var = var_of.get(dep_leaf.start)
            if head_var is not None and dep_var is not None:
                predicates.add(Predicate("rel", label, head_var, dep_var))

    predicates = _contract_relation_verbs(predicates, grammar)
    variables = {p.var for p in predicates} | {
        p.var2 for p in predicates if p.var2}
    return MeaningList(frozenset(predicates), frozenset(variables))


def _contract_relation_verbs(predicates: set[Predicate],
                             grammar: Grammar) -> set[Predicate]:
    """Fold 'X mounted on Y' style triangles into a direct relation.

    A variable typed as a relation verb, linked from exactly one entity by
    verbal-object and linking out only through preposition-class relations,
    is replaced by direct relations between its endpoints.
    """
    prep_labels = set(grammar.prep_map.values())
    out = set(predicates)
    verb_vars = {p.var: p for p in predicates
                 if p.kind == "ako" and p.label in grammar.relation_verbs}
    for vm, ako_pred in verb_vars.items():
        in_links = [p for p in out if p.kind == "rel" and p.var2 == vm]
        out_links = [p for p in out if p.kind == "rel" and p.var == vm]
        props = [p for p in out if p.kind == "prop" and p.var == vm]
        if props or len(in_links) != 1 or not out_links:
            continue
        hook = in_links[0]
        if hook.label != "verbal-object":
            continue
        if not all(p.label in prep_labels for p in out_links):
            continue
        default_label = grammar.relation_verbs[ako_pred.label]
        for p in out_links:
            label = p.label if p.label in prep_labels else default_label
            out.add(Predicate("rel", label, hook.var, p.var2))
            out.discard(p)
        out.discard(hook)
        out.discard(ako_pred)
    return out


# -- graph isomorphism ------------------------------------------------------------

def canonical_key(ml: MeaningList) -> tuple[str, ...]:
    """Renaming-invariant canonical form, used to merge duplicate
    interpretations. Color refinement plus bounded tie permutation."""
    variables = sorted(ml.variables)
    akos = {p.var: p.label for p in ml.predicates if p.kind == "ako"}
    props: dict[str, list[str]] = {}
    rels_out: dict[str, list[tuple[str, str]]] = {}
    rels_in: dict[str, list[tuple[str, str]]] = {}
    for p in ml.predicates:
        if p.kind == "prop":
            props.setdefault(p.var, []).append(p.label)
        elif p.kind == "rel":
            rels_out.setdefault(p.var, []).append((p.label, p.var2))
            rels_in.setdefault(p.var2, []).append((p.label, p.var))

    color = {v: (akos.get(v, ""), tuple(sorted(props.get(v, []))))
             for v in variables}
    ranks = {c: i for i, c in enumerate(sorted(set(color.values())))}
    color = {v: ranks[c] for v, c in color.items()}
    for _ in range(len(variables)):
        refined = {}
        for v in variables:
            outs = tuple(sorted((lbl, color[o]) for lbl, o in
                                rels_out.get(v, [])))
            ins = tuple(sorted((lbl, color[o]) for lbl, o in
                               rels_in.get(v, [])))
            refined[v] = (color[v], outs, ins)
        ranks = {c: i for i, c in enumerate(sorted(set(refined.values())))}
        new_color = {v: ranks[refined[v]] for v in variables}
        if new_color == color:
            break
        color = new_color

    groups: dict[int, list[str]] = {}
    for v in variables:
        groups.setdefault(color[v], []).append(v)

    def serialize(order: list[str]) -> tuple[str, ...]:
        rename = {v: f"x{i}" for i, v in enumerate(order)}
        lines = []
        for p in ml.predicates:
            if p.kind == "rel":
                lines.append(f"rel {p.label} {rename[p.var]} {rename[p.var2]}")
            else:
                lines.append(f"{p.kind} {rename[p.var]} {p.label}")
        return tuple(sorted(lines))

    tie_sizes = [len(g) for g in groups.values() if len(g) > 1]
    n_perms = 1
    for size in tie_sizes:
        for k in range(2, size + 1):
            n_perms *= k
    base_order = [v for _c, grp in sorted(groups.items()) for v in grp]
    if n_perms == 1 or n_perms > 720:
        return serialize(base_order)
    best = None
    group_lists = [sorted(grp) for _c, grp in sorted(groups.items())]
    for perm_set in itertools.product(
            *[itertools.permutations(g) for g in group_lists]):
        order = [v for grp in perm_set for v in grp]
        candidate = serialize(order)
        if best is None or candidate < best:
            best = candidate
    return best


def isomorphic(a: MeaningList, b: MeaningList) -> bool:
    return canonical_key(a) == canonical_key(b)


# -- unknown-word classification -----------------------------------------------------

@dataclass(frozen=True)
class UnknownClassification:
    ranking: tuple[tuple[str, float], ...]
    low_confidence: bool

    @property
    def best(self) -> str:
        return self.ranking[0][0]


def classify_unknown(lexicon: Lexicon, store: CountStore, config: Config,
                     token: str,
                     context_pairs: list[tuple[str, str, str]]
                     ) -> UnknownClassification:
    """Rank open-class categories for an unknown word by co-occurrence.

    `context_pairs` holds (rule key, slot of the unknown word, known sense)
    triples taken from the parse context; each candidate category is scored
    by the product of estimated pair counts with the candidate substituted
    into the unknown slot.
    """
    candidates: list[str] = []
    for root in config.unknown_roots:
        if not lexicon.has_synset(root):
            continue
        candidates.append(root)
        candidates.extend(lexicon.ako_children(root))
    candidates = sorted(set(candidates),
                        key=lambda s: (-store.unary(s), s))
    if not context_pairs:
        return UnknownClassification(
            ((config.default_unknown_category, 0.0),), low_confidence=True)
    scored = []
    for cand in candidates:
        score = 1.0
        for rule_key, slot, known in context_pairs:
            if slot == "first":
                est = store.estimated_pair_count(
                    lexicon, rule_key, cand, known,
                    threshold=config.inherit_threshold,
                    floor=config.count_floor)
            elif slot == "second":
                est = store.estimated_pair_count(
                    lexicon, rule_key, known, cand,
                    threshold=config.inherit_threshold,
                    floor=config.count_floor)
            else:
                raise ValueError(f"bad slot {slot!r}; expected first|second")
            score *= est.value
        scored.append((cand, score))
    scored.sort(key=lambda cs: (-cs[1], -store.unary(cs[0]), cs[0]))
    return UnknownClassification(tuple(scored), low_confidence=False)


def context_pairs_for_token(tree: ParseNode, token: str,
                            lexicon: Lexicon) -> list[tuple[str, str, str]]:
    """(rule key, slot, known sense) triples where `token` participates
    in a binary node of `tree`."""
    out = []
    for node in tree.walk():
        if node.is_leaf or not node.rule or not node.rule.is_binary:
            continue
        head_child = node.children[node.rule.head_pos - 1]
        dep_child = node.children[2 - node.rule.head_pos]
        head_leaf = _head_leaf(head_child)
        dep_leaf = _head_leaf(dep_child)
        key = stat_rule_key(node.rule, dep_child, lexicon)
        if head_leaf.token == token and dep_leaf.token != token:
            out.append((key, "first", dep_leaf.head.synset))
        elif dep_leaf.token == token and head_leaf.token != token:
            out.append((key, "second", head_leaf.head.synset))
    return out


# -- interpretation enumeration ------------------------------------------------------

def scored_interpretations(caption_text: str, grammar: Grammar,
                           lexicon: Lexicon, store: CountStore,
                           max_alternatives: int,
                           config: Config | None = None
                           ) -> list[tuple[MeaningList, float]]:
    """Meaning lists of the top parses within the score margin of the best,
    isomorphic duplicates merged, paired with their parse scores."""
    config = config or Config()
    if max_alternatives < 1:
        raise ValueError("max_alternatives must be >= 1")
    tokens = lexicon.tokenize(caption_text)
    result = nbest_parse(grammar, lexicon, store, tokens,
                         max(max_alternatives * 3, 10), config)
    best = result.trees[0].log_score
    margin = config.interpretation_margin
    out: list[tuple[MeaningList, float]] = []
    seen: set[tuple[str, ...]] = set()
    for tree in result.trees:
        if tree.log_score < best - margin:
            break
        ml = meaning_list(tree, grammar, lexicon)
        key = canonical_key(ml)
        if key in seen:
            continue
        seen.add(key)
        out.append((ml, tree.log_score))
        if len(out) >= max_alternatives:
            break
    return out


def interpretations(caption_text: str, grammar: Grammar, lexicon: Lexicon,
                    store: CountStore, max_alternatives: int,
                    config: Config | None = None) -> list[MeaningList]:
    return [ml for ml, _score in scored_interpretations(
        caption_text, grammar, lexicon, store, max_alternatives, config)]
