"""Caption indexing and query answering by semantic graph matching.

Captions are stored with every surviving interpretation; a query matches a
caption when any query interpretation maps into any caption interpretation,
with type-hierarchy descent, synonym aliases, and one-hop part-of expansion
(a pylon counts as aircraft context).
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .config import Config
from .counts import CountStore
from .grammar import Grammar
from .lexicon import Lexicon
from .parser import ParseError
from .semantics import (MeaningList, parse_meaning_text,
                        scored_interpretations)


class RetrievalError(ValueError):
    pass


@dataclass
class CaptionRecord:
    caption_id: str
    text: str
    interpretations: list[MeaningList]
    scores: list[float]
    best_score: float
    parsed: bool = True
    diagnostic: str = ""


@dataclass(frozen=True)
class MatchBinding:
    mapping: tuple[tuple[str, str], ...]  # query var -> caption var
    matched_interpretation: int = 0


@dataclass(frozen=True)
class SearchMatch:
    caption_id: str
    binding_count: int
    best_score: float
    coverage: int                      # predicates of the widest query interp
    interpretation_index: int          # caption interpretation that matched
    matched_lines: list[str]           # witnessed caption predicate lines


def _witnessed_lines(query: MeaningList, caption: MeaningList,
                     binding: MatchBinding) -> list[str]:
    """Caption-side predicate lines witnessing each query predicate."""
    var_map = dict(binding.mapping)
    caption_ako = {p.var: p for p in caption.predicates if p.kind == "ako"}
    lines = []
    for p in sorted(query.predicates):
        if p.kind == "rel":
            lines.append(f"rel {p.label} {var_map[p.var]} {var_map[p.var2]}")
        elif p.kind == "prop":
            lines.append(f"prop {var_map[p.var]} {p.label}")
        else:
            witness = caption_ako[var_map[p.var]]
            lines.append(witness.line())
    return lines


def _expansion_keys(lexicon: Lexicon, synset: str) -> set[str]:
    """Index keys under which a caption entity of this type is findable:
    itself, its ako ancestors, and one part-of hop to wholes (plus their
    ancestors)."""
    keys = {synset}
    keys.update(lexicon.superconcepts(synset))
    for origin in list(keys):
        for whole in lexicon.part_wholes(origin):
            keys.add(whole)
            keys.update(lexicon.superconcepts(whole))
    return keys


def type_satisfies(lexicon: Lexicon, query_synset: str,
                   caption_synset: str) -> bool:
    """The caption type answers the query type: identical, a descendant,
    or a one-hop part of something that satisfies it."""
    if caption_synset == query_synset:
        return True
    ancestors = set(lexicon.superconcepts(caption_synset))
    if query_synset in ancestors:
        return True
    for origin in {caption_synset} | ancestors:
        for whole in lexicon.part_wholes(origin):
            if whole == query_synset or \
                    query_synset in lexicon.superconcepts(whole):
                return True
    return False


def graph_match(query: MeaningList, caption: MeaningList,
                lexicon: Lexicon) -> MatchBinding | None:
    """Injective binding of query variables into the caption graph that
    witnesses every query predicate, or None."""
    q_akos = {p.var: p.label for p in query.predicates if p.kind == "ako"}
    c_akos = {p.var: p.label for p in caption.predicates if p.kind == "ako"}
    q_props: dict[str, set[str]] = {}
    c_props: dict[str, set[str]] = {}
    q_rels = []
    c_rels = set()
    for p in query.predicates:
        if p.kind == "prop":
            q_props.setdefault(p.var, set()).add(p.label)
        elif p.kind == "rel":
            q_rels.append(p)
    for p in caption.predicates:
        if p.kind == "prop":
            c_props.setdefault(p.var, set()).add(p.label)
        elif p.kind == "rel":
            c_rels.add((p.label, p.var, p.var2))

    def candidates(qv: str) -> list[str]:
        want = q_akos[qv]
        props = q_props.get(qv, set())
        out = []
        for cv, have in c_akos.items():
            if not type_satisfies(lexicon, want, have):
                continue
            if not props <= c_props.get(cv, set()):
                continue
            out.append(cv)
        return sorted(out)

    qvars = sorted(q_akos)
    binding: dict[str, str] = {}
    used: set[str] = set()

    def consistent(qv: str, cv: str) -> bool:
        for rel in q_rels:
            a, b = rel.var, rel.var2
            if qv == a and b in binding:
                if (rel.label, cv, binding[b]) not in c_rels:
                    return False
            if qv == b and a in binding:
                if (rel.label, binding[a], cv) not in c_rels:
                    return False
            if qv == a and b == a:
                if (rel.label, cv, cv) not in c_rels:
                    return False
        return True

    def solve(i: int) -> bool:
        if i == len(qvars):
            return True
        qv = qvars[i]
        for cv in candidates(qv):
            if cv in used or not consistent(qv, cv):
                continue
            binding[qv] = cv
            used.add(cv)
            if solve(i + 1):
                return True
            del binding[qv]
            used.discard(cv)
        return False

    if not solve(0):
        return None
    return MatchBinding(tuple(sorted(binding.items())))


class CaptionIndex:
    """Inverted index over caption meaning graphs; single-writer ingestion."""

    def __init__(self):
        self.records: dict[str, CaptionRecord] = {}
        self.inverted: dict[str, set[str]] = {}

    def index_caption(self, caption_id: str, text: str, grammar: Grammar,
                      lexicon: Lexicon, store: CountStore,
                      config: Config | None = None) -> CaptionRecord:
        config = config or Config()
        if caption_id in self.records:
            raise RetrievalError(f"duplicate caption id {caption_id!r}")
        if not text.strip():
            raise RetrievalError(f"caption {caption_id!r} has empty text")
        try:
            scored = scored_interpretations(
                text, grammar, lexicon, store,
                config.max_interpretations, config)
        except ParseError as exc:
            record = CaptionRecord(caption_id, text, [], [], 0.0,
                                   parsed=False, diagnostic=str(exc))
            self.records[caption_id] = record
            return record
        record = CaptionRecord(
            caption_id, text,
            [ml for ml, _s in scored], [s for _ml, s in scored],
            scored[0][1])
        self.records[caption_id] = record
        for ml in record.interpretations:
            for synset in ml.ako_synsets():
                for key in _expansion_keys(lexicon, synset):
                    self.inverted.setdefault(key, set()).add(caption_id)
        return record

    def candidates_for(self, query_interpretations: list[MeaningList]
                       ) -> set[str]:
        out: set[str] = set()
        for ml in query_interpretations:
            for synset in ml.ako_synsets():
                out.update(self.inverted.get(synset, ()))
        return out

    def search(self, query_text: str, k: int, grammar: Grammar,
               lexicon: Lexicon, store: CountStore,
               config: Config | None = None
               ) -> list[tuple[str, int, float]]:
        """Ranked (captionId, bindingCount, bestScore) rows; a caption
        matches when any query interpretation maps into any of its
        interpretations."""
        return [(m.caption_id, m.binding_count, m.best_score)
                for m in self.search_detailed(query_text, k, grammar,
                                              lexicon, store, config)]

    def search_detailed(self, query_text: str, k: int, grammar: Grammar,
                        lexicon: Lexicon, store: CountStore,
                        config: Config | None = None) -> list["SearchMatch"]:
        config = config or Config()
        if k < 1:
            raise ValueError("k must be >= 1")
        scored = scored_interpretations(
            query_text, grammar, lexicon, store,
            config.max_interpretations, config)
        query_mls = [ml for ml, _s in scored]
        rows = []
        for caption_id in sorted(self.candidates_for(query_mls)):
            record = self.records[caption_id]
            if not record.parsed:
                continue
            binding_count = 0
            best_coverage = 0
            witness = None
            for q in query_mls:
                for ci, c in enumerate(record.interpretations):
                    binding = graph_match(q, c, lexicon)
                    if binding is None:
                        continue
                    binding_count += 1
                    if len(q.predicates) > best_coverage:
                        best_coverage = len(q.predicates)
                        witness = (q, ci, binding)
            if binding_count:
                matched = _witnessed_lines(
                    witness[0], record.interpretations[witness[1]],
                    witness[2])
                rows.append(SearchMatch(caption_id, binding_count,
                                        record.best_score, best_coverage,
                                        witness[1], matched))
        rows.sort(key=lambda m: (-m.coverage, -m.best_score, m.caption_id))
        return rows[:k]

    # -- persistence --------------------------------------------------------

    def save(self) -> str:
        lines = []
        for record in self.records.values():
            lines.append(json.dumps({
                "captionId": record.caption_id,
                "text": record.text,
                "parsed": record.parsed,
                "bestScore": record.best_score,
                "scores": record.scores,
                "interpretations": [ml.text() for ml in
                                    record.interpretations],
                "diagnostic": record.diagnostic,
            }, sort_keys=True))
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def load(cls, text: str, lexicon: Lexicon) -> "CaptionIndex":
        index = cls()
        for raw in text.splitlines():
            if not raw.strip():
                continue
            data = json.loads(raw)
            record = CaptionRecord(
                data["captionId"], data["text"],
                [parse_meaning_text(t) for t in data["interpretations"]],
                data["scores"], data["bestScore"], data["parsed"],
                data.get("diagnostic", ""))
            index.records[record.caption_id] = record
            for ml in record.interpretations:
                for synset in ml.ako_synsets():
                    for key in _expansion_keys(lexicon, synset):
                        index.inverted.setdefault(key, set()).add(
                            record.caption_id)
        return index


def load_corpus(text: str) -> list[tuple[str, str]]:
    """Corpus file rows: `<caption-id>\\t<text>`, blank lines ignored."""
    rows = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "\t" not in line:
            raise RetrievalError(
                f"line {lineno}: expected <caption-id>\\t<text>")
        caption_id, caption_text = line.split("\t", 1)
        if caption_id in seen:
            raise RetrievalError(f"line {lineno}: duplicate caption id "
                                 f"{caption_id!r}")
        seen.add(caption_id)
        rows.append((caption_id, caption_text))
    return rows
