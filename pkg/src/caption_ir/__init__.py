"""Caption parsing and retrieval with hierarchy-smoothed co-occurrence counts."""

from .config import Config, load_config, save_config
from .counts import (CodePolicy, CountStore, Estimate, PairKey,
                     antisample_estimate)
from .grammar import Grammar, GrammarRule, load_grammar
from .lexicon import Lexicon, WordSense, load_lexicon, load_lexicon_files
from .parser import (ParseError, ParseNode, ParseResult, cooc_log_prob,
                     exhaustive_parses, from_bracket, nbest_parse,
                     score_tree, to_bracket)
from .retrieval import CaptionIndex, CaptionRecord, MatchBinding, graph_match
from .semantics import (MeaningList, Predicate, canonical_key,
                        classify_unknown, interpretations, isomorphic,
                        meaning_list)
from .trainer import ReviewSession, batch_train, load_gold, replay_journal
from .workspace import Engine

__all__ = [
    "Config", "load_config", "save_config",
    "CodePolicy", "CountStore", "Estimate", "PairKey", "antisample_estimate",
    "Grammar", "GrammarRule", "load_grammar",
    "Lexicon", "WordSense", "load_lexicon", "load_lexicon_files",
    "ParseError", "ParseNode", "ParseResult", "cooc_log_prob",
    "exhaustive_parses", "from_bracket", "nbest_parse", "score_tree",
    "to_bracket",
    "CaptionIndex", "CaptionRecord", "MatchBinding", "graph_match",
    "MeaningList", "Predicate", "canonical_key", "classify_unknown",
    "interpretations", "isomorphic", "meaning_list",
    "ReviewSession", "batch_train", "load_gold", "replay_journal",
    "Engine",
]
