"""First-try accuracy across repeated review passes over the corpus.

Simulates the monitor loop: each pass proposes parses for every caption
and 'accepts' the gold tree at whatever rank it appears, so the counts
sharpen and the rank-1 hit rate climbs.

Usage: python3 scripts/training_curve.py [--passes N] [--fixtures DIR]
"""
from __future__ import annotations

import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from caption_ir.config import Config
from caption_ir.counts import CountStore
from caption_ir.grammar import load_grammar
from caption_ir.lexicon import load_lexicon_files
from caption_ir.parser import nbest_parse
from caption_ir.retrieval import load_corpus
from caption_ir.trainer import apply_accepted_tree, load_gold


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--passes", type=int, default=4)
    ap.add_argument("--fixtures", default=os.path.join(
        os.path.dirname(__file__), "..", "fixtures"))
    args = ap.parse_args()
    fixtures = os.path.abspath(args.fixtures)

    config = Config()
    lexicon = load_lexicon_files(
        os.path.join(fixtures, "lexicon", "lexicon.txt"),
        os.path.join(fixtures, "lexicon", "hierarchy.txt"),
        os.path.join(fixtures, "lexicon", "formats.txt"))
    grammar = load_grammar(open(os.path.join(fixtures, "grammar.txt")).read())
    corpus = load_corpus(open(os.path.join(fixtures, "corpus.txt")).read())
    gold = dict(load_gold(open(os.path.join(fixtures, "gold.txt")).read(),
                          grammar, lexicon))
    store = CountStore(pos_of=lexicon.pos_of)

    print("pass  first-try  mean-gold-rank  pairs  unary")
    for pass_no in range(1, args.passes + 1):
        hits = 0
        ranks = []
        for caption_id, text in corpus:
            tokens = lexicon.tokenize(text)
            result = nbest_parse(grammar, lexicon, store, tokens,
                                 config.review_depth, config)
            gold_key = gold[caption_id].order_key()
            rank = next((i + 1 for i, t in enumerate(result.trees)
                         if t.order_key() == gold_key),
                        config.review_depth + 1)
            ranks.append(rank)
            hits += rank == 1
            apply_accepted_tree(gold[caption_id], grammar, lexicon, store,
                                config)
        print(f"{pass_no:>4}  {hits / len(corpus):>9.3f}  "
              f"{sum(ranks) / len(ranks):>14.2f}  "
              f"{len(store.pair_counts):>5}  "
              f"{len(store.unary_counts):>5}")


if __name__ == "__main__":
    main()
