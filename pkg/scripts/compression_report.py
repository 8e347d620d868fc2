"""Report what the standard-deviation drop rule removes from a trained
store, and how closely the surviving statistics reconstruct what was
dropped.

Usage: python3 scripts/compression_report.py [--fixtures DIR]
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
from caption_ir.retrieval import load_corpus
from caption_ir.trainer import batch_train, load_gold


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--fixtures", default=os.path.join(
        os.path.dirname(__file__), "..", "fixtures"))
    ap.add_argument("--show", type=int, default=12,
                    help="example rows to print")
    args = ap.parse_args()
    fixtures = os.path.abspath(args.fixtures)

    config = Config()
    lexicon = load_lexicon_files(
        os.path.join(fixtures, "lexicon", "lexicon.txt"),
        os.path.join(fixtures, "lexicon", "hierarchy.txt"),
        os.path.join(fixtures, "lexicon", "formats.txt"))
    grammar = load_grammar(open(os.path.join(fixtures, "grammar.txt")).read())
    corpus = load_corpus(open(os.path.join(fixtures, "corpus.txt")).read())
    gold = load_gold(open(os.path.join(fixtures, "gold.txt")).read(),
                     grammar, lexicon)
    store = CountStore(pos_of=lexicon.pos_of)
    batch_train(gold, corpus, grammar, lexicon, store, config)

    before = dict(store.pair_counts)
    dropped_count = store.compact(lexicon, config.inherit_threshold,
                                  config.count_floor)
    dropped = sorted(set(before) - set(store.pair_counts))
    print(f"pairs before: {len(before)}")
    print(f"dropped:      {dropped_count} "
          f"({dropped_count / len(before):.1%})")
    print(f"pairs after:  {len(store.pair_counts)}")

    worst = 0.0
    rows = []
    for key in dropped:
        est = store.estimated_pair_count(
            lexicon, key.rule_id, key.first, key.second,
            threshold=config.inherit_threshold, floor=config.count_floor)
        err = abs(before[key] - est.value)
        frac = err / est.count_sd if est.count_sd else 0.0
        worst = max(worst, frac)
        rows.append((frac, key, before[key], est.value, est.count_sd))
    rows.sort(reverse=True)
    print(f"worst reconstruction error: {worst:.3f} standard deviations")
    print("\n  sd-frac  count  estimate  sd       pair")
    for frac, key, count, value, sd in rows[:args.show]:
        print(f"  {frac:7.3f}  {count:5}  {value:8.3f}  {sd:7.3f}  "
              f"{key.rule_id} {key.first} {key.second}")


if __name__ == "__main__":
    main()
