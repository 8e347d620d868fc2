"""Command-line entry points.

Exit codes: 0 success, 1 domain error, 2 usage error. Output is
line-oriented and deterministic so runs diff cleanly.
"""
from __future__ import annotations

import argparse
import sys

from .config import resolve_data_dir
from .counts import CountsError
from .grammar import GrammarError
from .lexicon import LexiconError
from .parser import ParseError, nbest_parse, to_bracket
from .retrieval import RetrievalError
from .semantics import scored_interpretations
from .trainer import TrainerError, batch_train, load_gold
from .workspace import Engine, WorkspaceError

DOMAIN_ERRORS = (LexiconError, GrammarError, CountsError, ParseError,
                 RetrievalError, TrainerError, WorkspaceError, OSError)


def _engine(args) -> Engine:
    return Engine(resolve_data_dir(args.data), config_path=args.config)


def cmd_build(args) -> int:
    engine = _engine(args)
    print(f"lexicon: {len(list(engine.lexicon.surfaces))} surfaces, "
          f"{len(list(engine.lexicon.synsets))} synsets")
    print(f"grammar: {len(engine.grammar.rules)} rules, "
          f"start={engine.grammar.start}")
    print(f"counts: {len(engine.store.pair_counts)} pairs, "
          f"{len(engine.store.unary_counts)} unary, "
          f"total={engine.store.total_instances}")
    print("ok")
    return 0


def cmd_parse(args) -> int:
    engine = _engine(args)
    tokens = engine.lexicon.tokenize(args.text)
    result = nbest_parse(engine.grammar, engine.lexicon, engine.store,
                         tokens, args.n, engine.config)
    if args.meaning:
        for ml, score in scored_interpretations(
                args.text, engine.grammar, engine.lexicon, engine.store,
                args.n, engine.config):
            print(f"# score={score:.6f}")
            for line in ml.lines():
                print(line)
    else:
        for tree in result.trees:
            print(f"# score={tree.log_score:.6f}")
            print(to_bracket(tree))
    return 0


def cmd_index(args) -> int:
    engine = _engine(args)
    from .retrieval import CaptionIndex, load_corpus
    with open(args.corpus_file, encoding="utf-8") as f:
        corpus = load_corpus(f.read())
    engine.index = engine.load_index() if args.append else CaptionIndex()
    unparsed = 0
    for caption_id, text in corpus:
        record = engine.index.index_caption(
            caption_id, text, engine.grammar, engine.lexicon, engine.store,
            engine.config)
        if not record.parsed:
            unparsed += 1
            print(f"unparsed {caption_id}: {record.diagnostic}")
    engine.save_index()
    print(f"indexed {len(corpus) - unparsed} captions "
          f"({unparsed} unparsed) into {engine.paths.index}")
    return 0


def cmd_query(args) -> int:
    engine = _engine(args)
    index = engine.load_index()
    rows = index.search(args.text, args.k, engine.grammar, engine.lexicon,
                        engine.store, engine.config)
    for caption_id, binding_count, score in rows:
        text = index.records[caption_id].text
        print(f"{caption_id}\t{binding_count}\t{score:.6f}\t{text}")
    return 0


def cmd_train(args) -> int:
    engine = _engine(args)
    if args.gold:
        with open(args.gold, encoding="utf-8") as f:
            gold_rows = load_gold(f.read(), engine.grammar, engine.lexicon)
        with open(engine.paths.journal, "w", encoding="utf-8") as journal:
            session = batch_train(gold_rows, engine.corpus(), engine.grammar,
                                  engine.lexicon, engine.store, engine.config,
                                  journal_sink=journal.write)
        engine.save_counts()
        engine.save_grammar()
        print(f"reviewed {session.total_reviewed} captions, "
              f"first-try accuracy "
              f"{session.first_try_accuracy:.3f}")
        return 0
    # interactive review on stdin: a=accept r=reject s=skip q=quit
    session = engine.open_session()
    while True:
        proposal = session.propose()
        if proposal is None:
            print("corpus exhausted")
            break
        print(f"[{proposal.caption_id}] rank {proposal.rank} "
              f"score {proposal.score:.4f}")
        print(f"  {proposal.caption_text}")
        print(f"  {to_bracket(proposal.tree)}")
        for line in proposal.meaning.lines():
            print(f"  {line}")
        answer = input("accept/reject/skip/quit [a/r/s/q]? ").strip().lower()
        if answer in ("a", "accept"):
            session.accept()
        elif answer in ("r", "reject"):
            session.reject()
        elif answer in ("s", "skip"):
            session.skip()
        elif answer in ("q", "quit"):
            break
    engine.save_counts()
    engine.save_grammar()
    engine.close()
    print(f"reviewed {session.total_reviewed}, first-try accuracy "
          f"{session.first_try_accuracy:.3f}")
    return 0


def cmd_counts(args) -> int:
    engine = _engine(args)
    if args.counts_command == "compact":
        dropped = engine.store.compact(engine.lexicon,
                                       engine.config.inherit_threshold,
                                       engine.config.count_floor)
        engine.save_counts()
        print(f"dropped {dropped} pair entries")
        return 0
    print(f"pairs={len(engine.store.pair_counts)}")
    print(f"unary={len(engine.store.unary_counts)}")
    print(f"total={engine.store.total_instances}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(resolve_data_dir(args.data))
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_arg_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="caption-ir",
        description="caption parsing, training and retrieval")
    top.add_argument("--data", help="data directory "
                     "(default: $CAPTION_IR_DATA or ./data)")
    top.add_argument("--config", help="config file overriding "
                     "<data>/config.txt", default=None)
    sub = top.add_subparsers(dest="command", required=True)

    sub.add_parser("build", help="load and validate all data files")

    p = sub.add_parser("parse", help="parse a caption")
    p.add_argument("text")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--trees", action="store_true", default=True)
    p.add_argument("--meaning", action="store_true")

    p = sub.add_parser("index", help="ingest a corpus file")
    p.add_argument("corpus_file")
    p.add_argument("--append", action="store_true")

    p = sub.add_parser("query", help="search indexed captions")
    p.add_argument("text")
    p.add_argument("--k", type=int, default=10)

    p = sub.add_parser("train", help="count training")
    p.add_argument("--gold", help="gold parse file (batch mode)")
    p.add_argument("--interactive", action="store_true")

    p = sub.add_parser("counts", help="statistics database maintenance")
    p.add_argument("counts_command", choices=["compact", "stats"])

    p = sub.add_parser("serve", help="run the HTTP/JSON service")
    p.add_argument("--port", type=int, default=8330)
    p.add_argument("--host", default="127.0.0.1")
    return top


COMMANDS = {
    "build": cmd_build,
    "parse": cmd_parse,
    "index": cmd_index,
    "query": cmd_query,
    "train": cmd_train,
    "counts": cmd_counts,
    "serve": cmd_serve,
}


def main(argv=None) -> int:
    parser = build_arg_parser()
    args = parser.parse_args(argv)
    if args.command in ("parse", "query") and not args.text.strip():
        parser.error(f"{args.command} requires nonempty text")
    if args.command == "parse" and args.n < 1:
        parser.error("--n must be >= 1")
    if args.command == "query" and args.k < 1:
        parser.error("--k must be >= 1")
    if args.command == "train" and not args.gold and not args.interactive:
        parser.error("train requires --gold <file> or --interactive")
    try:
        return COMMANDS[args.command](args)
    except DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
