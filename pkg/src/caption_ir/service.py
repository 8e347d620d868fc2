"""HTTP/JSON service: parsing, search, statistics and the review session.

Thin adapter over the same module operations the CLI uses. Session
endpoints are serialized by a lock; reads work on consistent snapshots.
"""
from __future__ import annotations

import os
import threading

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .parser import ParseError, nbest_parse, to_bracket
from .semantics import meaning_list
from .trainer import TrainerError
from .workspace import Engine

SCHEMA_VERSION = "1"


class ParseRequest(BaseModel):
    text: str
    n: int = 1


class QueryRequest(BaseModel):
    text: str
    k: int = 10


class SessionAction(BaseModel):
    version: str | None = None


def _meaning_payload(ml) -> dict:
    predicates = []
    for p in sorted(ml.predicates):
        if p.kind == "rel":
            predicates.append({"kind": "rel", "label": p.label,
                               "head": p.var, "dependent": p.var2})
        else:
            predicates.append({"kind": p.kind, "variable": p.var,
                               "synset": p.label})
    return {"lines": ml.lines(), "predicates": predicates}


def create_app(data_dir: str, engine: Engine | None = None) -> FastAPI:
    app = FastAPI(title="caption-ir", version=SCHEMA_VERSION)
    engine = engine or Engine(data_dir)
    session_lock = threading.Lock()

    @app.exception_handler(RequestValidationError)
    async def malformed(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={
            "schemaVersion": SCHEMA_VERSION,
            "error": "malformed request", "detail": exc.errors()})

    def unparsable(exc: ParseError):
        return JSONResponse(status_code=422, content={
            "schemaVersion": SCHEMA_VERSION, "error": "unparsable text",
            "diagnostic": str(exc),
            "prefixEnd": exc.prefix_end})

    def conflict(message: str):
        return JSONResponse(status_code=409, content={
            "schemaVersion": SCHEMA_VERSION, "error": message})

    def session_version(session) -> str:
        return f"{session.cursor}:{session.rank}"

    @app.post("/parse")
    def parse_endpoint(req: ParseRequest):
        if not req.text.strip() or req.n < 1:
            return JSONResponse(status_code=400, content={
                "schemaVersion": SCHEMA_VERSION,
                "error": "text must be nonempty and n >= 1"})
        tokens = engine.lexicon.tokenize(req.text)
        try:
            result = nbest_parse(engine.grammar, engine.lexicon,
                                 engine.store, tokens, req.n, engine.config)
        except ParseError as exc:
            return unparsable(exc)
        trees = []
        for tree in result.trees:
            ml = meaning_list(tree, engine.grammar, engine.lexicon)
            trees.append({"bracket": to_bracket(tree),
                          "score": tree.log_score,
                          "meaning": _meaning_payload(ml)})
        return {"schemaVersion": SCHEMA_VERSION, "tokens": tokens,
                "exhausted": result.exhausted, "trees": trees}

    @app.post("/query")
    def query_endpoint(req: QueryRequest):
        if not req.text.strip() or req.k < 1:
            return JSONResponse(status_code=400, content={
                "schemaVersion": SCHEMA_VERSION,
                "error": "text must be nonempty and k >= 1"})
        index = engine.load_index()
        try:
            matches = index.search_detailed(req.text, req.k, engine.grammar,
                                            engine.lexicon, engine.store,
                                            engine.config)
        except ParseError as exc:
            return unparsable(exc)
        results = []
        for m in matches:
            record = index.records[m.caption_id]
            results.append({
                "captionId": m.caption_id,
                "bindingCount": m.binding_count,
                "bestScore": m.best_score,
                "text": record.text,
                "matchedInterpretation": m.interpretation_index,
                "matchedPredicates": m.matched_lines,
                "interpretations": [_meaning_payload(ml)
                                    for ml in record.interpretations],
            })
        return {"schemaVersion": SCHEMA_VERSION, "results": results}

    @app.get("/session/next")
    def session_next():
        with session_lock:
            session = engine.open_session()
            proposal = session.propose()
            if proposal is None:
                return conflict("corpus exhausted")
            return {
                "schemaVersion": SCHEMA_VERSION,
                "captionId": proposal.caption_id,
                "captionText": proposal.caption_text,
                "rank": proposal.rank,
                "score": proposal.score,
                "totalCandidates": proposal.total_candidates,
                "tree": to_bracket(proposal.tree),
                "meaning": _meaning_payload(proposal.meaning),
                "version": session_version(session),
            }

    def _session_mutation(action: str, req: SessionAction):
        with session_lock:
            session = engine.open_session()
            if session.propose() is None:
                return conflict("no outstanding proposal")
            if req.version is not None and \
                    req.version != session_version(session):
                return conflict(f"stale proposal version {req.version}")
            try:
                if action == "accept":
                    session.accept()
                    engine.save_counts()
                    engine.save_grammar()
                elif action == "reject":
                    session.reject()
                else:
                    session.skip()
            except TrainerError as exc:
                return conflict(str(exc))
            return {"schemaVersion": SCHEMA_VERSION, "ok": True,
                    "action": action}

    @app.post("/session/accept")
    def session_accept(req: SessionAction = SessionAction()):
        return _session_mutation("accept", req)

    @app.post("/session/reject")
    def session_reject(req: SessionAction = SessionAction()):
        return _session_mutation("reject", req)

    @app.post("/session/skip")
    def session_skip(req: SessionAction = SessionAction()):
        return _session_mutation("skip", req)

    @app.get("/stats")
    def stats():
        session = engine.session
        index = engine.index
        payload = {
            "schemaVersion": SCHEMA_VERSION,
            "store": {
                "pairEntries": len(engine.store.pair_counts),
                "unaryEntries": len(engine.store.unary_counts),
                "totalInstances": engine.store.total_instances,
            },
            "grammarRules": len(engine.grammar.rules),
            "indexedCaptions": len(index.records) if index else 0,
        }
        if session is not None:
            payload["session"] = {
                "reviewed": session.total_reviewed,
                "firstTryAccepted": session.first_try_accepted,
                "firstTryAccuracy": session.first_try_accuracy,
                "cursor": session.cursor,
                "corpusSize": len(session.corpus),
                "exhausted": session.exhausted,
            }
        return payload

    ui_dir = os.path.join(os.path.dirname(os.path.dirname(
        os.path.dirname(os.path.abspath(__file__)))), "frontend", "dist")
    if os.path.isdir(ui_dir):
        from fastapi.staticfiles import StaticFiles
        app.mount("/ui", StaticFiles(directory=ui_dir, html=True),
                  name="ui")

    return app
