"""HTTP API for the designer workbench.

Sessions hold an engine plus a bounded undo stack of state snapshots; every
mutation per session is serialized (concurrent mutating requests get 409).
Wire shapes: workspace documents and trace JSON as defined by the document
and engine modules; rules travel as DSL text.
"""

from __future__ import annotations

import copy
import threading
import uuid
from collections import deque

from fastapi import Body, FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse

from .document import (
    apply_items,
    engine_from_json,
    parse_event_expr,
    replace_rules,
    rules_document,
    to_json_document,
    _class_names,
)
from .dsl import print_document, try_parse_document
from .engine import Engine, PropagationTrace
from .errors import DslParseError, GevoError, PropagationAborted
from .events import CANONICAL_EVENTS, Event
from .schema import ClassKind, GraphClass, NodeClass, RelationClass, validate_all


class Session:
    def __init__(self, engine: Engine, undo_depth: int):
        self.engine = engine
        self.undo: deque = deque(maxlen=undo_depth)
        self.traces: list[PropagationTrace] = []
        self.lock = threading.Lock()


class SessionStore:
    def __init__(self, undo_depth: int = 50):
        self.undo_depth = undo_depth
        self.sessions: dict[str, Session] = {}

    def create(self, engine: Engine) -> str:
        sid = uuid.uuid4().hex[:12]
        self.sessions[sid] = Session(engine, self.undo_depth)
        return sid


def _node_json(engine: Engine, rec: NodeClass) -> dict:
    return {
        "id": str(rec.id),
        "kind": "node",
        "afferent": [str(r) for r in rec.afferent],
        "efferent": [str(r) for r in rec.efferent],
        "members": [{"memberKind": m.member_kind, "name": m.name,
                     "signature": m.signature} for m in rec.members],
        "versionable": rec.versionable,
        "strategy": engine.resolve_strategy(rec.id),
    }


def _relation_json(engine: Engine, rec: RelationClass) -> dict:
    return {
        "id": str(rec.id),
        "kind": "relation",
        "nature": rec.nature,
        "source": None if rec.source is None else str(rec.source),
        "destination": None if rec.destination is None else str(rec.destination),
        "exclusive": rec.exclusive,
        "dependent": rec.dependent,
        "predominant": rec.predominant,
        "card": rec.card,
        "reverseCard": rec.reverse_card,
        "members": [{"memberKind": m.member_kind, "name": m.name,
                     "signature": m.signature} for m in rec.members],
        "strategy": engine.resolve_strategy(rec.id),
    }


def _graph_json(engine: Engine, graph: GraphClass) -> dict:
    ws = engine.ws
    return {
        "id": str(graph.id),
        "kind": "graph",
        "members": [{"memberKind": m.member_kind, "name": m.name,
                     "signature": m.signature} for m in graph.members],
        "strategy": engine.resolve_strategy(graph.id),
        "nodes": [_node_json(engine, ws.node(n)) for n in graph.nodes
                  if n in ws.classes],
        "relations": [_relation_json(engine, ws.relation(r))
                      for r in graph.relations if r in ws.classes],
    }


def _changed_ids(before: dict, after: dict) -> list[str]:
    changed = []
    for cid in before.keys() | after.keys():
        if before.get(cid) != after.get(cid):
            changed.append(cid)
    return sorted(str(c) for c in changed)


def create_app(initial_engine: Engine | None = None, undo_depth: int = 50) -> FastAPI:
    app = FastAPI(title="gevo workbench service", version="0.1.0")
    # the workbench is a local single-user tool (no auth by design); let a
    # browser client served from another local origin talk to it
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])
    store = SessionStore(undo_depth)
    if initial_engine is not None:
        store.create(initial_engine)

    def session_or_404(sid: str) -> Session | JSONResponse:
        session = store.sessions.get(sid)
        if session is None:
            return JSONResponse({"detail": f"unknown session {sid}"}, status_code=404)
        return session

    @app.get("/sessions")
    def list_sessions():
        return {"sessions": list(store.sessions)}

    @app.post("/sessions", status_code=201)
    async def create_session(request: Request):
        content_type = request.headers.get("content-type", "")
        try:
            if content_type.startswith("text/"):
                text = (await request.body()).decode("utf-8")
                doc, diagnostics = try_parse_document(text)
                if doc is None:
                    return JSONResponse(
                        {"diagnostics": [str(d) for d in diagnostics]},
                        status_code=400)
                engine = Engine()
                apply_items(engine, doc.items)
            else:
                data = await request.json()
                if isinstance(data, dict) and isinstance(data.get("dsl"), str):
                    doc, diagnostics = try_parse_document(data["dsl"])
                    if doc is None:
                        return JSONResponse(
                            {"diagnostics": [str(d) for d in diagnostics]},
                            status_code=400)
                    engine = Engine()
                    apply_items(engine, doc.items)
                else:
                    engine = engine_from_json(data)
        except (GevoError, ValueError, KeyError, TypeError) as err:
            diagnostics = (err.diagnostics if isinstance(err, DslParseError)
                           else [str(err)])
            return JSONResponse({"diagnostics": [str(d) for d in diagnostics]},
                                status_code=400)
        violations = validate_all(engine.ws)
        if violations:
            return JSONResponse(
                {"diagnostics": [str(v) for v in violations]}, status_code=400)
        sid = store.create(engine)
        return {"id": sid}

    @app.post("/sessions/{sid}/events")
    def apply_event(sid: str, body: dict = Body(...)):
        session = session_or_404(sid)
        if isinstance(session, JSONResponse):
            return session
        if not session.lock.acquire(blocking=False):
            return JSONResponse(
                {"detail": "another mutation is in flight"}, status_code=409)
        try:
            engine = session.engine
            try:
                event = _event_from_body(engine, body)
            except (GevoError, ValueError) as err:
                return JSONResponse({"detail": str(err)}, status_code=400)
            dry_run = bool(body.get("dryRun", False))
            before = copy.deepcopy(engine.ws.classes)
            try:
                if dry_run:
                    trace, after_ws = engine.dry_run(event)
                    view = Engine(after_ws, engine.versions)
                    view.strategies = engine.strategies
                    view.registry = engine.registry
                    view.rules = engine.rules
                    after = after_ws.classes
                else:
                    snapshot = (engine.ws.clone(), engine.versions.clone())
                    trace = engine.dispatch(event)
                    session.undo.append(snapshot)
                    session.traces.append(trace)
                    view = engine
                    after = engine.ws.classes
            except PropagationAborted as err:
                return JSONResponse(
                    {"detail": {"cause": str(err.cause),
                                "trace": err.trace.to_json()}},
                    status_code=422)
            changed = _changed_ids(before, after)
            affected = []
            for graph in view.ws.graphs():
                touched = {str(graph.id), *map(str, graph.nodes),
                           *map(str, graph.relations)}
                if touched & set(changed):
                    affected.append(_graph_json(view, graph))
            return {"trace": trace.to_json(), "changedClassIds": changed,
                    "resultingGraphs": affected}
        finally:
            session.lock.release()

    @app.post("/sessions/{sid}/undo")
    def undo(sid: str):
        session = session_or_404(sid)
        if isinstance(session, JSONResponse):
            return session
        if not session.lock.acquire(blocking=False):
            return JSONResponse(
                {"detail": "another mutation is in flight"}, status_code=409)
        try:
            if not session.undo:
                return JSONResponse({"detail": "nothing to undo"}, status_code=409)
            ws, versions = session.undo.pop()
            session.engine.ws = ws
            session.engine.versions = versions
            return {"restored": True, "classes": len(ws.classes)}
        finally:
            session.lock.release()

    @app.put("/sessions/{sid}/rules")
    async def update_rules(sid: str, request: Request):
        session = session_or_404(sid)
        if isinstance(session, JSONResponse):
            return session
        text = (await request.body()).decode("utf-8")
        engine = session.engine
        doc, diagnostics = try_parse_document(
            text, extra_classes=_class_names(engine.ws))
        if doc is None:
            return JSONResponse({"diagnostics": [str(d) for d in diagnostics]},
                                status_code=422)
        if not session.lock.acquire(blocking=False):
            return JSONResponse(
                {"detail": "another mutation is in flight"}, status_code=409)
        try:
            replace_rules(engine, doc)
        except GevoError as err:
            return JSONResponse({"diagnostics": [str(err)]}, status_code=422)
        finally:
            session.lock.release()
        return {"diagnostics": []}

    @app.get("/sessions/{sid}/graphs")
    def graphs(sid: str):
        session = session_or_404(sid)
        if isinstance(session, JSONResponse):
            return session
        engine = session.engine
        return {"graphs": [_graph_json(engine, g) for g in engine.ws.graphs()]}

    @app.get("/sessions/{sid}/graphs/{gid}")
    def graph(sid: str, gid: str):
        session = session_or_404(sid)
        if isinstance(session, JSONResponse):
            return session
        engine = session.engine
        try:
            rec = engine.ws.graph(
                engine.ws.resolve(gid, ClassKind.GRAPH))
        except GevoError:
            return JSONResponse({"detail": f"unknown graph {gid}"}, status_code=404)
        return _graph_json(engine, rec)

    @app.get("/sessions/{sid}/strategies")
    def strategies(sid: str):
        session = session_or_404(sid)
        if isinstance(session, JSONResponse):
            return session
        engine = session.engine
        return {
            "strategies": [{
                "id": s.id,
                "appliesTo": s.applies_to.value,
                "creationRules": s.creation_rules,
                "destructionRules": s.destruction_rules,
                "modificationRules": s.modification_rules,
            } for s in engine.strategies.values()],
            "bindings": {
                "perClass": {str(cid): sid_
                             for cid, sid_ in engine.registry.per_class.items()},
                "perKindDefault": {kind.value: sid_
                                   for kind, sid_ in engine.registry.per_kind.items()},
            },
        }

    @app.get("/sessions/{sid}/rules")
    def rules(sid: str):
        session = session_or_404(sid)
        if isinstance(session, JSONResponse):
            return session
        return PlainTextResponse(print_document(rules_document(session.engine)))

    @app.get("/sessions/{sid}/lineage")
    def lineage(sid: str):
        session = session_or_404(sid)
        if isinstance(session, JSONResponse):
            return session
        return {"lineage": [{"parent": str(p), "child": str(c)}
                            for p, c in session.engine.versions.lineage]}

    @app.get("/sessions/{sid}/traces/{n}")
    def trace(sid: str, n: int):
        session = session_or_404(sid)
        if isinstance(session, JSONResponse):
            return session
        if n < 1 or n > len(session.traces):
            return JSONResponse({"detail": f"no trace {n}"}, status_code=404)
        return {"trace": session.traces[n - 1].to_json()}

    @app.get("/sessions/{sid}/document")
    def document(sid: str):
        session = session_or_404(sid)
        if isinstance(session, JSONResponse):
            return session
        return to_json_document(session.engine)

    @app.get("/sessions/{sid}/events")
    def events(sid: str):
        session = session_or_404(sid)
        if isinstance(session, JSONResponse):
            return session
        engine = session.engine
        out = []
        for sig in [*CANONICAL_EVENTS.values(), *engine.user_events.values()]:
            out.append({
                "name": sig.name,
                "params": list(sig.params),
                "targetKind": None if sig.target_kind is None else sig.target_kind.value,
                "freshTarget": sig.fresh_target,
            })
        return {"events": out}

    return app


def _render_arg(value) -> str:
    if isinstance(value, (int, float)):
        return str(value)
    text = str(value)
    # identifier-shaped strings stay bare so class names resolve; anything
    # else travels as a quoted literal
    bare = text.replace("-", "").replace("_", "").replace("@", "")
    if text and (text[0].isalpha() or text[0] == "_") and bare.isalnum():
        return text
    return '"' + text.replace('"', '\\"') + '"'


def _event_from_body(engine: Engine, body: dict) -> Event:
    if isinstance(body.get("expr"), str):
        return parse_event_expr(engine, body["expr"])
    name = body.get("name")
    target = body.get("target")
    if not isinstance(name, str) or not isinstance(target, str):
        raise ValueError("event body needs 'expr' or 'name' and 'target'")
    args = body.get("args", [])
    if not isinstance(args, list):
        raise ValueError("'args' must be a list")
    rendered = ", ".join(_render_arg(a) for a in [target, *args])
    return parse_event_expr(engine, f"{name}({rendered})")
