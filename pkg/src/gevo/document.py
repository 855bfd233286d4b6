"""Workspace documents: building engines from parsed .gevo text and the JSON
document format (graphs/nodes/relations plus embedded DSL rule text)."""

from __future__ import annotations

import json

from .dsl import parse_document, print_document
from .dsl.ast import (
    BindDecl,
    EventDecl,
    GraphDecl,
    NodeDecl,
    RelationDecl,
    RuleDecl,
    RuleDocument,
    StrategyDecl,
)
from .dsl.lexer import tokenize
from .engine import Engine, PropagationTrace
from .errors import DslParseError, GevoError, UnknownClass
from .events import Event
from .rules import EvolutionRule, EventPattern, PropagationStrategy, bind_strategy
from .events import EventSig
from .schema import (
    ClassId,
    ClassKind,
    GraphClass,
    Member,
    NodeClass,
    RelationClass,
    Workspace,
)


# --------------------------------------------------------------------------
# Parsed document -> engine
# --------------------------------------------------------------------------

def _members(decls) -> list[Member]:
    return [Member(m.member_kind, m.name, m.signature) for m in decls]


def rules_from_document(doc: RuleDocument) -> list[EvolutionRule]:
    out = []
    for decl in doc.of_type(RuleDecl):
        pattern = EventPattern(decl.pattern_event, decl.pattern_params,
                               decl.pattern_kinds)
        out.append(EvolutionRule(decl.name, decl.kind, pattern, decl.condition,
                                 decl.actions, decl.direction, decl.mode))
    return out


_PHASES = (EventDecl, NodeDecl, RelationDecl, GraphDecl, RuleDecl,
           StrategyDecl, BindDecl)


def apply_items(engine: Engine, items) -> None:
    """Apply a parsed document's declarations to an engine.

    Declarations are applied in dependency phases (events, nodes, relations,
    graphs, rules, strategies, bindings) so forward references anywhere in
    the document resolve; within a phase, document order is kept.
    """
    ordered = [item for phase in _PHASES for item in items
               if isinstance(item, phase)]
    for item in ordered:
        if isinstance(item, EventDecl):
            engine.declare_event(EventSig(item.name, item.params, item.kind))
        elif isinstance(item, NodeDecl):
            engine.ws.register(NodeClass(
                id=ClassId(item.name, 0, ClassKind.NODE),
                members=_members(item.members), versionable=item.versionable))
        elif isinstance(item, RelationDecl):
            rel = RelationClass(
                id=ClassId(item.name, 0, ClassKind.RELATION),
                nature=item.nature,
                source=engine.ws.resolve(item.source, ClassKind.NODE),
                destination=engine.ws.resolve(item.destination, ClassKind.NODE),
                exclusive=item.exclusive, dependent=item.dependent,
                predominant=item.predominant, card=item.card,
                reverse_card=item.reverse_card, members=_members(item.members))
            engine.ws.register(rel)
            engine.ws.node(rel.source).efferent.append(rel.id)
            engine.ws.node(rel.destination).afferent.append(rel.id)
        elif isinstance(item, GraphDecl):
            gid = ClassId(item.name, 0, ClassKind.GRAPH)
            graph = GraphClass(
                id=gid,
                nodes=[engine.ws.resolve(n, ClassKind.NODE) for n in item.nodes],
                relations=[engine.ws.resolve(r, ClassKind.RELATION)
                           for r in item.relations],
                members=_members(item.members))
            engine.ws.register(graph)
            for member in [*graph.nodes, *graph.relations]:
                engine.ws._claim(gid, member)
        elif isinstance(item, RuleDecl):
            pattern = EventPattern(item.pattern_event, item.pattern_params,
                                   item.pattern_kinds)
            engine.add_rule(EvolutionRule(item.name, item.kind, pattern,
                                          item.condition, item.actions,
                                          item.direction, item.mode))
        elif isinstance(item, StrategyDecl):
            engine.add_strategy(PropagationStrategy(
                item.name, item.kind, list(item.creation),
                list(item.destruction), list(item.modification)))
        elif isinstance(item, BindDecl):
            if item.kind is not None:
                bind_strategy(engine.registry, engine.strategies, item.kind,
                              item.strategy)
            else:
                kind = engine.strategies[item.strategy].applies_to
                for target in item.targets:
                    cid = engine.ws.resolve(target, kind)
                    bind_strategy(engine.registry, engine.strategies, cid,
                                  item.strategy)


def engine_from_document(doc: RuleDocument) -> Engine:
    engine = Engine()
    apply_items(engine, doc.items)
    return engine


def engine_from_text(text: str) -> Engine:
    return engine_from_document(parse_document(text))


def replace_rules(engine: Engine, doc: RuleDocument) -> None:
    """Atomically replace the engine's rules, strategies, bindings and user
    events with the ones declared in a rules-only document."""
    staged = Engine(engine.ws, engine.versions, engine.max_entries)
    for item in doc.items:
        if isinstance(item, (NodeDecl, RelationDecl, GraphDecl)):
            raise GevoError("a rules document may not declare classes")
    apply_items(staged, doc.items)
    engine.rules = staged.rules
    engine.strategies = staged.strategies
    engine.registry = staged.registry
    engine.user_events = staged.user_events


def rules_document(engine: Engine) -> RuleDocument:
    """The engine's current rules/strategies/bindings as a document AST."""
    items: list = []
    for sig in engine.user_events.values():
        items.append(EventDecl(sig.name, sig.params, sig.target_kind))
    for rule in engine.rules.values():
        items.append(RuleDecl(rule.id, rule.applies_to, rule.pattern.name,
                              rule.pattern.params, rule.pattern.param_kinds,
                              rule.condition, rule.actions, rule.direction,
                              rule.mode))
    for strategy in engine.strategies.values():
        items.append(StrategyDecl(strategy.id, strategy.applies_to,
                                  tuple(strategy.creation_rules),
                                  tuple(strategy.destruction_rules),
                                  tuple(strategy.modification_rules)))
    for kind, sid in engine.registry.per_kind.items():
        items.append(BindDecl(sid, (), kind))
    by_strategy: dict[str, list[str]] = {}
    for cid, sid in engine.registry.per_class.items():
        if cid in engine.ws.classes:  # bindings of deleted classes are inert
            by_strategy.setdefault(sid, []).append(str(cid))
    for sid, targets in by_strategy.items():
        items.append(BindDecl(sid, tuple(targets), None))
    return RuleDocument(tuple(items))


# --------------------------------------------------------------------------
# JSON document format
# --------------------------------------------------------------------------

def _member_json(m: Member) -> dict:
    return {"memberKind": m.member_kind, "name": m.name, "signature": m.signature}


def _member_from_json(d: dict) -> Member:
    return Member(d["memberKind"], d["name"], d.get("signature", ""))


def to_json_document(engine: Engine) -> dict:
    ws = engine.ws
    doc = rules_document(engine)
    rule_items = tuple(i for i in doc.items if isinstance(i, (EventDecl, RuleDecl)))
    strategy_items = tuple(i for i in doc.items
                           if isinstance(i, (StrategyDecl, BindDecl)))
    return {
        "graphs": [{
            "id": str(g.id),
            "nodes": [str(n) for n in g.nodes],
            "relations": [str(r) for r in g.relations],
            "members": [_member_json(m) for m in g.members],
        } for g in ws.classes.values() if isinstance(g, GraphClass)],
        "nodes": [{
            "id": str(n.id),
            "afferent": [str(r) for r in n.afferent],
            "efferent": [str(r) for r in n.efferent],
            "members": [_member_json(m) for m in n.members],
            "versionable": n.versionable,
        } for n in ws.classes.values() if isinstance(n, NodeClass)],
        "relations": [{
            "id": str(r.id),
            "nature": r.nature,
            "source": None if r.source is None else str(r.source),
            "destination": None if r.destination is None else str(r.destination),
            "exclusive": r.exclusive,
            "dependent": r.dependent,
            "predominant": r.predominant,
            "card": r.card,
            "reverseCard": r.reverse_card,
            "members": [_member_json(m) for m in r.members],
        } for r in ws.classes.values() if isinstance(r, RelationClass)],
        "strategies": print_document(RuleDocument(strategy_items)),
        "rules": print_document(RuleDocument(rule_items)),
        "lineage": [{"parent": str(p), "child": str(c)}
                    for p, c in engine.versions.lineage],
    }


def engine_from_json(data: dict) -> Engine:
    engine = Engine()
    ws = engine.ws
    for nd in data.get("nodes", []):
        ws.register(NodeClass(
            id=ClassId.parse(nd["id"], ClassKind.NODE),
            afferent=[ClassId.parse(r, ClassKind.RELATION) for r in nd.get("afferent", [])],
            efferent=[ClassId.parse(r, ClassKind.RELATION) for r in nd.get("efferent", [])],
            members=[_member_from_json(m) for m in nd.get("members", [])],
            versionable=nd.get("versionable", True)))
    for rd in data.get("relations", []):
        ws.register(RelationClass(
            id=ClassId.parse(rd["id"], ClassKind.RELATION),
            nature=rd.get("nature", "association"),
            source=None if rd.get("source") is None
            else ClassId.parse(rd["source"], ClassKind.NODE),
            destination=None if rd.get("destination") is None
            else ClassId.parse(rd["destination"], ClassKind.NODE),
            exclusive=rd.get("exclusive", True),
            dependent=rd.get("dependent", False),
            predominant=rd.get("predominant", False),
            card=rd.get("card", 1),
            reverse_card=rd.get("reverseCard", 1),
            members=[_member_from_json(m) for m in rd.get("members", [])]))
    for gd in data.get("graphs", []):
        gid = ClassId.parse(gd["id"], ClassKind.GRAPH)
        graph = GraphClass(
            id=gid,
            nodes=[ClassId.parse(n, ClassKind.NODE) for n in gd.get("nodes", [])],
            relations=[ClassId.parse(r, ClassKind.RELATION)
                       for r in gd.get("relations", [])],
            members=[_member_from_json(m) for m in gd.get("members", [])])
        ws.register(graph)
        for member in [*graph.nodes, *graph.relations]:
            ws._claim(gid, member)
    known = _class_names(ws)
    combined = "\n".join(data.get(key, "") or "" for key in ("rules", "strategies"))
    if combined.strip():
        doc = parse_document(combined, extra_classes=known)
        apply_items(engine, doc.items)
    for edge in data.get("lineage", []):
        parent = _parse_any_id(ws, edge["parent"])
        child = _parse_any_id(ws, edge["child"])
        engine.versions.lineage.append((parent, child))
    return engine


def _class_names(ws: Workspace) -> dict[ClassKind, set[str]]:
    out: dict[ClassKind, set[str]] = {k: set() for k in ClassKind}
    for cid in ws.classes:
        out[cid.kind].add(cid.name)
    return out


def _parse_any_id(ws: Workspace, text: str) -> ClassId:
    for kind in ClassKind:
        cid = ClassId.parse(text, kind)
        if cid in ws.classes:
            return cid
    # lineage may reference since-deleted classes; default to node kind
    return ClassId.parse(text, ClassKind.NODE)


# --------------------------------------------------------------------------
# Loading and event expressions
# --------------------------------------------------------------------------

def load_engine_text(text: str, *, fmt: str) -> Engine:
    """Build an engine from document text; fmt is 'gevo' or 'json'."""
    if fmt == "json":
        return engine_from_json(json.loads(text))
    return engine_from_text(text)


def load_engine_file(path: str) -> Engine:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    fmt = "json" if path.endswith(".json") else "gevo"
    return load_engine_text(text, fmt=fmt)


def parse_event_expr(engine: Engine, text: str) -> Event:
    """Parse an event expression like delete-node(C2) against a workspace.

    Known class names resolve to their ids; an unknown target keeps the
    event's expected kind so dispatch can report unknown-target cleanly.
    """
    tokens = tokenize(text)
    pos = 0

    def need(type_, value=None):
        nonlocal pos
        tok = tokens[pos]
        if tok.type != type_ or (value is not None and tok.value != value):
            raise DslParseError([f"{tok.line}:{tok.col}: malformed event "
                                 f"expression near {tok.value or tok.type!r}"])
        pos += 1
        return tok

    name = need("NAME").value
    need("PUNCT", "(")
    raw_args = []
    while tokens[pos].type != "EOF" and not (
            tokens[pos].type == "PUNCT" and tokens[pos].value == ")"):
        tok = tokens[pos]
        pos += 1
        if tok.type in ("NAME", "STRING"):
            raw_args.append(tok.value)
        elif tok.type == "INT":
            raw_args.append(int(tok.value))
        else:
            raise DslParseError([f"{tok.line}:{tok.col}: unexpected "
                                 f"{tok.value!r} in event expression"])
        if tokens[pos].type == "PUNCT" and tokens[pos].value == ",":
            pos += 1
    need("PUNCT", ")")

    sig = engine.event_sig(name)

    def resolve_value(raw, expect_kind: ClassKind | None):
        if not isinstance(raw, str):
            return raw
        if raw in ("afferent", "efferent"):
            return raw
        hits = [cid for kind in ClassKind
                for cid in [ClassId.parse(raw, kind)] if cid in engine.ws.classes]
        if expect_kind is not None:
            for cid in hits:
                if cid.kind == expect_kind:
                    return cid
            return ClassId.parse(raw, expect_kind)
        if len(hits) == 1:
            return hits[0]
        if len(hits) > 1:
            raise UnknownClass(f"{raw} names classes of several kinds; "
                               f"use an unambiguous id")
        return raw

    if not raw_args:
        raise DslParseError(["event expression needs at least a target argument"])
    target_kind = sig.target_kind if sig is not None else None
    target = resolve_value(raw_args[0], target_kind or ClassKind.NODE)
    if not isinstance(target, ClassId):
        target = ClassId.parse(str(raw_args[0]), target_kind or ClassKind.NODE)
    args = tuple(resolve_value(a, None) for a in raw_args[1:])
    return Event(name, target, args)


def trace_json_text(trace: PropagationTrace) -> str:
    """Deterministic JSON rendering of a trace (same input, same bytes)."""
    return json.dumps(trace.to_json(), indent=2, sort_keys=True)
