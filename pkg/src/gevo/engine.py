"""The evolution manager: event interception, strategy resolution, rule
selection and execution, depth-first propagation with duplicate suppression,
and trace recording.

One dispatch is atomic: a raised event runs its entire subtree before the next
action of the raising rule, duplicate (name, target, args) triples are skipped,
and any primitive error rolls the workspace back to its pre-dispatch value.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field

from . import schema, versioning
from .errors import (
    DanglingVersionEndpoints,
    GevoError,
    PropagationAborted,
    RuleError,
    SchemaError,
    StepLimitExceeded,
    UnboundVariable,
    UnknownBuiltin,
    UnknownPrimitive,
)
from .events import CANONICAL_EVENTS, Event, EventSig, RelationView, id_of, key_of
from .rules import (
    BoolOp,
    Call,
    Compare,
    Direction,
    EvolutionRule,
    ExecAction,
    FieldAccess,
    ForEachAction,
    LetStep,
    Lit,
    Mode,
    Not,
    PropagationStrategy,
    RaiseAction,
    StrategyRegistry,
    Var,
)
from .schema import (
    AFFERENT,
    ClassId,
    ClassKind,
    EFFERENT,
    GraphClass,
    NodeClass,
    RelationClass,
    Workspace,
)

EXECUTED = "executed"
SKIPPED_DUPLICATE = "skipped-duplicate"
SKIPPED_CONDITION = "skipped-condition"
NO_STRATEGY = "no-strategy"
NO_MATCHING_RULE = "no-matching-rule"
UNKNOWN_TARGET = "unknown-target"


@dataclass
class TraceEntry:
    seq: int
    depth: int
    event: Event
    strategy_id: str | None
    rule_id: str | None
    status: str
    reason: str | None = None

    def to_json(self) -> dict:
        return {
            "seq": self.seq,
            "depth": self.depth,
            "event": self.event.to_json(),
            "strategy": self.strategy_id,
            "rule": self.rule_id,
            "status": self.status,
        }


@dataclass
class PropagationTrace:
    root_event: Event
    entries: list[TraceEntry] = field(default_factory=list)
    dedup_keys: set = field(default_factory=set)

    def executed(self) -> list[TraceEntry]:
        return [e for e in self.entries if e.status == EXECUTED]

    def executed_pairs(self) -> list[tuple[str, str]]:
        """(rule id, target display) pairs in execution order."""
        return [(e.rule_id, e.event.target.display()) for e in self.executed()]

    def to_json(self) -> list[dict]:
        return [e.to_json() for e in self.entries]


class _Reject:
    def __init__(self, reason: str):
        self.reason = reason


@dataclass
class _Frame:
    """Scope of one executing RESTRICTED relation rule: raises targeting a far
    extremity of the relation are suppressed anywhere in its subtree."""

    relation: ClassId
    endpoints: tuple
    near: ClassId | None


class _Ctx:
    def __init__(self, trace: PropagationTrace, max_entries: int):
        self.trace = trace
        self.max_entries = max_entries
        self.frames: list[_Frame] = []

    def add(self, depth: int, event: Event, strategy_id, rule_id, status,
            reason=None) -> TraceEntry:
        if len(self.trace.entries) >= self.max_entries:
            raise StepLimitExceeded(
                f"propagation exceeded {self.max_entries} trace entries")
        entry = TraceEntry(len(self.trace.entries) + 1, depth, event,
                           strategy_id, rule_id, status, reason)
        self.trace.entries.append(entry)
        return entry


class Engine:
    """Workspace + strategy registry + rule set + version lineage."""

    def __init__(self, ws: Workspace | None = None,
                 versions: versioning.VersionRegistry | None = None,
                 max_entries: int = 100_000):
        self.ws = ws if ws is not None else Workspace()
        self.versions = versions if versions is not None else versioning.VersionRegistry()
        self.strategies: dict[str, PropagationStrategy] = {}
        self.registry = StrategyRegistry()
        self.rules: dict[str, EvolutionRule] = {}
        self.user_events: dict[str, EventSig] = {}
        self.max_entries = max_entries
        # version-of calls that fell back to the original because no version
        # binding existed yet; interpreters use this to detect stale reads
        self.fallback_version_reads: set[ClassId] = set()

    # -- configuration -------------------------------------------------------

    def add_rule(self, rule: EvolutionRule) -> None:
        self.rules[rule.id] = rule

    def add_strategy(self, strategy: PropagationStrategy) -> None:
        self.strategies[strategy.id] = strategy

    def declare_event(self, sig: EventSig) -> None:
        self.user_events[sig.name] = sig

    def event_sig(self, name: str) -> EventSig | None:
        return CANONICAL_EVENTS.get(name) or self.user_events.get(name)

    def event_names(self) -> list[str]:
        return [*CANONICAL_EVENTS, *self.user_events]

    def clone(self) -> "Engine":
        twin = Engine(self.ws.clone(), self.versions.clone(), self.max_entries)
        twin.strategies = {k: copy.deepcopy(v) for k, v in self.strategies.items()}
        twin.registry = copy.deepcopy(self.registry)
        twin.rules = dict(self.rules)
        twin.user_events = dict(self.user_events)
        return twin

    # -- strategy resolution and rule selection --------------------------------

    def resolve_strategy(self, cid: ClassId) -> str | None:
        return self.registry.resolve(cid)

    def select_rules(self, strategy: PropagationStrategy, event: Event) -> list[EvolutionRule]:
        """Rules of the strategy matching the event name, arity, and the
        payload-kind annotations of the pattern, in category order."""
        values = event.values()
        out = []
        for rid in strategy.rule_ids():
            rule = self.rules.get(rid)
            if rule is None or rule.pattern.name != event.name:
                continue
            if rule.pattern.arity != len(values):
                continue
            ok = True
            for value, want in zip(values, rule.pattern.param_kinds):
                if want is None:
                    continue
                vid = id_of(value)
                if vid is None or vid.kind != want:
                    ok = False
                    break
            if ok:
                out.append(rule)
        return out

    def check_mode_direction(self, rule: EvolutionRule, event: Event) -> bool:
        """Whether a relation rule admits this event given its direction and
        the extremity the event propagates from (when it carries one)."""
        if rule.applies_to != ClassKind.RELATION:
            return True
        origin = self._origin_of(event)
        if origin is None:
            return True
        rel = self.ws.classes.get(event.target)
        if not isinstance(rel, RelationClass):
            return True
        from_source = origin == rel.source
        from_dest = origin == rel.destination
        if not (from_source or from_dest):
            return True
        direction = rule.effective_direction()
        if direction == Direction.FORWARD:
            return from_source
        if direction == Direction.BACKWARD:
            return from_dest
        if direction == Direction.BIDIRECTIONAL:
            return True
        return False  # NONE never fires from an extremity

    def _origin_of(self, event: Event) -> ClassId | None:
        sig = self.event_sig(event.name)
        if sig is None or sig.origin_index is None:
            return None
        if sig.origin_index >= len(event.args):
            return None
        return id_of(event.args[sig.origin_index])

    # -- dispatch ---------------------------------------------------------------

    def dispatch(self, event: Event) -> PropagationTrace:
        """Run one full propagation; atomic with rollback on any error."""
        ws_snapshot = self.ws.clone()
        vr_snapshot = self.versions.clone()
        registry_snapshot = copy.deepcopy(self.registry)
        self.versions.begin_propagation()
        self.fallback_version_reads.clear()
        trace = PropagationTrace(root_event=event)
        ctx = _Ctx(trace, self.max_entries)
        try:
            self._dispatch(event, 0, ctx)
            self._commit()
        except GevoError as err:
            self.ws = ws_snapshot
            self.versions = vr_snapshot
            self.registry = registry_snapshot
            raise PropagationAborted(err, trace) from err
        return trace

    def dry_run(self, event: Event) -> tuple[PropagationTrace, Workspace]:
        """Same trace and resulting state as dispatch, on a throwaway copy."""
        twin = self.clone()
        trace = twin.dispatch(event)
        return trace, twin.ws

    def _commit(self) -> None:
        for parent, child in self.versions.current.items():
            rec = self.ws.classes.get(child)
            if isinstance(rec, RelationClass) and (rec.source is None or rec.destination is None):
                raise DanglingVersionEndpoints(
                    f"derived relation {child} committed without endpoints")
        versioning.finalize_version_graphs(self.ws, self.versions)
        self.versions.current.clear()

    def _dispatch(self, event: Event, depth: int, ctx: _Ctx) -> None:
        key = event.key()
        if key in ctx.trace.dedup_keys:
            sid, rid = self._skip_info(event)
            ctx.add(depth, event, sid, rid, SKIPPED_DUPLICATE)
            return
        ctx.trace.dedup_keys.add(key)

        sig = self.event_sig(event.name)
        if event.target not in self.ws.classes:
            if not (sig is not None and sig.fresh_target):
                ctx.add(depth, event, None, None, UNKNOWN_TARGET)
                return

        sid = self.resolve_strategy(event.target)
        if sid is None:
            ctx.add(depth, event, None, None, NO_STRATEGY)
            return
        strategy = self.strategies[sid]

        rules = self.select_rules(strategy, event)
        if not rules:
            ctx.add(depth, event, sid, None, NO_MATCHING_RULE)
            return

        for rule in rules:
            if not self.check_mode_direction(rule, event):
                ctx.add(depth, event, sid, rule.id, SKIPPED_CONDITION,
                        reason="direction")
                continue
            outcome = self.eval_condition(rule, event)
            if isinstance(outcome, _Reject):
                ctx.add(depth, event, sid, rule.id, SKIPPED_CONDITION,
                        reason=outcome.reason)
                continue
            ctx.add(depth, event, sid, rule.id, EXECUTED)
            frame = self._push_frame(rule, event, ctx)
            try:
                self._run_actions(rule.actions, outcome, depth, ctx)
            finally:
                if frame is not None:
                    ctx.frames.remove(frame)

    def _push_frame(self, rule: EvolutionRule, event: Event, ctx: _Ctx) -> _Frame | None:
        if rule.applies_to != ClassKind.RELATION:
            return None
        if rule.effective_mode() != Mode.RESTRICTED:
            return None
        rel = self.ws.classes.get(event.target)
        if not isinstance(rel, RelationClass):
            return None
        endpoints = tuple(e for e in (rel.source, rel.destination) if e is not None)
        frame = _Frame(event.target, endpoints, self._origin_of(event))
        ctx.frames.append(frame)
        return frame

    def _skip_info(self, event: Event):
        """Best-effort (strategy, rule) names for a skipped entry's display."""
        try:
            if event.target not in self.ws.classes:
                sig = self.event_sig(event.name)
                if not (sig is not None and sig.fresh_target):
                    return None, None
            sid = self.resolve_strategy(event.target)
            if sid is None:
                return None, None
            rules = self.select_rules(self.strategies[sid], event)
            return sid, rules[0].id if rules else None
        except GevoError:
            return None, None

    # -- condition evaluation ------------------------------------------------

    def eval_condition(self, rule: EvolutionRule, event: Event):
        """Bind the event pattern, run let/when steps in order; returns the
        environment, or a rejection carrying the first failing guard."""
        values = event.values()
        if len(values) != rule.pattern.arity:
            raise RuleError(
                f"rule {rule.id}: event {event.name} arity {len(values)} does "
                f"not match pattern arity {rule.pattern.arity}")
        env = dict(zip(rule.pattern.params, values))
        for step in rule.condition:
            if isinstance(step, LetStep):
                try:
                    env[step.var] = self.eval_expr(step.expr, env)
                except SchemaError as err:
                    return _Reject(f"let {step.var}: {err}")
                except (UnboundVariable, UnknownBuiltin) as err:
                    raise type(err)(f"rule {rule.id}: {err}") from err
            else:
                try:
                    value = self.eval_expr(step.guard, env)
                except SchemaError as err:
                    return _Reject(f"guard: {err}")
                except (UnboundVariable, UnknownBuiltin) as err:
                    raise type(err)(f"rule {rule.id}: {err}") from err
                if not isinstance(value, bool):
                    raise RuleError(
                        f"rule {rule.id}: guard evaluated to non-boolean {value!r}")
                if not value:
                    return _Reject(f"guard {self._describe(step.guard)}")
        return env

    @staticmethod
    def _describe(expr) -> str:
        if isinstance(expr, Call):
            return f"{expr.func}(...)"
        if isinstance(expr, Not):
            return f"not {Engine._describe(expr.operand)}"
        if isinstance(expr, Var):
            return expr.name
        return type(expr).__name__.lower()

    # -- action execution ------------------------------------------------------

    def _run_actions(self, actions, env: dict, depth: int, ctx: _Ctx) -> None:
        for action in actions:
            if isinstance(action, RaiseAction):
                self._raise(action, env, depth, ctx)
            elif isinstance(action, ExecAction):
                args = [self.eval_expr(a, env) for a in action.args]
                self.run_primitive(action.primitive, args)
            elif isinstance(action, ForEachAction):
                collection = self.eval_expr(action.collection, env)
                if not isinstance(collection, list):
                    raise RuleError(
                        f"for-each over non-collection {collection!r}")
                for item in collection:
                    inner = dict(env)
                    inner[action.var] = item
                    self._run_actions(action.body, inner, depth, ctx)
            else:
                raise RuleError(f"unknown action node {action!r}")

    def _raise(self, action: RaiseAction, env: dict, depth: int, ctx: _Ctx) -> None:
        sig = self.event_sig(action.event)
        if sig is None:
            raise UnknownPrimitive(f"raise of undeclared event {action.event!r}")
        values = [self.eval_expr(a, env) for a in action.args]
        if len(values) != sig.arity:
            raise RuleError(
                f"raise {action.event}: expected {sig.arity} args, got {len(values)}")
        event = self._make_event(sig, values)

        for frame in ctx.frames:
            if event.target in frame.endpoints and event.target != frame.near:
                ctx.add(depth + 1, event, None, None, SKIPPED_CONDITION,
                        reason="mode-restricted")
                return
        self._dispatch(event, depth + 1, ctx)

    def _make_event(self, sig: EventSig, values: list) -> Event:
        head, args = values[0], tuple(values[1:])
        tid = id_of(head)
        payload = None
        if tid is None:
            if isinstance(head, str) and sig.target_kind is not None:
                tid = ClassId(head, 0, sig.target_kind)
            else:
                raise RuleError(
                    f"event {sig.name}: target {head!r} is not a class value")
        if isinstance(head, RelationView):
            payload = head
        return Event(sig.name, tid, args, payload)

    # -- expression evaluation --------------------------------------------------

    def eval_expr(self, expr, env: dict):
        if isinstance(expr, Lit):
            return expr.value
        if isinstance(expr, Var):
            if expr.name not in env:
                raise UnboundVariable(f"unbound variable {expr.name!r}")
            return env[expr.name]
        if isinstance(expr, Not):
            value = self.eval_expr(expr.operand, env)
            if not isinstance(value, bool):
                raise RuleError(f"'not' applied to non-boolean {value!r}")
            return not value
        if isinstance(expr, BoolOp):
            left = self.eval_expr(expr.left, env)
            if not isinstance(left, bool):
                raise RuleError(f"{expr.op!r} applied to non-boolean {left!r}")
            if expr.op == "and" and not left:
                return False
            if expr.op == "or" and left:
                return True
            right = self.eval_expr(expr.right, env)
            if not isinstance(right, bool):
                raise RuleError(f"{expr.op!r} applied to non-boolean {right!r}")
            return right
        if isinstance(expr, Compare):
            left = key_of(self.eval_expr(expr.left, env))
            right = key_of(self.eval_expr(expr.right, env))
            return (left == right) if expr.op == "==" else (left != right)
        if isinstance(expr, FieldAccess):
            return self._field(self.eval_expr(expr.base, env), expr.name)
        if isinstance(expr, Call):
            return self._builtin(expr.func, [self.eval_expr(a, env) for a in expr.args])
        raise RuleError(f"unknown expression node {expr!r}")

    def _snapshot(self, rel: RelationClass) -> RelationView:
        return RelationView(rel.id, rel.nature, rel.source, rel.destination,
                            rel.exclusive, rel.dependent, rel.predominant,
                            rel.card, rel.reverse_card)

    def _field(self, value, name: str):
        if isinstance(value, RelationView):
            mapping = {
                "name": value.id.name, "version": value.id.version,
                "nature": value.nature, "source": value.source,
                "destination": value.destination, "exclusive": value.exclusive,
                "dependent": value.dependent, "predominant": value.predominant,
                "card": value.card, "reverse-card": value.reverse_card,
            }
            if name in mapping:
                return mapping[name]
            raise UnknownBuiltin(f"relation value has no field {name!r}")
        cid = id_of(value)
        if cid is None:
            raise RuleError(f"field access .{name} on non-class value {value!r}")
        if name == "name":
            return cid.name
        if name == "version":
            return cid.version
        rec = self.ws.get(cid)
        if isinstance(rec, RelationClass):
            return self._field(self._snapshot(rec), name)
        if isinstance(rec, NodeClass):
            if name == AFFERENT:
                return [self._snapshot(self.ws.relation(r)) for r in rec.afferent]
            if name == EFFERENT:
                return [self._snapshot(self.ws.relation(r)) for r in rec.efferent]
            if name == "versionable":
                return rec.versionable
            raise UnknownBuiltin(f"node class has no field {name!r}")
        if isinstance(rec, GraphClass):
            if name == "nodes":
                return list(rec.nodes)
            if name == "relations":
                return list(rec.relations)
            raise UnknownBuiltin(f"graph class has no field {name!r}")
        raise UnknownBuiltin(f"no field {name!r}")

    def _builtin(self, func: str, args: list):
        table = {
            "belong": self._bi_belong,
            "shared": self._bi_shared,
            "versionable": self._bi_versionable,
            "version-exists": self._bi_version_exists,
            "version-of": self._bi_version_of,
            "graph-of": self._bi_graph_of,
            "afferent": self._bi_afferent,
            "efferent": self._bi_efferent,
            "far": self._bi_far,
            "bridge": self._bi_bridge,
            "propagable-relations": self._bi_propagable,
        }
        fn = table.get(func)
        if fn is None:
            raise UnknownBuiltin(f"unknown builtin {func!r}")
        return fn(*args)

    def _need_id(self, value, what="class") -> ClassId:
        cid = id_of(value)
        if cid is None:
            raise RuleError(f"expected a {what} value, got {value!r}")
        return cid

    def _bi_belong(self, x, container) -> bool:
        xid = self._need_id(x)
        if isinstance(container, list):
            return any(key_of(v) == key_of(xid) for v in container)
        gid = self._need_id(container, "graph")
        graph = self.ws.graph(gid)
        return xid in graph.nodes or xid in graph.relations

    def _bi_shared(self, n) -> bool:
        return schema.shared(self.ws, self._need_id(n, "node"))

    def _bi_versionable(self, n) -> bool:
        return self.ws.node(self._need_id(n, "node")).versionable

    def _bi_version_exists(self, x) -> bool:
        return self._need_id(x) in self.versions.current

    def _bi_version_of(self, x):
        cid = self._need_id(x)
        if cid not in self.versions.current:
            self.fallback_version_reads.add(cid)
            return cid
        return self.versions.current[cid]

    def _bi_graph_of(self, x) -> ClassId:
        return schema.graph_of(self.ws, self._need_id(x))

    def _bi_afferent(self, n) -> list:
        node = self.ws.node(self._need_id(n, "node"))
        return [self._snapshot(self.ws.relation(r)) for r in node.afferent]

    def _bi_efferent(self, n) -> list:
        node = self.ws.node(self._need_id(n, "node"))
        return [self._snapshot(self.ws.relation(r)) for r in node.efferent]

    def _bi_far(self, r, n) -> ClassId:
        rel = r if isinstance(r, RelationView) else self._snapshot(
            self.ws.relation(self._need_id(r, "relation")))
        nid = self._need_id(n, "node")
        if rel.source == nid:
            return rel.destination
        if rel.destination == nid:
            return rel.source
        raise RuleError(f"{nid} is not an extremity of {rel.id}")

    def _bi_bridge(self, af, ef) -> list:
        """Descriptor of the relation that re-links a deleted node's unique
        predecessor to its unique successor; empty unless exactly 1-in/1-out."""
        if not (isinstance(af, list) and isinstance(ef, list)):
            raise RuleError("bridge expects two relation collections")
        if len(af) != 1 or len(ef) != 1:
            return []
        a, e = af[0], ef[0]
        if not (isinstance(a, RelationView) and isinstance(e, RelationView)):
            raise RuleError("bridge expects relation snapshots")
        if a.id == e.id:
            return []  # a self-loop is not a chain
        return [RelationView(a.id, a.nature, a.source, e.destination, a.exclusive,
                             a.dependent, a.predominant, a.card, a.reverse_card)]

    def _bi_propagable(self, n) -> list:
        """Incident relations whose version rule admits propagation from this
        node's side and runs in EXTENDED mode."""
        nid = self._need_id(n, "node")
        node = self.ws.node(nid)
        out, seen = [], set()
        for rid in [*node.afferent, *node.efferent]:
            if rid in seen:
                continue
            seen.add(rid)
            rel = self.ws.relation(rid)
            rule = self._version_rule_of(rid)
            if rule is None or rule.effective_mode() != Mode.EXTENDED:
                continue
            direction = rule.effective_direction()
            from_source = rel.source == nid
            from_dest = rel.destination == nid
            admitted = (
                (direction == Direction.FORWARD and from_source)
                or (direction == Direction.BACKWARD and from_dest)
                or (direction == Direction.BIDIRECTIONAL and (from_source or from_dest))
            )
            if admitted:
                out.append(self._snapshot(rel))
        return out

    def _version_rule_of(self, rid: ClassId) -> EvolutionRule | None:
        sid = self.resolve_strategy(rid)
        if sid is None:
            return None
        for rule_id in self.strategies[sid].rule_ids():
            rule = self.rules.get(rule_id)
            if rule is not None and rule.pattern.name == "create-version-relation":
                return rule
        return None

    # -- raw primitive adapters ----------------------------------------------

    def run_primitive(self, name: str, args: list) -> None:
        """Execute one raw workspace/versioning primitive from a rule action."""
        handler = _PRIMITIVES.get(name)
        if handler is None:
            raise UnknownPrimitive(f"unknown primitive {name!r}")
        handler(self, args)

    def _fresh_id(self, value, kind: ClassKind) -> ClassId:
        if isinstance(value, str):
            return ClassId(value, 0, kind)
        return self._need_id(value)

    def _p_add_node(self, args):
        nid = self._fresh_id(args[0], ClassKind.NODE)
        gid = self._need_id(args[1], "graph")
        schema.exec_add_node(self.ws, gid, NodeClass(id=nid))

    def _p_delete_node(self, args):
        schema.exec_delete_node(self.ws, self._need_id(args[0], "node"))

    def _p_instantiate_relation(self, args):
        head, n1, n2, g = args
        src = self._need_id(n1, "node")
        dst = self._need_id(n2, "node")
        gid = self._need_id(g, "graph")
        if isinstance(head, RelationView):
            spec = RelationClass(
                id=head.id, nature=head.nature, source=src, destination=dst,
                exclusive=head.exclusive, dependent=head.dependent,
                predominant=head.predominant, card=head.card,
                reverse_card=head.reverse_card)
        else:
            spec = RelationClass(id=self._fresh_id(head, ClassKind.RELATION),
                                 source=src, destination=dst)
        schema.exec_add_relation(self.ws, gid, spec)

    def _p_delete_relation(self, args):
        schema.exec_delete_relation(self.ws, self._need_id(args[0], "relation"))

    def _side(self, value) -> str:
        if value not in (AFFERENT, EFFERENT):
            raise RuleError(f"expected afferent or efferent, got {value!r}")
        return value

    def _p_detach(self, args):
        schema.exec_detach(self.ws, self._need_id(args[0], "node"),
                           self._side(args[1]), self._need_id(args[2], "relation"))

    def _p_attach(self, args):
        schema.exec_attach(self.ws, self._need_id(args[0], "node"),
                           self._side(args[1]), self._need_id(args[2], "relation"))

    def _p_rename_class(self, args):
        cid = self._need_id(args[0])
        new = schema.exec_rename_class(self.ws, cid, str(args[1]))
        self.registry.rename_class(cid, new)
        self.versions.rename_class(cid, new)

    def _p_create_version_node(self, args):
        versioning.execute_create_version_node(
            self.ws, self.versions, self._need_id(args[0], "node"))

    def _p_derive_relation(self, args):
        versioning.derive_relation(self.ws, self.versions,
                                   self._need_id(args[0], "relation"))

    def _p_assign_version_endpoints(self, args):
        versioning.assign_version_endpoints(
            self.ws, self.versions, self._need_id(args[0], "relation"),
            self._need_id(args[1], "node"), self._need_id(args[2], "node"))

    def _p_create_version_graph(self, args):
        versioning.execute_create_version_graph(
            self.ws, self.versions, self._need_id(args[0], "graph"))


def _member_primitive(kind: str, op: str):
    def add(engine: Engine, args):
        sig = str(args[2]) if len(args) > 2 else ""
        schema.exec_add_member(engine.ws, engine._need_id(args[0]), kind,
                               str(args[1]), sig)

    def delete(engine: Engine, args):
        schema.exec_delete_member(engine.ws, engine._need_id(args[0]), kind,
                                  str(args[1]))

    def rename(engine: Engine, args):
        schema.exec_rename_member(engine.ws, engine._need_id(args[0]), kind,
                                  str(args[1]), str(args[2]))

    return {"add": add, "delete": delete, "rename": rename}[op]


_PRIMITIVES = {
    "add-node": Engine._p_add_node,
    "delete-node": Engine._p_delete_node,
    "instantiate-relation": Engine._p_instantiate_relation,
    "delete-relation": Engine._p_delete_relation,
    "detach": Engine._p_detach,
    "attach": Engine._p_attach,
    "rename-class": Engine._p_rename_class,
    "add-attribute": _member_primitive("attribute", "add"),
    "delete-attribute": _member_primitive("attribute", "delete"),
    "rename-attribute": _member_primitive("attribute", "rename"),
    "add-method": _member_primitive("method", "add"),
    "delete-method": _member_primitive("method", "delete"),
    "rename-method": _member_primitive("method", "rename"),
    "create-version-node": Engine._p_create_version_node,
    "derive-relation": Engine._p_derive_relation,
    "assign-version-endpoints": Engine._p_assign_version_endpoints,
    "create-version-graph": Engine._p_create_version_graph,
}

PRIMITIVE_NAMES = frozenset(_PRIMITIVES)

PRIMITIVE_ARITIES: dict[str, tuple[int, ...]] = {
    "add-node": (2,),
    "delete-node": (1,),
    "instantiate-relation": (4,),
    "delete-relation": (1,),
    "detach": (3,),
    "attach": (3,),
    "rename-class": (2,),
    "add-attribute": (2, 3),
    "delete-attribute": (2,),
    "rename-attribute": (3,),
    "add-method": (2, 3),
    "delete-method": (2,),
    "rename-method": (3,),
    "create-version-node": (1,),
    "derive-relation": (1,),
    "assign-version-endpoints": (3,),
    "create-version-graph": (1,),
}

BUILTIN_NAMES = frozenset([
    "belong", "shared", "versionable", "version-exists", "version-of",
    "graph-of", "afferent", "efferent", "far", "bridge",
    "propagable-relations",
])

