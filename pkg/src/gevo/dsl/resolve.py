"""Whole-document static checks: duplicate definitions, cross-references,
event/primitive names and arities, and variable binding in rule bodies."""

from __future__ import annotations

from ..engine import BUILTIN_NAMES, PRIMITIVE_ARITIES
from ..events import CANONICAL_EVENTS
from ..schema import ClassKind
from ..rules import (
    BoolOp,
    Call,
    Compare,
    ExecAction,
    FieldAccess,
    ForEachAction,
    LetStep,
    Lit,
    Not,
    RaiseAction,
    Var,
    WhenStep,
)
from .ast import (
    BindDecl,
    Diagnostic,
    EventDecl,
    GraphDecl,
    NodeDecl,
    RelationDecl,
    RuleDecl,
    RuleDocument,
    StrategyDecl,
)


def _diag(message: str, code: str = "resolve") -> Diagnostic:
    return Diagnostic(0, 0, message, code)


def resolve_document(doc: RuleDocument, extra_classes=None) -> list[Diagnostic]:
    out: list[Diagnostic] = []
    extra_classes = extra_classes or {}

    events = dict(CANONICAL_EVENTS)
    declared_events: dict[str, EventDecl] = {}
    for decl in doc.of_type(EventDecl):
        if decl.name in events or decl.name in declared_events:
            out.append(_diag(f"duplicate event declaration {decl.name!r}",
                             "duplicate-definition"))
        else:
            declared_events[decl.name] = decl

    def event_arity(name: str) -> int | None:
        if name in declared_events:
            return len(declared_events[name].params)
        if name in events:
            return events[name].arity
        return None

    nodes = {d.name for d in doc.of_type(NodeDecl)} | set(
        extra_classes.get(ClassKind.NODE, ()))
    relations = {d.name for d in doc.of_type(RelationDecl)} | set(
        extra_classes.get(ClassKind.RELATION, ()))
    graphs = {d.name for d in doc.of_type(GraphDecl)} | set(
        extra_classes.get(ClassKind.GRAPH, ()))
    for kind_name, names, decls in (
            ("node", nodes, doc.of_type(NodeDecl)),
            ("relation", relations, doc.of_type(RelationDecl)),
            ("graph", graphs, doc.of_type(GraphDecl))):
        seen = set()
        for d in decls:
            if d.name in seen:
                out.append(_diag(f"duplicate {kind_name} declaration {d.name!r}",
                                 "duplicate-definition"))
            seen.add(d.name)

    for rel in doc.of_type(RelationDecl):
        for endpoint in (rel.source, rel.destination):
            if endpoint not in nodes:
                out.append(_diag(
                    f"relation {rel.name} references undeclared node {endpoint!r}",
                    "unresolved-reference"))

    for graph in doc.of_type(GraphDecl):
        for n in graph.nodes:
            if n not in nodes:
                out.append(_diag(f"graph {graph.name} lists undeclared node {n!r}",
                                 "unresolved-reference"))
        for r in graph.relations:
            if r not in relations:
                out.append(_diag(f"graph {graph.name} lists undeclared relation {r!r}",
                                 "unresolved-reference"))

    rules = {}
    for rule in doc.of_type(RuleDecl):
        if rule.name in rules:
            out.append(_diag(f"duplicate rule {rule.name!r}", "duplicate-definition"))
        rules[rule.name] = rule
        out.extend(_check_rule(rule, event_arity))

    strategies = {}
    for strategy in doc.of_type(StrategyDecl):
        if strategy.name in strategies:
            out.append(_diag(f"duplicate strategy {strategy.name!r}",
                             "duplicate-definition"))
        strategies[strategy.name] = strategy
        for rid in (*strategy.creation, *strategy.destruction, *strategy.modification):
            rule = rules.get(rid)
            if rule is None:
                out.append(_diag(f"strategy {strategy.name} references unknown "
                                 f"rule {rid!r}", "unresolved-reference"))
            elif rule.kind != strategy.kind:
                out.append(_diag(
                    f"strategy {strategy.name} ({strategy.kind.value}) cannot "
                    f"contain rule {rid} ({rule.kind.value})", "kind-mismatch"))

    class_names = {ClassKind.NODE: nodes, ClassKind.RELATION: relations,
                   ClassKind.GRAPH: graphs}
    for bind in doc.of_type(BindDecl):
        strategy = strategies.get(bind.strategy)
        if strategy is None:
            out.append(_diag(f"bind references unknown strategy {bind.strategy!r}",
                             "unresolved-reference"))
            continue
        if bind.kind is not None:
            if bind.kind != strategy.kind:
                out.append(_diag(
                    f"cannot bind {strategy.kind.value} strategy {bind.strategy} "
                    f"as {bind.kind.value} default", "kind-mismatch"))
            continue
        pool = class_names[strategy.kind]
        for target in bind.targets:
            base = target.split("@v")[0]
            if base not in pool:
                out.append(_diag(
                    f"bind of {bind.strategy} targets undeclared "
                    f"{strategy.kind.value} {target!r}", "unresolved-reference"))
    return out


def _check_rule(rule: RuleDecl, event_arity) -> list[Diagnostic]:
    out: list[Diagnostic] = []
    arity = event_arity(rule.pattern_event)
    if arity is None:
        out.append(_diag(f"rule {rule.name} matches undeclared event "
                         f"{rule.pattern_event!r}", "unresolved-reference"))
    elif arity != len(rule.pattern_params):
        out.append(_diag(
            f"rule {rule.name}: event {rule.pattern_event} has arity {arity}, "
            f"pattern has {len(rule.pattern_params)}", "arity-mismatch"))

    env = set(rule.pattern_params)

    def check_expr(expr) -> None:
        if isinstance(expr, Var):
            if expr.name not in env:
                out.append(_diag(f"rule {rule.name}: unbound variable "
                                 f"{expr.name!r}", "unbound-variable"))
        elif isinstance(expr, Lit):
            pass
        elif isinstance(expr, Not):
            check_expr(expr.operand)
        elif isinstance(expr, (BoolOp, Compare)):
            check_expr(expr.left)
            check_expr(expr.right)
        elif isinstance(expr, FieldAccess):
            check_expr(expr.base)
        elif isinstance(expr, Call):
            if expr.func not in BUILTIN_NAMES:
                out.append(_diag(f"rule {rule.name}: unknown builtin "
                                 f"{expr.func!r}", "unresolved-reference"))
            for a in expr.args:
                check_expr(a)

    for step in rule.condition:
        if isinstance(step, LetStep):
            check_expr(step.expr)
            env.add(step.var)
        elif isinstance(step, WhenStep):
            check_expr(step.guard)

    def check_actions(actions, scope: set) -> None:
        nonlocal env
        saved = env
        env = scope
        try:
            for action in actions:
                if isinstance(action, RaiseAction):
                    arity_ = event_arity(action.event)
                    if arity_ is None:
                        out.append(_diag(
                            f"rule {rule.name} raises undeclared event "
                            f"{action.event!r}", "unresolved-reference"))
                    elif arity_ != len(action.args):
                        out.append(_diag(
                            f"rule {rule.name}: raise {action.event} expects "
                            f"{arity_} args, got {len(action.args)}", "arity-mismatch"))
                    for a in action.args:
                        check_expr(a)
                elif isinstance(action, ExecAction):
                    arities = PRIMITIVE_ARITIES.get(action.primitive)
                    if arities is None:
                        out.append(_diag(
                            f"rule {rule.name} execs unknown primitive "
                            f"{action.primitive!r}", "unresolved-reference"))
                    elif len(action.args) not in arities:
                        out.append(_diag(
                            f"rule {rule.name}: exec {action.primitive} expects "
                            f"{'/'.join(map(str, arities))} args, got "
                            f"{len(action.args)}", "arity-mismatch"))
                    for a in action.args:
                        check_expr(a)
                elif isinstance(action, ForEachAction):
                    check_expr(action.collection)
                    check_actions(action.body, scope | {action.var})
        finally:
            env = saved

    check_actions(rule.actions, set(env))
    return out
