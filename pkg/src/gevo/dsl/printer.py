"""Canonical pretty-printer: one declaration per block, two-space indent,
full flag sets in a fixed order.  parse(print(doc)) == doc on every AST."""

from __future__ import annotations

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
    EventDecl,
    GraphDecl,
    NodeDecl,
    RelationDecl,
    RuleDecl,
    RuleDocument,
    StrategyDecl,
)

_PREC_OR, _PREC_AND, _PREC_NOT, _PREC_CMP, _PREC_POSTFIX = 1, 2, 3, 4, 5


def _expr(expr, level: int = 0) -> str:
    def wrap(text: str, prec: int) -> str:
        return f"({text})" if prec < level else text

    if isinstance(expr, Lit):
        if isinstance(expr.value, bool):
            return "true" if expr.value else "false"
        if isinstance(expr.value, int):
            return str(expr.value)
        if expr.value in ("afferent", "efferent"):
            return expr.value
        return '"' + str(expr.value).replace('"', '\\"') + '"'
    if isinstance(expr, Var):
        return expr.name
    if isinstance(expr, Call):
        return f"{expr.func}({', '.join(_expr(a) for a in expr.args)})"
    if isinstance(expr, FieldAccess):
        return f"{_expr(expr.base, _PREC_POSTFIX)}.{expr.name}"
    if isinstance(expr, Not):
        return wrap(f"not {_expr(expr.operand, _PREC_NOT)}", _PREC_NOT)
    if isinstance(expr, Compare):
        return wrap(f"{_expr(expr.left, _PREC_POSTFIX)} {expr.op} "
                    f"{_expr(expr.right, _PREC_POSTFIX)}", _PREC_CMP)
    if isinstance(expr, BoolOp):
        prec = _PREC_AND if expr.op == "and" else _PREC_OR
        return wrap(f"{_expr(expr.left, prec)} {expr.op} {_expr(expr.right, prec + 1)}",
                    prec)
    raise TypeError(f"cannot print expression {expr!r}")


def _members(members, indent: str) -> list[str]:
    out = []
    for m in members:
        sig = f' "{m.signature}"' if m.signature else ""
        out.append(f"{indent}{m.member_kind} {m.name}{sig};")
    return out


def _action(action, indent: str) -> list[str]:
    if isinstance(action, RaiseAction):
        return [f"{indent}raise {action.event}"
                f"({', '.join(_expr(a) for a in action.args)});"]
    if isinstance(action, ExecAction):
        return [f"{indent}exec {action.primitive}"
                f"({', '.join(_expr(a) for a in action.args)});"]
    if isinstance(action, ForEachAction):
        lines = [f"{indent}for {action.var} in {_expr(action.collection)} {{"]
        for inner in action.body:
            lines.extend(_action(inner, indent + "  "))
        lines.append(f"{indent}}}")
        return lines
    raise TypeError(f"cannot print action {action!r}")


def _item(item) -> str:
    if isinstance(item, EventDecl):
        return f"event {item.name}({', '.join(item.params)}) : {item.kind.value};"

    if isinstance(item, NodeDecl):
        head = f"node {item.name}"
        if not item.versionable:
            head += " versionable=false"
        if not item.members:
            return head + ";"
        lines = [head + " {"]
        lines.extend(_members(item.members, "  "))
        lines.append("}")
        return "\n".join(lines)

    if isinstance(item, RelationDecl):
        head = (f"relation {item.name} : {item.nature} "
                f"({item.source} -> {item.destination}) "
                f"exclusive={'true' if item.exclusive else 'false'} "
                f"dependent={'true' if item.dependent else 'false'} "
                f"predominant={'true' if item.predominant else 'false'} "
                f"card={item.card} reverse-card={item.reverse_card}")
        if not item.members:
            return head + ";"
        lines = [head + " {"]
        lines.extend(_members(item.members, "  "))
        lines.append("}")
        return "\n".join(lines)

    if isinstance(item, GraphDecl):
        lines = [f"graph {item.name} {{"]
        lines.append(f"  nodes = [{', '.join(item.nodes)}];")
        lines.append(f"  relations = [{', '.join(item.relations)}];")
        lines.extend(_members(item.members, "  "))
        lines.append("}")
        return "\n".join(lines)

    if isinstance(item, RuleDecl):
        head = f"rule {item.name} : {item.kind.value}"
        if item.direction is not None:
            head += f" direction={item.direction.value}"
        if item.mode is not None:
            head += f" mode={item.mode.value}"
        params = []
        for p, k in zip(item.pattern_params, item.pattern_kinds):
            params.append(p if k is None else f"{p}: {k.value}")
        lines = [head + " {", f"  on {item.pattern_event}({', '.join(params)})"]
        for step in item.condition:
            if isinstance(step, WhenStep):
                lines.append(f"  when {_expr(step.guard)}")
            elif isinstance(step, LetStep):
                lines.append(f"  let {step.var} = {_expr(step.expr)}")
        lines.append("  do {")
        for action in item.actions:
            lines.extend(_action(action, "    "))
        lines.append("  }")
        lines.append("}")
        return "\n".join(lines)

    if isinstance(item, StrategyDecl):
        lines = [f"strategy {item.name} : {item.kind.value} {{"]
        lines.append(f"  creation rules = [{', '.join(item.creation)}];")
        lines.append(f"  destruction rules = [{', '.join(item.destruction)}];")
        lines.append(f"  modification rules = [{', '.join(item.modification)}];")
        lines.append("}")
        return "\n".join(lines)

    if isinstance(item, BindDecl):
        if item.kind is not None:
            return f"bind {item.strategy} to kind {item.kind.value};"
        return f"bind {item.strategy} to {', '.join(item.targets)};"

    raise TypeError(f"cannot print item {item!r}")


def print_document(doc: RuleDocument) -> str:
    return "\n\n".join(_item(i) for i in doc.items) + ("\n" if doc.items else "")
