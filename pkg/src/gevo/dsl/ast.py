"""Document-level AST for the rule language.

A document is an ordered list of declarations: events, nodes, relations,
graphs, rules, strategies, and strategy bindings.  Rule bodies reuse the
engine's expression and action nodes directly.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..rules import Direction, Mode
from ..schema import ClassKind


@dataclass(frozen=True)
class MemberDecl:
    member_kind: str  # "attribute" | "method"
    name: str
    signature: str = ""


@dataclass(frozen=True)
class EventDecl:
    name: str
    params: tuple[str, ...]
    kind: ClassKind


@dataclass(frozen=True)
class NodeDecl:
    name: str
    versionable: bool = True
    members: tuple = ()


@dataclass(frozen=True)
class RelationDecl:
    name: str
    nature: str
    source: str
    destination: str
    exclusive: bool = True
    dependent: bool = False
    predominant: bool = False
    card: int | str = 1
    reverse_card: int | str = 1
    members: tuple = ()


@dataclass(frozen=True)
class GraphDecl:
    name: str
    nodes: tuple[str, ...] = ()
    relations: tuple[str, ...] = ()
    members: tuple = ()


@dataclass(frozen=True)
class RuleDecl:
    name: str
    kind: ClassKind
    pattern_event: str
    pattern_params: tuple[str, ...]
    pattern_kinds: tuple  # ClassKind | None per param
    condition: tuple = ()  # LetStep | WhenStep, in source order
    actions: tuple = ()
    direction: Direction | None = None
    mode: Mode | None = None


@dataclass(frozen=True)
class StrategyDecl:
    name: str
    kind: ClassKind
    creation: tuple[str, ...] = ()
    destruction: tuple[str, ...] = ()
    modification: tuple[str, ...] = ()


@dataclass(frozen=True)
class BindDecl:
    strategy: str
    targets: tuple[str, ...] = ()     # class ids, when not a kind bind
    kind: ClassKind | None = None     # set for "bind S to kind node"


@dataclass(frozen=True)
class RuleDocument:
    items: tuple = ()

    def of_type(self, cls) -> list:
        return [i for i in self.items if isinstance(i, cls)]


@dataclass(frozen=True)
class Diagnostic:
    line: int
    col: int
    message: str
    code: str = "syntax"

    def __str__(self):
        return f"{self.line}:{self.col}: {self.message}"
