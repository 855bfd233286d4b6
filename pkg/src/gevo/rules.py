"""ECA evolution rules, propagation strategies, and their condition/action ASTs."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import KindMismatch, UnknownStrategy
from .schema import ClassId, ClassKind


class Direction(str, Enum):
    FORWARD = "forward"
    BACKWARD = "backward"
    BIDIRECTIONAL = "bidirectional"
    NONE = "none"


class Mode(str, Enum):
    RESTRICTED = "restricted"
    EXTENDED = "extended"


class Category(str, Enum):
    CREATION = "creation"
    DESTRUCTION = "destruction"
    MODIFICATION = "modification"


# --- expressions -------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Lit:
    value: object  # str | int | bool | side keyword


@dataclass(frozen=True)
class FieldAccess:
    base: "Expr"
    name: str


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple


@dataclass(frozen=True)
class Not:
    operand: "Expr"


@dataclass(frozen=True)
class BoolOp:
    op: str  # "and" | "or"
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Compare:
    op: str  # "==" | "!="
    left: "Expr"
    right: "Expr"


Expr = object  # union of the above, kept loose on purpose


# --- condition and action programs --------------------------------------------

@dataclass(frozen=True)
class WhenStep:
    guard: Expr


@dataclass(frozen=True)
class LetStep:
    var: str
    expr: Expr


@dataclass(frozen=True)
class RaiseAction:
    event: str
    args: tuple


@dataclass(frozen=True)
class ExecAction:
    primitive: str
    args: tuple


@dataclass(frozen=True)
class ForEachAction:
    var: str
    collection: Expr
    body: tuple


Action = object
ConditionStep = object


@dataclass(frozen=True)
class EventPattern:
    """Event name plus formal parameters; the optional kind annotation on a
    parameter is the payload disambiguator used by rule selection."""

    name: str
    params: tuple[str, ...]
    param_kinds: tuple[ClassKind | None, ...]

    @property
    def arity(self) -> int:
        return len(self.params)


@dataclass(frozen=True)
class EvolutionRule:
    id: str
    applies_to: ClassKind
    pattern: EventPattern
    condition: tuple = ()           # ConditionStep*
    actions: tuple = ()             # Action*
    direction: Direction | None = None   # relation rules only
    mode: Mode | None = None             # relation rules only

    def effective_direction(self) -> Direction:
        return self.direction or Direction.FORWARD

    def effective_mode(self) -> Mode:
        return self.mode or Mode.RESTRICTED


@dataclass
class PropagationStrategy:
    """A named bundle of rule ids in three organizational categories."""

    id: str
    applies_to: ClassKind
    creation_rules: list[str] = field(default_factory=list)
    destruction_rules: list[str] = field(default_factory=list)
    modification_rules: list[str] = field(default_factory=list)

    def rule_ids(self) -> list[str]:
        """Union in category order (creation, destruction, modification)."""
        return [*self.creation_rules, *self.destruction_rules, *self.modification_rules]


@dataclass
class StrategyRegistry:
    """Per-class bindings overriding per-kind defaults."""

    per_class: dict[ClassId, str] = field(default_factory=dict)
    per_kind: dict[ClassKind, str] = field(default_factory=dict)

    def bind_class(self, cid: ClassId, strategy: PropagationStrategy) -> None:
        if strategy.applies_to != cid.kind:
            raise KindMismatch(
                f"strategy {strategy.id} applies to {strategy.applies_to.value} "
                f"classes, not to {cid.kind.value} {cid}")
        self.per_class[cid] = strategy.id

    def bind_kind(self, kind: ClassKind, strategy: PropagationStrategy) -> None:
        if strategy.applies_to != kind:
            raise KindMismatch(
                f"strategy {strategy.id} applies to {strategy.applies_to.value}, "
                f"not {kind.value}")
        self.per_kind[kind] = strategy.id

    def resolve(self, cid: ClassId) -> str | None:
        hit = self.per_class.get(cid)
        if hit is not None:
            return hit
        return self.per_kind.get(cid.kind)

    def rename_class(self, old: ClassId, new: ClassId) -> None:
        if old in self.per_class:
            self.per_class[new] = self.per_class.pop(old)


def bind_strategy(registry: StrategyRegistry,
                  strategies: dict[str, PropagationStrategy],
                  target: ClassId | ClassKind, strategy_id: str) -> None:
    """Record a per-class or per-kind binding after checking kind agreement."""
    strategy = strategies.get(strategy_id)
    if strategy is None:
        raise UnknownStrategy(f"unknown strategy {strategy_id}")
    if isinstance(target, ClassKind):
        registry.bind_kind(target, strategy)
    else:
        registry.bind_class(target, strategy)
