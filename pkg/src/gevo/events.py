"""Evolution events: the canonical vocabulary and the dispatched message type.

Every event has one spelling, a fixed arity, and a target kind.  The first
formal parameter of a rule's event pattern binds the target; the rest bind
the args in order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .schema import ClassKind, ClassId


@dataclass(frozen=True)
class EventSig:
    """Shape of one event name: formal arity, target kind, creation semantics.

    fresh_target marks events whose target class does not exist yet (it is
    being created); origin_index names the arg that carries the extremity a
    relation-targeted event propagates from, when there is one.
    """

    name: str
    params: tuple[str, ...]
    target_kind: ClassKind | None
    fresh_target: bool = False
    origin_index: int | None = None

    @property
    def arity(self) -> int:
        return len(self.params)


def _sig(name, params, kind, fresh=False, origin=None):
    return EventSig(name, tuple(params), kind, fresh, origin)


CANONICAL_EVENTS: dict[str, EventSig] = {s.name: s for s in [
    _sig("add-node", ("N", "G"), ClassKind.NODE, fresh=True),
    _sig("delete-node", ("N",), ClassKind.NODE),
    _sig("add-relation", ("R", "N1", "N2", "G"), ClassKind.RELATION, fresh=True),
    _sig("delete-relation", ("R",), ClassKind.RELATION),
    _sig("modify-graph", ("G", "X"), ClassKind.GRAPH),
    _sig("modify-node", ("N", "side", "R"), ClassKind.NODE),
    _sig("rename-class", ("X", "newName"), None),
    _sig("add-attribute", ("X", "name"), None),
    _sig("delete-attribute", ("X", "name"), None),
    _sig("rename-attribute", ("X", "old", "new"), None),
    _sig("add-method", ("X", "name"), None),
    _sig("delete-method", ("X", "name"), None),
    _sig("rename-method", ("X", "old", "new"), None),
    _sig("create-version-node", ("N",), ClassKind.NODE),
    _sig("create-version-relation", ("r", "N", "N1"), ClassKind.RELATION, origin=0),
    _sig("create-version-graph", ("G", "N"), ClassKind.GRAPH),
]}


@dataclass(frozen=True)
class RelationView:
    """Immutable snapshot of a relation's descriptor, valid past its deletion."""

    id: ClassId
    nature: str
    source: ClassId | None
    destination: ClassId | None
    exclusive: bool
    dependent: bool
    predominant: bool
    card: int | str
    reverse_card: int | str


def key_of(value: Any):
    """Normalize an event value for dedup keys: class-like values by id."""
    if isinstance(value, ClassId):
        return ("id", value.name, value.version, value.kind.value)
    if isinstance(value, RelationView):
        return key_of(value.id)
    if isinstance(value, list):
        return tuple(key_of(v) for v in value)
    return value


def id_of(value: Any) -> ClassId | None:
    if isinstance(value, ClassId):
        return value
    if isinstance(value, RelationView):
        return value.id
    return None


def wire_value(value: Any):
    """Serialize an event value for trace JSON."""
    cid = id_of(value)
    if cid is not None:
        return str(cid)
    if isinstance(value, list):
        return [wire_value(v) for v in value]
    return value


@dataclass(frozen=True)
class Event:
    """A dispatched evolution message: name, target class, ordered args.

    target_payload optionally carries a full descriptor for creation events
    (the target class does not exist yet, but the raising rule knows what it
    should look like).
    """

    name: str
    target: ClassId
    args: tuple = ()
    target_payload: Any = None

    def key(self):
        return (self.name, key_of(self.target), tuple(key_of(a) for a in self.args))

    def values(self) -> list:
        """Pattern-bindable values: target (payload if carried) then args."""
        head = self.target_payload if self.target_payload is not None else self.target
        return [head, *self.args]

    def to_json(self) -> dict:
        return {"name": self.name, "target": str(self.target),
                "args": [wire_value(a) for a in self.args]}
