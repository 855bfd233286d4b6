"""Graph/node/relation class records and the raw, rule-bypassing mutation primitives.

The workspace is the modeled schema: graph classes grouping node classes and
semantic relation classes.  Everything here is deliberately cascade-free; the
primitives refuse any call that would require propagation (that is the rule
engine's job) and keep referential bookkeeping exact.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Union

from .errors import (
    AlreadyPresent,
    AmbiguousContainment,
    DanglingEndpoint,
    DuplicateMember,
    DuplicateName,
    EndpointNotInGraph,
    IncidentRelationsRemain,
    NotInAnyGraph,
    NotPresent,
    StillAttached,
    UnknownClass,
    UnknownGraph,
    UnknownMember,
)


class ClassKind(str, Enum):
    GRAPH = "graph"
    NODE = "node"
    RELATION = "relation"


AFFERENT = "afferent"
EFFERENT = "efferent"
SIDES = (AFFERENT, EFFERENT)


@dataclass(frozen=True)
class ClassId:
    """Identity of a class: (name, version, kind); version 0 is the original."""

    name: str
    version: int = 0
    kind: ClassKind = ClassKind.NODE

    def __str__(self):
        if self.version == 0:
            return self.name
        return f"{self.name}@v{self.version}"

    def display(self) -> str:
        """Human label: version 1 of X renders as VX, version k as VkX."""
        if self.version == 0:
            return self.name
        if self.version == 1:
            return f"V{self.name}"
        return f"V{self.version}{self.name}"

    @staticmethod
    def parse(text: str, kind: ClassKind) -> "ClassId":
        """Parse 'name' or 'name@vK' into an id of the given kind."""
        if "@v" in text:
            name, _, tail = text.rpartition("@v")
            if name and tail.isdigit():
                return ClassId(name, int(tail), kind)
        return ClassId(text, 0, kind)


@dataclass(frozen=True)
class Member:
    """An attribute or method of a class; signatures are free text."""

    member_kind: str  # "attribute" | "method"
    name: str
    signature: str = ""


@dataclass
class NodeClass:
    id: ClassId
    afferent: list[ClassId] = field(default_factory=list)
    efferent: list[ClassId] = field(default_factory=list)
    members: list[Member] = field(default_factory=list)
    versionable: bool = True


@dataclass
class RelationClass:
    """A semantic relation; source/destination are None only on freshly
    derived versions whose endpoints have not been assigned yet."""

    id: ClassId
    nature: str = "association"
    source: ClassId | None = None
    destination: ClassId | None = None
    exclusive: bool = True
    dependent: bool = False
    predominant: bool = False
    card: int | str = 1
    reverse_card: int | str = 1
    members: list[Member] = field(default_factory=list)


@dataclass
class GraphClass:
    id: ClassId
    nodes: list[ClassId] = field(default_factory=list)
    relations: list[ClassId] = field(default_factory=list)
    members: list[Member] = field(default_factory=list)


AnyClass = Union[NodeClass, RelationClass, GraphClass]


@dataclass(frozen=True)
class Violation:
    """One failed structural invariant, naming the offending ids."""

    code: str
    subject: str
    detail: str = ""

    def __str__(self):
        return f"{self.code}({self.subject})" + (f": {self.detail}" if self.detail else "")


@dataclass
class Workspace:
    """All class records plus the graph-membership inverse index."""

    classes: dict[ClassId, AnyClass] = field(default_factory=dict)
    membership: dict[ClassId, list[ClassId]] = field(default_factory=dict)

    # -- lookups -------------------------------------------------------------

    def get(self, cid: ClassId) -> AnyClass:
        try:
            return self.classes[cid]
        except KeyError:
            raise UnknownClass(f"unknown class {cid}") from None

    def node(self, cid: ClassId) -> NodeClass:
        rec = self.get(cid)
        if not isinstance(rec, NodeClass):
            raise UnknownClass(f"{cid} is not a node class")
        return rec

    def relation(self, cid: ClassId) -> RelationClass:
        rec = self.get(cid)
        if not isinstance(rec, RelationClass):
            raise UnknownClass(f"{cid} is not a relation class")
        return rec

    def graph(self, cid: ClassId) -> GraphClass:
        rec = self.classes.get(cid)
        if not isinstance(rec, GraphClass):
            raise UnknownGraph(f"unknown graph {cid}")
        return rec

    def graphs(self) -> list[GraphClass]:
        return [c for c in self.classes.values() if isinstance(c, GraphClass)]

    def resolve(self, text: str, kind: ClassKind) -> ClassId:
        """Resolve 'name' / 'name@vK' text to an existing id of the kind."""
        cid = ClassId.parse(text, kind)
        if cid not in self.classes:
            raise UnknownClass(f"unknown {kind.value} class {text}")
        return cid

    def clone(self) -> "Workspace":
        return copy.deepcopy(self)

    # -- registration (workspace-level, not graph-level) ---------------------

    def register(self, rec: AnyClass) -> None:
        if rec.id in self.classes:
            raise DuplicateName(f"class {rec.id} already exists")
        self.classes[rec.id] = rec
        self.membership.setdefault(rec.id, [])

    def unregister(self, cid: ClassId) -> None:
        self.classes.pop(cid, None)
        self.membership.pop(cid, None)

    def _claim(self, graph_id: ClassId, cid: ClassId) -> None:
        owners = self.membership.setdefault(cid, [])
        if graph_id not in owners:
            owners.append(graph_id)

    def _release(self, graph_id: ClassId, cid: ClassId) -> None:
        owners = self.membership.get(cid, [])
        if graph_id in owners:
            owners.remove(graph_id)


# ---------------------------------------------------------------------------
# Raw operations
# ---------------------------------------------------------------------------

def create_graph(ws: Workspace, name: str, nodes: Iterable[NodeClass],
                 relations: Iterable[RelationClass]) -> ClassId:
    """Create a graph class together with its node and relation classes.

    All names must be fresh and every relation endpoint must be one of the
    given nodes; afferent/efferent lists are derived from the relations.
    """
    nodes = list(nodes)
    relations = list(relations)
    gid = ClassId(name, 0, ClassKind.GRAPH)
    fresh = [gid] + [n.id for n in nodes] + [r.id for r in relations]
    seen: set[ClassId] = set()
    for cid in fresh:
        if cid in ws.classes or cid in seen:
            raise DuplicateName(f"class {cid} already exists")
        seen.add(cid)
    node_ids = {n.id for n in nodes}
    for r in relations:
        if r.source not in node_ids or r.destination not in node_ids:
            raise DanglingEndpoint(
                f"relation {r.id} references a node outside the graph")

    graph = GraphClass(id=gid, nodes=[n.id for n in nodes],
                       relations=[r.id for r in relations])
    by_id = {n.id: n for n in nodes}
    for n in nodes:
        n.afferent = []
        n.efferent = []
    for r in relations:
        by_id[r.source].efferent.append(r.id)
        by_id[r.destination].afferent.append(r.id)

    ws.register(graph)
    for n in nodes:
        ws.register(n)
        ws._claim(gid, n.id)
    for r in relations:
        ws.register(r)
        ws._claim(gid, r.id)
    return gid


def exec_add_node(ws: Workspace, graph_id: ClassId, node: NodeClass) -> None:
    """Add a fresh node class to a graph; incident lists start empty."""
    graph = ws.graph(graph_id)
    if node.id in ws.classes:
        raise DuplicateName(f"class {node.id} already exists")
    node.afferent = []
    node.efferent = []
    ws.register(node)
    graph.nodes.append(node.id)
    ws._claim(graph_id, node.id)


def exec_delete_node(ws: Workspace, node_id: ClassId) -> None:
    """Delete a node that is already fully detached; never cascades."""
    node = ws.node(node_id)
    if node.afferent or node.efferent:
        raise IncidentRelationsRemain(
            f"node {node_id} still has incident relations; propagate first")
    for g in ws.graphs():
        if node_id in g.nodes:
            g.nodes.remove(node_id)
    ws.unregister(node_id)


def exec_add_relation(ws: Workspace, graph_id: ClassId, spec: RelationClass) -> ClassId:
    """Add a relation between two nodes of the graph and wire both endpoint lists."""
    graph = ws.graph(graph_id)
    if spec.id in ws.classes:
        raise DuplicateName(f"class {spec.id} already exists")
    if spec.source not in graph.nodes or spec.destination not in graph.nodes:
        raise EndpointNotInGraph(
            f"relation {spec.id} endpoints must both be nodes of {graph_id}")
    ws.register(spec)
    graph.relations.append(spec.id)
    ws._claim(graph_id, spec.id)
    ws.node(spec.source).efferent.append(spec.id)
    ws.node(spec.destination).afferent.append(spec.id)
    return spec.id


def exec_delete_relation(ws: Workspace, rel_id: ClassId) -> None:
    """Delete a relation that has already been detached from both endpoints."""
    rel = ws.relation(rel_id)
    for endpoint in (rel.source, rel.destination):
        if endpoint is None or endpoint not in ws.classes:
            continue
        node = ws.node(endpoint)
        if rel_id in node.afferent or rel_id in node.efferent:
            raise StillAttached(f"relation {rel_id} is still attached to {endpoint}")
    for g in ws.graphs():
        if rel_id in g.relations:
            g.relations.remove(rel_id)
    ws.unregister(rel_id)


def exec_detach(ws: Workspace, node_id: ClassId, side: str, rel_id: ClassId) -> None:
    """Remove a relation id from one incident list of a node; nothing else."""
    node = ws.node(node_id)
    lst = node.afferent if side == AFFERENT else node.efferent
    if rel_id not in lst:
        raise NotPresent(f"{rel_id} not in {node_id}.{side}")
    lst.remove(rel_id)


def exec_attach(ws: Workspace, node_id: ClassId, side: str, rel_id: ClassId) -> None:
    """Append a relation id to one incident list of a node."""
    node = ws.node(node_id)
    if rel_id not in ws.classes:
        raise UnknownClass(f"unknown relation {rel_id}")
    lst = node.afferent if side == AFFERENT else node.efferent
    if rel_id in lst:
        raise AlreadyPresent(f"{rel_id} already in {node_id}.{side}")
    lst.append(rel_id)


# -- member and rename changes ------------------------------------------------

def _find_member(rec: AnyClass, member_kind: str, name: str) -> Member:
    for m in rec.members:
        if m.member_kind == member_kind and m.name == name:
            return m
    raise UnknownMember(f"{rec.id} has no {member_kind} named {name!r}")


def exec_add_member(ws: Workspace, cid: ClassId, member_kind: str, name: str,
                    signature: str = "") -> None:
    rec = ws.get(cid)
    if any(m.member_kind == member_kind and m.name == name for m in rec.members):
        raise DuplicateMember(f"{cid} already has {member_kind} {name!r}")
    rec.members.append(Member(member_kind, name, signature))


def exec_delete_member(ws: Workspace, cid: ClassId, member_kind: str, name: str) -> None:
    rec = ws.get(cid)
    rec.members.remove(_find_member(rec, member_kind, name))


def exec_rename_member(ws: Workspace, cid: ClassId, member_kind: str,
                       old: str, new: str) -> None:
    rec = ws.get(cid)
    m = _find_member(rec, member_kind, old)
    if any(x.member_kind == member_kind and x.name == new for x in rec.members):
        raise DuplicateMember(f"{cid} already has {member_kind} {new!r}")
    rec.members[rec.members.index(m)] = replace(m, name=new)


def exec_rename_class(ws: Workspace, cid: ClassId, new_name: str) -> ClassId:
    """Rename one class and rewrite every reference to it in the workspace.

    Graph member sets, relation endpoints, incident lists and the membership
    index all follow; callers holding registries must rewrite those too.
    """
    rec = ws.get(cid)
    new_id = ClassId(new_name, cid.version, cid.kind)
    if new_id in ws.classes:
        raise DuplicateName(f"class {new_id} already exists")

    def swap(lst: list[ClassId]) -> None:
        for i, x in enumerate(lst):
            if x == cid:
                lst[i] = new_id

    for other in ws.classes.values():
        if isinstance(other, GraphClass):
            swap(other.nodes)
            swap(other.relations)
        elif isinstance(other, NodeClass):
            swap(other.afferent)
            swap(other.efferent)
        elif isinstance(other, RelationClass):
            if other.source == cid:
                other.source = new_id
            if other.destination == cid:
                other.destination = new_id

    del ws.classes[cid]
    rec.id = new_id
    ws.classes[new_id] = rec
    ws.membership[new_id] = ws.membership.pop(cid, [])
    for owners in ws.membership.values():
        swap(owners)
    return new_id


# -- queries -------------------------------------------------------------------

def shared(ws: Workspace, node_id: ClassId) -> bool:
    """True iff the node has at least one non-exclusive afferent relation."""
    node = ws.node(node_id)
    return any(not ws.relation(r).exclusive for r in node.afferent)


def graph_of(ws: Workspace, cid: ClassId) -> ClassId:
    """The unique graph containing the class; ambiguity is an error."""
    ws.get(cid)
    owners = ws.membership.get(cid, [])
    if not owners:
        raise NotInAnyGraph(f"{cid} belongs to no graph")
    if len(owners) > 1:
        raise AmbiguousContainment(
            f"{cid} belongs to several graphs: {', '.join(map(str, owners))}")
    return owners[0]


def validate(ws: Workspace, graph_id: ClassId) -> list[Violation]:
    """Check every structural invariant of one graph and its members.

    Endpoint containment is lineage-aware: an endpoint is considered present
    when the graph holds a node of the same name (another version of the same
    class), which is what partially versioned graph snapshots produce.
    """
    graph = ws.graph(graph_id)
    out: list[Violation] = []

    for attr in ("nodes", "relations"):
        ids = getattr(graph, attr)
        if len(ids) != len(set(ids)):
            out.append(Violation("DuplicateEntry", str(graph_id), f"duplicates in {attr}"))

    node_names = set()
    for nid in graph.nodes:
        rec = ws.classes.get(nid)
        if not isinstance(rec, NodeClass):
            out.append(Violation("MissingClass", str(nid), "graph node is absent"))
        else:
            node_names.add(nid.name)

    present = set(graph.nodes)
    for rid in graph.relations:
        rec = ws.classes.get(rid)
        if not isinstance(rec, RelationClass):
            out.append(Violation("MissingClass", str(rid), "graph relation is absent"))
            continue
        for endpoint in (rec.source, rec.destination):
            if endpoint is None:
                out.append(Violation("UnsetEndpoint", str(rid)))
            elif endpoint not in present and endpoint.name not in node_names:
                out.append(Violation("DanglingEndpoint", str(rid),
                                     f"endpoint {endpoint} not in {graph_id}"))

    # afferent/efferent bookkeeping of the graph's nodes, against the whole
    # workspace (a relation exists exactly once, whichever graphs list it)
    incoming: dict[ClassId, list[ClassId]] = {}
    outgoing: dict[ClassId, list[ClassId]] = {}
    for rec in ws.classes.values():
        if isinstance(rec, RelationClass):
            if rec.destination is not None:
                incoming.setdefault(rec.destination, []).append(rec.id)
            if rec.source is not None:
                outgoing.setdefault(rec.source, []).append(rec.id)
    for nid in graph.nodes:
        rec = ws.classes.get(nid)
        if not isinstance(rec, NodeClass):
            continue
        actual_aff = incoming.get(nid, [])
        actual_eff = outgoing.get(nid, [])
        if sorted(map(str, rec.afferent)) != sorted(map(str, actual_aff)):
            out.append(Violation("AfferentEfferentMismatch", str(nid),
                                 f"afferent list {list(map(str, rec.afferent))} != "
                                 f"existing incoming {sorted(map(str, actual_aff))}"))
        if sorted(map(str, rec.efferent)) != sorted(map(str, actual_eff)):
            out.append(Violation("AfferentEfferentMismatch", str(nid),
                                 f"efferent list {list(map(str, rec.efferent))} != "
                                 f"existing outgoing {sorted(map(str, actual_eff))}"))
    return out


def validate_all(ws: Workspace) -> list[Violation]:
    out: list[Violation] = []
    for g in ws.graphs():
        out.extend(validate(ws, g.id))
    return out
