"""Version primitives and lineage bookkeeping.

A version of a class is a new class with the same name and version+1.  Node
versions start with empty incident lists, relation versions with unset
endpoints; the version-propagation rules wire them up, and graph version
membership is finalized when the propagation commits.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field

from .errors import (
    AlreadyVersionedInPropagation,
    DuplicateName,
    EndpointsAlreadySet,
    IncidentRelationsRemain,
    NotVersionable,
    UnknownClass,
)
from .schema import (
    ClassId,
    ClassKind,
    GraphClass,
    NodeClass,
    RelationClass,
    Workspace,
    exec_attach,
)


@dataclass
class VersionRegistry:
    """Lineage edges plus the per-propagation V(x) bindings."""

    lineage: list[tuple[ClassId, ClassId]] = field(default_factory=list)
    current: dict[ClassId, ClassId] = field(default_factory=dict)

    def begin_propagation(self) -> None:
        self.current.clear()

    def child_of(self, cid: ClassId) -> ClassId | None:
        for parent, child in self.lineage:
            if parent == cid:
                return child
        return None

    def latest_of(self, cid: ClassId) -> ClassId | None:
        """Deepest descendant along the lineage chain, or None if unversioned."""
        tip = self.child_of(cid)
        if tip is None:
            return None
        while True:
            nxt = self.child_of(tip)
            if nxt is None:
                return tip
            tip = nxt

    def rename_class(self, old: ClassId, new: ClassId) -> None:
        self.lineage = [(new if p == old else p, new if c == old else c)
                        for p, c in self.lineage]
        if old in self.current:
            self.current[new] = self.current.pop(old)
        for k, v in list(self.current.items()):
            if v == old:
                self.current[k] = new

    def clone(self) -> "VersionRegistry":
        return copy.deepcopy(self)


def version_of(vr: VersionRegistry, cid: ClassId, scope: str = "propagation") -> ClassId | None:
    """V(x): propagation scope reads the live bindings, latest the lineage tip."""
    if scope == "propagation":
        return vr.current.get(cid)
    return vr.latest_of(cid)


def _next_id(ws: Workspace, cid: ClassId) -> ClassId:
    child = ClassId(cid.name, cid.version + 1, cid.kind)
    if child in ws.classes:
        raise DuplicateName(f"version {child} already exists")
    return child


def execute_create_version_node(ws: Workspace, vr: VersionRegistry,
                                node_id: ClassId) -> ClassId:
    """Create the next version of a node: members copied, incident lists empty."""
    node = ws.node(node_id)
    if not node.versionable:
        raise NotVersionable(f"node {node_id} is not versionable")
    if node_id in vr.current:
        raise AlreadyVersionedInPropagation(
            f"{node_id} was already versioned in this propagation")
    child = _next_id(ws, node_id)
    ws.register(NodeClass(id=child, members=list(node.members),
                          versionable=node.versionable))
    vr.lineage.append((node_id, child))
    vr.current[node_id] = child
    return child


def derive_relation(ws: Workspace, vr: VersionRegistry, rel_id: ClassId) -> ClassId:
    """Derive the next version of a relation; endpoints stay unset until assigned."""
    rel = ws.relation(rel_id)
    if rel_id in vr.current:
        raise AlreadyVersionedInPropagation(
            f"{rel_id} was already versioned in this propagation")
    child = _next_id(ws, rel_id)
    ws.register(RelationClass(
        id=child, nature=rel.nature, source=None, destination=None,
        exclusive=rel.exclusive, dependent=rel.dependent,
        predominant=rel.predominant, card=rel.card,
        reverse_card=rel.reverse_card, members=list(rel.members)))
    vr.lineage.append((rel_id, child))
    vr.current[rel_id] = child
    return child


def assign_version_endpoints(ws: Workspace, vr: VersionRegistry, v_rel_id: ClassId,
                             source_id: ClassId, dest_id: ClassId) -> None:
    """Set a derived relation's endpoints and attach it to both version nodes."""
    rel = ws.relation(v_rel_id)
    if rel.source is not None or rel.destination is not None:
        raise EndpointsAlreadySet(f"{v_rel_id} endpoints already assigned")
    ws.node(source_id)
    ws.node(dest_id)
    rel.source = source_id
    rel.destination = dest_id
    exec_attach(ws, source_id, "efferent", v_rel_id)
    exec_attach(ws, dest_id, "afferent", v_rel_id)


def execute_create_version_graph(ws: Workspace, vr: VersionRegistry,
                                 graph_id: ClassId) -> ClassId:
    """Create (or return) this propagation's version of a graph.

    Idempotent within one propagation; the membership lists stay empty here and
    are finalized at commit, once every V(x) of the propagation is known.
    """
    graph = ws.graph(graph_id)
    existing = vr.current.get(graph_id)
    if existing is not None:
        return existing
    child = _next_id(ws, graph_id)
    ws.register(GraphClass(id=child, members=list(graph.members)))
    vr.lineage.append((graph_id, child))
    vr.current[graph_id] = child
    return child


def finalize_version_graphs(ws: Workspace, vr: VersionRegistry) -> None:
    """Fill each graph version created in this propagation: every member of the
    parent graph is replaced by its propagation version when one exists."""
    for parent_id, child_id in vr.current.items():
        if parent_id.kind != ClassKind.GRAPH:
            continue
        parent = ws.graph(parent_id)
        child = ws.graph(child_id)
        child.nodes = [vr.current.get(n, n) for n in parent.nodes]
        child.relations = [vr.current.get(r, r) for r in parent.relations]
        for member in [*child.nodes, *child.relations]:
            ws._claim(child_id, member)


def delete_leaf_version(ws: Workspace, vr: VersionRegistry, cid: ClassId) -> None:
    """Raw removal of a lineage-tip version class; never propagated by rules."""
    if cid.version == 0:
        raise UnknownClass(f"{cid} is an original, not a version")
    if vr.child_of(cid) is not None:
        raise IncidentRelationsRemain(f"{cid} has a derived version; delete that first")
    rec = ws.get(cid)
    if isinstance(rec, NodeClass) and (rec.afferent or rec.efferent):
        raise IncidentRelationsRemain(f"{cid} still has incident relations")
    for g in ws.graphs():
        if cid in g.nodes:
            g.nodes.remove(cid)
        if cid in g.relations:
            g.relations.remove(cid)
    ws.unregister(cid)
    vr.lineage = [(p, c) for p, c in vr.lineage if c != cid]
