"""Workspace primitives: structural contracts and bookkeeping invariants."""

import copy

import pytest
from hypothesis import given, strategies as st

import gevo
from gevo.errors import (
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
from gevo.schema import (
    ClassId,
    ClassKind,
    Member,
    NodeClass,
    RelationClass,
    Workspace,
    create_graph,
    exec_add_member,
    exec_add_node,
    exec_add_relation,
    exec_attach,
    exec_delete_member,
    exec_delete_node,
    exec_delete_relation,
    exec_detach,
    exec_rename_class,
    exec_rename_member,
    graph_of,
    shared,
    validate,
)

from conftest import gid, nid, rid


def make_gr0(ws=None):
    ws = ws if ws is not None else Workspace()
    nodes = [NodeClass(id=nid("C1")), NodeClass(id=nid("C2")), NodeClass(id=nid("C3"))]
    relations = [
        RelationClass(id=rid("RC1"), nature="composition", source=nid("C1"),
                      destination=nid("C2"), exclusive=True),
        RelationClass(id=rid("h2"), nature="inheritance", source=nid("C2"),
                      destination=nid("C3"), exclusive=True),
    ]
    graph = create_graph(ws, "GR0", nodes, relations)
    return ws, graph


class TestCreateGraph:
    def test_gr0_incident_lists(self):
        ws, graph = make_gr0()
        c2 = ws.node(nid("C2"))
        assert c2.afferent == [rid("RC1")]
        assert c2.efferent == [rid("h2")]
        assert validate(ws, graph) == []

    def test_empty_graph(self):
        ws = Workspace()
        graph = create_graph(ws, "G", [], [])
        assert ws.graph(graph).nodes == []
        assert ws.graph(graph).relations == []
        assert validate(ws, graph) == []

    def test_dangling_endpoint(self):
        ws = Workspace()
        with pytest.raises(DanglingEndpoint):
            create_graph(ws, "G", [NodeClass(id=nid("A"))],
                         [RelationClass(id=rid("r"), source=nid("A"),
                                        destination=nid("B"))])

    def test_duplicate_name(self):
        ws, _ = make_gr0()
        with pytest.raises(DuplicateName):
            create_graph(ws, "GR0", [], [])


class TestAddDeleteNode:
    def test_add_node(self):
        ws, graph = make_gr0()
        exec_add_node(ws, graph, NodeClass(id=nid("C4")))
        assert ws.graph(graph).nodes == [nid("C1"), nid("C2"), nid("C3"), nid("C4")]
        assert ws.node(nid("C4")).afferent == []

    def test_add_duplicate(self):
        ws, graph = make_gr0()
        with pytest.raises(DuplicateName):
            exec_add_node(ws, graph, NodeClass(id=nid("C1")))

    def test_add_to_unknown_graph(self):
        ws, _ = make_gr0()
        with pytest.raises(UnknownGraph):
            exec_add_node(ws, gid("GX"), NodeClass(id=nid("C9")))

    def test_delete_detached_node(self):
        ws, graph = make_gr0()
        for node, side, rel in [("C1", "efferent", "RC1"), ("C2", "afferent", "RC1"),
                                ("C2", "efferent", "h2"), ("C3", "afferent", "h2")]:
            exec_detach(ws, nid(node), side, rid(rel))
        exec_delete_relation(ws, rid("RC1"))
        exec_delete_relation(ws, rid("h2"))
        exec_delete_node(ws, nid("C2"))
        assert ws.graph(graph).nodes == [nid("C1"), nid("C3")]
        assert nid("C2") not in ws.classes

    def test_delete_isolated_touches_nothing_else(self):
        ws, graph = make_gr0()
        exec_add_node(ws, graph, NodeClass(id=nid("C4")))
        before = {k: copy.deepcopy(v) for k, v in ws.classes.items()}
        exec_delete_node(ws, nid("C4"))
        assert nid("C4") not in ws.classes
        for cid, rec in ws.classes.items():
            if cid == graph:
                assert rec.nodes == [nid("C1"), nid("C2"), nid("C3")]
            else:
                assert rec == before[cid]

    def test_delete_with_incident_relations(self):
        ws, _ = make_gr0()
        with pytest.raises(IncidentRelationsRemain):
            exec_delete_node(ws, nid("C2"))


class TestAddDeleteRelation:
    def test_re_add_bridged(self):
        ws, graph = make_gr0()
        for node, side, rel in [("C1", "efferent", "RC1"), ("C2", "afferent", "RC1")]:
            exec_detach(ws, nid(node), side, rid(rel))
        exec_delete_relation(ws, rid("RC1"))
        exec_add_relation(ws, graph, RelationClass(
            id=rid("RC1"), nature="composition", source=nid("C1"),
            destination=nid("C3")))
        assert ws.node(nid("C1")).efferent == [rid("RC1")]
        assert ws.node(nid("C3")).afferent == [rid("h2"), rid("RC1")]

    def test_self_loop(self):
        ws, graph = make_gr0()
        exec_add_relation(ws, graph, RelationClass(
            id=rid("loop"), source=nid("C1"), destination=nid("C1")))
        c1 = ws.node(nid("C1"))
        assert rid("loop") in c1.afferent and rid("loop") in c1.efferent

    def test_endpoint_not_in_graph(self):
        ws, graph = make_gr0()
        with pytest.raises(EndpointNotInGraph):
            exec_add_relation(ws, graph, RelationClass(
                id=rid("r9"), source=nid("C1"), destination=nid("C9")))

    def test_delete_detached(self):
        ws, graph = make_gr0()
        exec_detach(ws, nid("C1"), "efferent", rid("RC1"))
        exec_detach(ws, nid("C2"), "afferent", rid("RC1"))
        exec_delete_relation(ws, rid("RC1"))
        assert ws.graph(graph).relations == [rid("h2")]
        with pytest.raises(UnknownClass):
            exec_delete_relation(ws, rid("RC1"))

    def test_delete_still_attached(self):
        ws, _ = make_gr0()
        with pytest.raises(StillAttached):
            exec_delete_relation(ws, rid("h2"))


class TestDetachAttach:
    def test_detach_both_sides(self):
        ws, _ = make_gr0()
        exec_detach(ws, nid("C1"), "efferent", rid("RC1"))
        assert ws.node(nid("C1")).efferent == []
        exec_detach(ws, nid("C3"), "afferent", rid("h2"))
        assert ws.node(nid("C3")).afferent == []

    def test_detach_twice(self):
        ws, _ = make_gr0()
        exec_detach(ws, nid("C1"), "efferent", rid("RC1"))
        with pytest.raises(NotPresent):
            exec_detach(ws, nid("C1"), "efferent", rid("RC1"))

    def test_attach_then_detach_restores(self):
        ws, _ = make_gr0()
        original = list(ws.node(nid("C3")).efferent)
        exec_attach(ws, nid("C3"), "efferent", rid("RC1"))
        exec_detach(ws, nid("C3"), "efferent", rid("RC1"))
        assert ws.node(nid("C3")).efferent == original

    def test_attach_duplicate(self):
        ws, _ = make_gr0()
        with pytest.raises(AlreadyPresent):
            exec_attach(ws, nid("C1"), "efferent", rid("RC1"))

    @given(st.integers(min_value=0, max_value=5))
    def test_attach_detach_inverse(self, extra):
        ws, _ = make_gr0()
        node = ws.node(nid("C3"))
        for i in range(extra):
            ws.register(RelationClass(id=rid(f"x{i}"), source=nid("C1"),
                                      destination=nid("C1")))
            exec_attach(ws, nid("C3"), "efferent", rid(f"x{i}"))
        snapshot = (list(node.afferent), list(node.efferent))
        exec_attach(ws, nid("C3"), "efferent", rid("RC1"))
        exec_detach(ws, nid("C3"), "efferent", rid("RC1"))
        assert (list(node.afferent), list(node.efferent)) == snapshot


class TestMembers:
    def test_add_attribute(self):
        ws, _ = make_gr0()
        exec_add_member(ws, nid("C1"), "attribute", "weight", "float")
        assert Member("attribute", "weight", "float") in ws.node(nid("C1")).members

    def test_duplicate_member(self):
        ws, _ = make_gr0()
        exec_add_member(ws, nid("C1"), "attribute", "weight")
        with pytest.raises(DuplicateMember):
            exec_add_member(ws, nid("C1"), "attribute", "weight")

    def test_delete_twice(self):
        ws, _ = make_gr0()
        exec_add_member(ws, nid("C1"), "attribute", "weight")
        exec_delete_member(ws, nid("C1"), "attribute", "weight")
        with pytest.raises(UnknownMember):
            exec_delete_member(ws, nid("C1"), "attribute", "weight")

    def test_rename_member(self):
        ws, _ = make_gr0()
        exec_add_member(ws, nid("C1"), "method", "go", "void()")
        exec_rename_member(ws, nid("C1"), "method", "go", "run")
        assert Member("method", "run", "void()") in ws.node(nid("C1")).members

    def test_rename_class_rewrites_references(self):
        ws, graph = make_gr0()
        new = exec_rename_class(ws, nid("C3"), "C3bis")
        assert new == nid("C3bis")
        assert ws.relation(rid("h2")).destination == nid("C3bis")
        assert nid("C3bis") in ws.graph(graph).nodes
        assert nid("C3") not in ws.classes
        assert validate(ws, graph) == []

    def test_rename_class_duplicate(self):
        ws, _ = make_gr0()
        with pytest.raises(DuplicateName):
            exec_rename_class(ws, nid("C3"), "C1")


class TestQueries:
    def test_shared_exclusive_afferent(self):
        ws, _ = make_gr0()
        assert shared(ws, nid("C2")) is False

    def test_shared_non_exclusive(self):
        ws, graph = make_gr0()
        exec_add_relation(ws, graph, RelationClass(
            id=rid("r2"), source=nid("C1"), destination=nid("C2"),
            exclusive=False))
        assert shared(ws, nid("C2")) is True

    def test_shared_empty_afferent(self):
        ws, _ = make_gr0()
        assert shared(ws, nid("C1")) is False

    @given(st.lists(st.booleans(), max_size=8))
    def test_shared_matches_brute_force(self, flags):
        ws = Workspace()
        nodes = [NodeClass(id=nid("hub")), NodeClass(id=nid("src"))]
        relations = [RelationClass(id=rid(f"r{i}"), source=nid("src"),
                                   destination=nid("hub"), exclusive=flag)
                     for i, flag in enumerate(flags)]
        create_graph(ws, "G", nodes, relations)
        brute = any(not ws.relation(r).exclusive
                    for r in ws.node(nid("hub")).afferent)
        assert shared(ws, nid("hub")) == brute

    def test_graph_of(self):
        ws, graph = make_gr0()
        assert graph_of(ws, nid("C2")) == graph

    def test_graph_of_orphan(self):
        ws, _ = make_gr0()
        ws.register(NodeClass(id=nid("lone")))
        with pytest.raises(NotInAnyGraph):
            graph_of(ws, nid("lone"))

    def test_graph_of_ambiguous(self):
        ws, _ = make_gr0()
        g2 = create_graph(ws, "G2", [], [])
        ws.graph(g2).nodes.append(nid("C1"))
        ws._claim(g2, nid("C1"))
        with pytest.raises(AmbiguousContainment):
            graph_of(ws, nid("C1"))


class TestValidate:
    def test_initial_state_consistent(self):
        ws, graph = make_gr0()
        assert validate(ws, graph) == []

    def test_detects_bookkeeping_mismatch(self):
        ws, graph = make_gr0()
        ws.node(nid("C1")).efferent.remove(rid("RC1"))
        codes = [v.code for v in validate(ws, graph)]
        assert "AfferentEfferentMismatch" in codes

    def test_detects_dangling_endpoint(self):
        ws, graph = make_gr0()
        ws.graph(graph).nodes.remove(nid("C3"))
        codes = [v.code for v in validate(ws, graph)]
        assert "DanglingEndpoint" in codes

    def test_after_full_deletion_replay(self, gr0_after_deletion):
        assert gevo.validate_all(gr0_after_deletion.ws) == []


class TestClassId:
    def test_display_forms(self):
        assert nid("C1").display() == "C1"
        assert nid("C1", 1).display() == "VC1"
        assert nid("C1", 2).display() == "V2C1"

    def test_str_and_parse_roundtrip(self):
        for cid in [nid("C1"), nid("C1", 3), rid("RC1", 1)]:
            assert ClassId.parse(str(cid), cid.kind) == cid
