"""Parser, resolver and canonical printer: round-trips, diagnostics, fuzz."""

from random import Random

import pytest
from hypothesis import given, settings, strategies as st

import gevo
from gevo.builtin import builtin_document
from gevo.dsl import parse_document, print_document, try_parse_document
from gevo.dsl.ast import (
    BindDecl,
    EventDecl,
    GraphDecl,
    MemberDecl,
    NodeDecl,
    RelationDecl,
    RuleDecl,
    RuleDocument,
    StrategyDecl,
)
from gevo.errors import DslParseError
from gevo.rules import Direction, ExecAction, LetStep, Mode, RaiseAction, WhenStep
from gevo.schema import ClassKind

R4_TEXT = """
rule R4 : relation direction=forward mode=extended {
  on delete-relation(R)
  let G = graph-of(R)
  do {
    raise modify-graph(G, R);
    exec delete-relation(R);
  }
}
"""


class TestParsing:
    def test_r4_transcription(self):
        doc = parse_document(R4_TEXT)
        rule = doc.of_type(RuleDecl)[0]
        assert rule.name == "R4"
        assert rule.kind == ClassKind.RELATION
        assert rule.direction == Direction.FORWARD
        assert rule.mode == Mode.EXTENDED
        assert rule.pattern_event == "delete-relation"
        assert isinstance(rule.condition[0], LetStep)
        assert isinstance(rule.actions[0], RaiseAction)
        assert isinstance(rule.actions[1], ExecAction)

    def test_empty_document(self):
        doc = parse_document("")
        assert doc.items == ()

    def test_comments_ignored(self):
        doc = parse_document("# a comment\nnode A; # trailing\n")
        assert len(doc.of_type(NodeDecl)) == 1

    def test_undeclared_event_reference(self):
        text = """
        rule R : node {
          on frobnicate(N)
          do { }
        }
        """
        doc, diagnostics = try_parse_document(text)
        assert doc is None
        assert any("frobnicate" in str(d) for d in diagnostics)

    def test_user_event_declaration(self):
        text = """
        event frobnicate(N) : node;
        rule R : node {
          on frobnicate(N)
          do { }
        }
        """
        doc = parse_document(text)
        assert doc.of_type(EventDecl)[0].kind == ClassKind.NODE

    def test_duplicate_definition(self):
        doc, diagnostics = try_parse_document("node A;\nnode A;")
        assert doc is None
        assert any("duplicate" in str(d).lower() for d in diagnostics)

    def test_unbound_variable(self):
        text = """
        rule R : node {
          on delete-node(N)
          do { exec delete-node(M); }
        }
        """
        doc, diagnostics = try_parse_document(text)
        assert doc is None
        assert any("unbound" in str(d).lower() for d in diagnostics)

    def test_syntax_error_carries_position(self):
        doc, diagnostics = try_parse_document("node ;")
        assert doc is None
        assert diagnostics[0].line == 1
        assert diagnostics[0].col >= 1

    def test_strategy_kind_mismatch(self):
        text = """
        rule R : node {
          on delete-node(N)
          do { }
        }
        strategy S : graph {
          creation rules = [R];
        }
        """
        doc, diagnostics = try_parse_document(text)
        assert doc is None
        assert any(d.code == "kind-mismatch" for d in diagnostics)

    def test_direction_on_node_rule_rejected(self):
        text = """
        rule R : node direction=forward {
          on delete-node(N)
          do { }
        }
        """
        doc, diagnostics = try_parse_document(text)
        assert doc is None

    def test_versioned_id_in_bind(self):
        text = """
        node C1;
        rule R : node { on delete-node(N) do { } }
        strategy S : node { destruction rules = [R]; }
        bind S to C1@v1;
        """
        doc = parse_document(text)
        assert doc.of_type(BindDecl)[0].targets == ("C1@v1",)

    def test_forward_references_resolve(self):
        # everything referenced before it is declared; both resolution and
        # engine building must cope
        text = """
        bind S to kind node;
        bind S to A;
        strategy S : node { destruction rules = [R]; }
        rule R : node { on delete-node(N) do { exec delete-node(N); } }
        graph G { nodes = [A]; relations = [r]; }
        relation r : association (A -> A);
        node A;
        """
        doc = parse_document(text)
        engine = gevo.engine_from_text(text)
        assert engine.resolve_strategy(gevo.ClassId("A", 0, ClassKind.NODE)) == "S"
        assert gevo.validate_all(engine.ws) == []
        assert parse_document(print_document(doc)) == doc


class TestPrinting:
    def test_print_parse_identity_on_r4(self):
        doc = parse_document(R4_TEXT)
        assert parse_document(print_document(doc)) == doc

    def test_normalizes_spacing_and_case(self):
        loose = "rule R4 : relation direction = FORWARD mode = extended " \
                "{ on delete-relation(R) let G = graph-of(R) " \
                "do { raise modify-graph(G, R); exec delete-relation(R); } }"
        assert parse_document(loose) == parse_document(R4_TEXT)
        assert print_document(parse_document(loose)) == \
               print_document(parse_document(R4_TEXT))
        assert "direction=forward" in print_document(parse_document(loose))

    def test_golden_document_roundtrip_and_replay(self):
        text = gevo.example_document_text()
        doc = parse_document(text)
        printed = print_document(doc)
        assert parse_document(printed) == doc
        engine = gevo.engine_from_text(printed)
        trace = engine.dispatch(gevo.parse_event_expr(engine, "delete-node(C2)"))
        assert trace.executed_pairs()[0] == ("R2", "C2")
        assert len(trace.executed()) == 11

    def test_builtin_roundtrip(self):
        doc = builtin_document()
        assert parse_document(print_document(doc)) == doc


class TestBuiltinDocument:
    def test_exactly_nine_rules(self):
        names = [r.name for r in builtin_document().of_type(RuleDecl)]
        assert names == [f"R{i}" for i in range(1, 10)]

    def test_r2_in_node_destruction(self):
        strategies = {s.name: s for s in builtin_document().of_type(StrategyDecl)}
        assert strategies["S2"].kind == ClassKind.NODE
        assert strategies["S2"].destruction == ("R2",)

    def test_categories_match_paper_tables(self):
        strategies = {s.name: s for s in builtin_document().of_type(StrategyDecl)}
        assert strategies["S1"].creation == ("R9",)
        assert strategies["S1"].modification == ("R3", "R5")
        assert strategies["S2"].creation == ("R7",)
        assert strategies["S2"].modification == ("R6",)
        assert strategies["S3"].creation == ("R1", "R8")
        assert strategies["S3"].destruction == ("R4",)


def random_document(seed: int) -> RuleDocument:
    rng = Random(seed)
    items = []
    node_names = [f"N{i}" for i in range(rng.randint(1, 4))]
    for name in node_names:
        members = tuple(MemberDecl(rng.choice(["attribute", "method"]),
                                   f"m{j}", rng.choice(["", "int", "void()"]))
                        for j in range(rng.randint(0, 2)))
        items.append(NodeDecl(name, rng.random() < 0.8, members))
    rel_names = []
    for i in range(rng.randint(0, 3)):
        name = f"r{i}"
        rel_names.append(name)
        items.append(RelationDecl(
            name, rng.choice(["composition", "inheritance", "association"]),
            rng.choice(node_names), rng.choice(node_names),
            rng.random() < 0.5, rng.random() < 0.5, rng.random() < 0.5,
            rng.choice([1, 2, "n"]), rng.choice([1, "n"])))
    items.append(GraphDecl("G", tuple(node_names), tuple(rel_names)))
    rule_names = []
    for i in range(rng.randint(0, 3)):
        name = f"RU{i}"
        rule_names.append(name)
        condition = []
        if rng.random() < 0.7:
            from gevo.rules import Call, Not, Var
            guard = Call("shared", (Var("N"),))
            condition.append(WhenStep(Not(guard) if rng.random() < 0.5 else guard))
        if rng.random() < 0.5:
            from gevo.rules import Call, Var
            condition.append(LetStep("G", Call("graph-of", (Var("N"),))))
        actions = []
        if rng.random() < 0.7:
            from gevo.rules import Var
            actions.append(ExecAction("delete-node", (Var("N"),)))
        items.append(RuleDecl(name, ClassKind.NODE, "delete-node", ("N",),
                              (None,), tuple(condition), tuple(actions)))
    if rule_names:
        items.append(StrategyDecl("S", ClassKind.NODE, (),
                                  tuple(rule_names), ()))
        items.append(BindDecl("S", (rng.choice(node_names),), None))
        items.append(BindDecl("S", (), ClassKind.NODE))
    return RuleDocument(tuple(items))


class TestRoundTripGenerated:
    def test_hundred_generated_documents(self):
        for seed in range(120):
            doc = random_document(seed)
            printed = print_document(doc)
            reparsed = parse_document(printed)
            assert reparsed == doc, f"seed {seed} failed round-trip"
            assert parse_document(print_document(reparsed)) == reparsed


class TestFuzz:
    @settings(max_examples=300, deadline=None)
    @given(st.text(max_size=120))
    def test_arbitrary_text_never_crashes(self, text):
        doc, diagnostics = try_parse_document(text)
        assert doc is not None or diagnostics

    @settings(max_examples=200, deadline=None)
    @given(st.text(alphabet="node relation graph rule strategy bind {}();:=->,.\"ABC123 \n", max_size=200))
    def test_keyword_soup_never_crashes(self, text):
        doc, diagnostics = try_parse_document(text)
        assert doc is not None or diagnostics

    def test_mutated_golden_never_crashes(self):
        text = gevo.example_document_text()
        rng = Random(42)
        for _ in range(200):
            i = rng.randrange(len(text))
            j = min(len(text), i + rng.randint(1, 30))
            mutated = text[:i] + rng.choice(["", "}", "{{", ";", "@@", "0"]) + text[j:]
            doc, diagnostics = try_parse_document(mutated)
            assert doc is not None or diagnostics
