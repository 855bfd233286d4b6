"""Recursive-descent parser for .gevo documents.

Parsing never raises on bad input when called through try_parse_document: it
collects diagnostics with line/column and recovers at the next declaration.
Cross-reference resolution (rule names, event names, strategy contents) runs
as a second pass over the whole document, so forward references are fine.
"""

from __future__ import annotations

from ..errors import DslParseError
from ..rules import (
    BoolOp,
    Call,
    Compare,
    Direction,
    ExecAction,
    FieldAccess,
    ForEachAction,
    LetStep,
    Lit,
    Mode,
    Not,
    RaiseAction,
    Var,
    WhenStep,
)
from ..schema import ClassKind
from .ast import (
    BindDecl,
    Diagnostic,
    EventDecl,
    GraphDecl,
    MemberDecl,
    NodeDecl,
    RelationDecl,
    RuleDecl,
    RuleDocument,
    StrategyDecl,
)
from .lexer import LexError, Token, tokenize
from .resolve import resolve_document

ITEM_KEYWORDS = ("event", "node", "relation", "graph", "rule", "strategy", "bind")
KINDS = {"graph": ClassKind.GRAPH, "node": ClassKind.NODE, "relation": ClassKind.RELATION}
SIDE_LITERALS = ("afferent", "efferent")


class _ParseError(Exception):
    def __init__(self, token: Token, message: str):
        super().__init__(message)
        self.token = token
        self.message = message


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self.diagnostics: list[Diagnostic] = []

    # -- token plumbing --------------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.type != "EOF":
            self.pos += 1
        return tok

    def at(self, type_: str, value: str | None = None) -> bool:
        tok = self.peek()
        return tok.type == type_ and (value is None or tok.value == value)

    def at_name(self, value: str) -> bool:
        return self.at("NAME", value)

    def expect(self, type_: str, value: str | None = None) -> Token:
        tok = self.peek()
        if tok.type != type_ or (value is not None and tok.value != value):
            want = value if value is not None else type_
            raise _ParseError(tok, f"expected {want!r}, found {tok.value or tok.type!r}")
        return self.next()

    def expect_punct(self, value: str) -> Token:
        return self.expect("PUNCT", value)

    def name(self) -> str:
        return self.expect("NAME").value

    def kind(self) -> ClassKind:
        tok = self.expect("NAME")
        if tok.value not in KINDS:
            raise _ParseError(tok, f"expected graph, node or relation, found {tok.value!r}")
        return KINDS[tok.value]

    def error(self, message: str) -> _ParseError:
        return _ParseError(self.peek(), message)

    # -- recovery ----------------------------------------------------------------

    def record(self, err: _ParseError) -> None:
        self.diagnostics.append(Diagnostic(err.token.line, err.token.col, err.message))

    def synchronize(self) -> None:
        """Skip to the next top-level declaration keyword, tracking braces."""
        depth = 0
        while not self.at("EOF"):
            tok = self.peek()
            if tok.type == "PUNCT" and tok.value == "{":
                depth += 1
            elif tok.type == "PUNCT" and tok.value == "}":
                depth = max(0, depth - 1)
                self.next()
                if depth == 0:
                    return
                continue
            elif depth == 0 and tok.type == "NAME" and tok.value in ITEM_KEYWORDS:
                return
            elif depth == 0 and tok.type == "PUNCT" and tok.value == ";":
                self.next()
                return
            self.next()

    # -- document ---------------------------------------------------------------

    def document(self) -> RuleDocument:
        items = []
        while not self.at("EOF"):
            start = self.pos
            try:
                items.append(self.item())
            except _ParseError as err:
                self.record(err)
                if self.pos == start:
                    self.next()
                self.synchronize()
        return RuleDocument(tuple(items))

    def item(self):
        tok = self.peek()
        if tok.type != "NAME" or tok.value not in ITEM_KEYWORDS:
            raise self.error(
                f"expected a declaration (one of {', '.join(ITEM_KEYWORDS)})")
        return {
            "event": self.event_decl,
            "node": self.node_decl,
            "relation": self.relation_decl,
            "graph": self.graph_decl,
            "rule": self.rule_decl,
            "strategy": self.strategy_decl,
            "bind": self.bind_decl,
        }[tok.value]()

    # -- declarations ------------------------------------------------------------

    def event_decl(self) -> EventDecl:
        self.expect("NAME", "event")
        name = self.name()
        self.expect_punct("(")
        params = []
        while not self.at("PUNCT", ")"):
            params.append(self.name())
            if not self.at("PUNCT", ")"):
                self.expect_punct(",")
        self.expect_punct(")")
        self.expect_punct(":")
        kind = self.kind()
        self.expect_punct(";")
        return EventDecl(name, tuple(params), kind)

    def node_decl(self) -> NodeDecl:
        self.expect("NAME", "node")
        name = self.name()
        versionable = True
        if self.at_name("versionable"):
            self.next()
            self.expect_punct("=")
            versionable = self.boolean()
        members = ()
        if self.at("PUNCT", "{"):
            members = self.member_block()
        else:
            self.expect_punct(";")
        return NodeDecl(name, versionable, members)

    def boolean(self) -> bool:
        tok = self.expect("NAME")
        if tok.value not in ("true", "false"):
            raise _ParseError(tok, f"expected true or false, found {tok.value!r}")
        return tok.value == "true"

    def member_block(self) -> tuple:
        self.expect_punct("{")
        members = []
        while not self.at("PUNCT", "}"):
            kw = self.expect("NAME")
            if kw.value not in ("attribute", "method"):
                raise _ParseError(kw, f"expected attribute or method, found {kw.value!r}")
            name = self.name()
            signature = ""
            if self.at("STRING"):
                signature = self.next().value
            self.expect_punct(";")
            members.append(MemberDecl(kw.value, name, signature))
        self.expect_punct("}")
        return tuple(members)

    def relation_decl(self) -> RelationDecl:
        self.expect("NAME", "relation")
        name = self.name()
        self.expect_punct(":")
        nature = self.name()
        self.expect_punct("(")
        source = self.name()
        self.expect_punct("->")
        destination = self.name()
        self.expect_punct(")")
        flags = {"exclusive": True, "dependent": False, "predominant": False,
                 "card": 1, "reverse-card": 1}
        while self.at("NAME") and self.peek().value in flags:
            key = self.next().value
            self.expect_punct("=")
            if key in ("card", "reverse-card"):
                flags[key] = self.cardinality()
            else:
                flags[key] = self.boolean()
        members = ()
        if self.at("PUNCT", "{"):
            members = self.member_block()
        else:
            self.expect_punct(";")
        return RelationDecl(name, nature, source, destination,
                            flags["exclusive"], flags["dependent"],
                            flags["predominant"], flags["card"],
                            flags["reverse-card"], members)

    def cardinality(self) -> int | str:
        if self.at("INT"):
            return int(self.next().value)
        tok = self.expect("NAME")
        if tok.value != "n":
            raise _ParseError(tok, f"expected an integer or n, found {tok.value!r}")
        return "n"

    def id_list(self) -> tuple[str, ...]:
        self.expect_punct("[")
        out = []
        while not self.at("PUNCT", "]"):
            out.append(self.name())
            if not self.at("PUNCT", "]"):
                self.expect_punct(",")
        self.expect_punct("]")
        return tuple(out)

    def graph_decl(self) -> GraphDecl:
        self.expect("NAME", "graph")
        name = self.name()
        self.expect_punct("{")
        nodes: tuple[str, ...] = ()
        relations: tuple[str, ...] = ()
        members = []
        while not self.at("PUNCT", "}"):
            kw = self.expect("NAME")
            if kw.value in ("nodes", "relations"):
                self.expect_punct("=")
                ids = self.id_list()
                self.expect_punct(";")
                if kw.value == "nodes":
                    nodes = ids
                else:
                    relations = ids
            elif kw.value in ("attribute", "method"):
                mname = self.name()
                signature = self.next().value if self.at("STRING") else ""
                self.expect_punct(";")
                members.append(MemberDecl(kw.value, mname, signature))
            else:
                raise _ParseError(kw, f"unexpected {kw.value!r} in graph body")
        self.expect_punct("}")
        return GraphDecl(name, nodes, relations, tuple(members))

    def rule_decl(self) -> RuleDecl:
        self.expect("NAME", "rule")
        name = self.name()
        self.expect_punct(":")
        kind = self.kind()
        direction = mode = None
        while self.at_name("direction") or self.at_name("mode"):
            kw = self.next().value
            self.expect_punct("=")
            tok = self.expect("NAME")
            if kw == "direction":
                try:
                    direction = Direction(tok.value.lower())
                except ValueError:
                    raise _ParseError(tok, f"unknown direction {tok.value!r}") from None
            else:
                try:
                    mode = Mode(tok.value.lower())
                except ValueError:
                    raise _ParseError(tok, f"unknown mode {tok.value!r}") from None
        if (direction or mode) and kind != ClassKind.RELATION:
            raise self.error("direction/mode apply to relation rules only")
        self.expect_punct("{")
        self.expect("NAME", "on")
        event = self.name()
        params, param_kinds = self.pattern_params()
        condition = []
        while self.at_name("when") or self.at_name("let"):
            kw = self.next().value
            if kw == "when":
                condition.append(WhenStep(self.expr()))
            else:
                var = self.name()
                self.expect_punct("=")
                condition.append(LetStep(var, self.expr()))
        self.expect("NAME", "do")
        self.expect_punct("{")
        actions = []
        while not self.at("PUNCT", "}"):
            actions.append(self.action())
        self.expect_punct("}")
        self.expect_punct("}")
        return RuleDecl(name, kind, event, params, param_kinds,
                        tuple(condition), tuple(actions), direction, mode)

    def pattern_params(self):
        self.expect_punct("(")
        params, kinds = [], []
        while not self.at("PUNCT", ")"):
            params.append(self.name())
            if self.at("PUNCT", ":"):
                self.next()
                kinds.append(self.kind())
            else:
                kinds.append(None)
            if not self.at("PUNCT", ")"):
                self.expect_punct(",")
        self.expect_punct(")")
        return tuple(params), tuple(kinds)

    def action(self):
        tok = self.expect("NAME")
        if tok.value == "raise":
            func, args = self.call()
            self.expect_punct(";")
            return RaiseAction(func, args)
        if tok.value == "exec":
            func, args = self.call()
            self.expect_punct(";")
            return ExecAction(func, args)
        if tok.value == "for":
            var = self.name()
            self.expect("NAME", "in")
            collection = self.expr()
            self.expect_punct("{")
            body = []
            while not self.at("PUNCT", "}"):
                body.append(self.action())
            self.expect_punct("}")
            return ForEachAction(var, collection, tuple(body))
        raise _ParseError(tok, f"expected raise, exec or for, found {tok.value!r}")

    def call(self):
        func = self.name()
        self.expect_punct("(")
        args = []
        while not self.at("PUNCT", ")"):
            args.append(self.expr())
            if not self.at("PUNCT", ")"):
                self.expect_punct(",")
        self.expect_punct(")")
        return func, tuple(args)

    def strategy_decl(self) -> StrategyDecl:
        self.expect("NAME", "strategy")
        name = self.name()
        self.expect_punct(":")
        kind = self.kind()
        self.expect_punct("{")
        cats = {"creation": (), "destruction": (), "modification": ()}
        while not self.at("PUNCT", "}"):
            kw = self.expect("NAME")
            if kw.value not in cats:
                raise _ParseError(
                    kw, f"expected creation, destruction or modification, found {kw.value!r}")
            self.expect("NAME", "rules")
            self.expect_punct("=")
            cats[kw.value] = self.id_list()
            self.expect_punct(";")
        self.expect_punct("}")
        return StrategyDecl(name, kind, cats["creation"], cats["destruction"],
                            cats["modification"])

    def bind_decl(self) -> BindDecl:
        self.expect("NAME", "bind")
        strategy = self.name()
        self.expect("NAME", "to")
        if self.at_name("kind"):
            self.next()
            kind = self.kind()
            self.expect_punct(";")
            return BindDecl(strategy, (), kind)
        targets = [self.name()]
        while self.at("PUNCT", ","):
            self.next()
            targets.append(self.name())
        self.expect_punct(";")
        return BindDecl(strategy, tuple(targets), None)

    # -- expressions ----------------------------------------------------------

    def expr(self):
        return self.or_expr()

    def or_expr(self):
        left = self.and_expr()
        while self.at_name("or"):
            self.next()
            left = BoolOp("or", left, self.and_expr())
        return left

    def and_expr(self):
        left = self.not_expr()
        while self.at_name("and"):
            self.next()
            left = BoolOp("and", left, self.not_expr())
        return left

    def not_expr(self):
        if self.at_name("not"):
            self.next()
            return Not(self.not_expr())
        return self.cmp_expr()

    def cmp_expr(self):
        left = self.postfix()
        if self.at("PUNCT", "==") or self.at("PUNCT", "!="):
            op = self.next().value
            return Compare(op, left, self.postfix())
        return left

    def postfix(self):
        value = self.primary()
        while self.at("PUNCT", "."):
            self.next()
            value = FieldAccess(value, self.name())
        return value

    def primary(self):
        tok = self.peek()
        if tok.type == "STRING":
            self.next()
            return Lit(tok.value)
        if tok.type == "INT":
            self.next()
            return Lit(int(tok.value))
        if tok.type == "PUNCT" and tok.value == "(":
            self.next()
            inner = self.expr()
            self.expect_punct(")")
            return inner
        if tok.type == "NAME":
            if self.tokens[self.pos + 1].type == "PUNCT" and \
                    self.tokens[self.pos + 1].value == "(":
                func, args = self.call()
                return Call(func, args)
            self.next()
            if tok.value in ("true", "false"):
                return Lit(tok.value == "true")
            if tok.value in SIDE_LITERALS:
                return Lit(tok.value)
            return Var(tok.value)
        raise _ParseError(tok, f"expected an expression, found {tok.value or tok.type!r}")


def try_parse_document(text: str, extra_classes=None):
    """Parse and resolve; returns (document or None, diagnostics).

    extra_classes maps ClassKind to the class names an embedding workspace
    already knows, so rules-only documents can bind strategies to them.
    """
    try:
        tokens = tokenize(text)
    except LexError as err:
        return None, [Diagnostic(err.line, err.col, err.message)]
    parser = _Parser(tokens)
    doc = parser.document()
    diagnostics = list(parser.diagnostics)
    if not diagnostics:
        diagnostics.extend(resolve_document(doc, extra_classes))
    if diagnostics:
        return None, diagnostics
    return doc, []


def parse_document(text: str, extra_classes=None) -> RuleDocument:
    """Parse a document, raising with the collected diagnostics on failure."""
    doc, diagnostics = try_parse_document(text, extra_classes)
    if doc is None:
        raise DslParseError(diagnostics)
    return doc
