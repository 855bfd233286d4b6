"""Rule-language front end: parser, resolver, and canonical printer."""

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
from .parser import parse_document, try_parse_document
from .printer import print_document

__all__ = [
    "BindDecl", "Diagnostic", "EventDecl", "GraphDecl", "MemberDecl",
    "NodeDecl", "RelationDecl", "RuleDecl", "RuleDocument", "StrategyDecl",
    "parse_document", "try_parse_document", "print_document",
]
