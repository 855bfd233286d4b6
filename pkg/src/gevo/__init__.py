"""gevo: a rule-driven engine and workbench for evolving graph classes.

Graph classes (node classes plus semantic relation classes) evolve through
user-definable event/condition/action rules grouped into propagation
strategies; propagation is depth-first, duplicate-suppressed, traced, and
atomic.  Versioning of nodes, relations and graphs propagates through the
same machinery.
"""

from importlib import resources

from .builtin import (
    BUILTIN_TEXT,
    builtin_document,
    install_builtins,
    install_default_version_rules,
)
from .document import (
    engine_from_json,
    engine_from_text,
    load_engine_file,
    load_engine_text,
    parse_event_expr,
    replace_rules,
    rules_document,
    to_json_document,
    trace_json_text,
)
from .dsl import parse_document, print_document
from .engine import Engine, PropagationTrace, TraceEntry
from .errors import GevoError, PropagationAborted
from .events import Event
from .rules import Direction, EvolutionRule, Mode, PropagationStrategy
from .schema import (
    ClassId,
    ClassKind,
    GraphClass,
    Member,
    NodeClass,
    RelationClass,
    Workspace,
    validate,
    validate_all,
)
from .versioning import VersionRegistry, version_of

__version__ = "0.1.0"


def example_document_text() -> str:
    """The shipped GR0 example workspace (nodes C1..C3, relations RC1/h2)."""
    return resources.files("gevo.data").joinpath("gr0.gevo").read_text("utf-8")


def example_engine() -> Engine:
    return engine_from_text(example_document_text())


__all__ = [
    "BUILTIN_TEXT", "ClassId", "ClassKind", "Direction", "Engine", "Event",
    "EvolutionRule", "GevoError", "GraphClass", "Member", "Mode", "NodeClass",
    "PropagationAborted", "PropagationStrategy", "PropagationTrace",
    "RelationClass", "TraceEntry", "VersionRegistry", "Workspace",
    "builtin_document", "engine_from_json", "engine_from_text",
    "example_document_text", "example_engine", "install_builtins",
    "install_default_version_rules", "load_engine_file", "load_engine_text",
    "parse_document", "parse_event_expr", "print_document", "replace_rules",
    "rules_document", "to_json_document", "trace_json_text", "validate",
    "validate_all", "version_of",
]
