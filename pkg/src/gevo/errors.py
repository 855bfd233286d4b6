"""Exception hierarchy for workspace operations, rule evaluation, and dispatch."""

from __future__ import annotations


class GevoError(Exception):
    """Base class for all errors raised by this package."""

    code = "error"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details


# --- schema / raw primitive errors -----------------------------------------

class SchemaError(GevoError):
    """A raw workspace primitive refused to run."""

    code = "schema-error"


class DuplicateName(SchemaError):
    code = "duplicate-name"


class UnknownClass(SchemaError):
    code = "unknown-class"


class UnknownGraph(SchemaError):
    code = "unknown-graph"


class DanglingEndpoint(SchemaError):
    code = "dangling-endpoint"


class EndpointNotInGraph(SchemaError):
    code = "endpoint-not-in-graph"


class IncidentRelationsRemain(SchemaError):
    code = "incident-relations-remain"


class StillAttached(SchemaError):
    code = "still-attached"


class NotPresent(SchemaError):
    code = "not-present"


class AlreadyPresent(SchemaError):
    code = "already-present"


class UnknownMember(SchemaError):
    code = "unknown-member"


class DuplicateMember(SchemaError):
    code = "duplicate-member"


class NotInAnyGraph(SchemaError):
    code = "not-in-any-graph"


class AmbiguousContainment(SchemaError):
    code = "ambiguous-containment"


# --- versioning errors ------------------------------------------------------

class VersioningError(SchemaError):
    code = "versioning-error"


class NotVersionable(VersioningError):
    code = "not-versionable"


class AlreadyVersionedInPropagation(VersioningError):
    code = "already-versioned-in-propagation"


class EndpointsAlreadySet(VersioningError):
    code = "endpoints-already-set"


class DanglingVersionEndpoints(VersioningError):
    code = "dangling-version-endpoints"


# --- rule / engine errors ---------------------------------------------------

class RuleError(GevoError):
    """A rule authoring or registry error."""

    code = "rule-error"


class UnknownStrategy(RuleError):
    code = "unknown-strategy"


class KindMismatch(RuleError):
    code = "kind-mismatch"


class UnboundVariable(RuleError):
    code = "unbound-variable"


class UnknownBuiltin(RuleError):
    code = "unknown-builtin"


class UnknownPrimitive(RuleError):
    code = "unknown-primitive"


class StepLimitExceeded(RuleError):
    code = "step-limit-exceeded"


class PropagationAborted(GevoError):
    """A dispatch failed mid-propagation; the workspace was rolled back.

    Carries the partial trace recorded up to the failing action and the
    underlying cause.
    """

    code = "propagation-aborted"

    def __init__(self, cause: Exception, trace):
        super().__init__(f"propagation aborted: {cause}")
        self.cause = cause
        self.trace = trace


class DslParseError(GevoError):
    """Raised when a document cannot be parsed; carries diagnostics."""

    code = "parse-error"

    def __init__(self, diagnostics):
        first = diagnostics[0] if diagnostics else None
        msg = str(first) if first is not None else "parse error"
        super().__init__(msg)
        self.diagnostics = list(diagnostics)
