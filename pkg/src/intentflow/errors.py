"""Exception types shared across the package."""

from __future__ import annotations


class IntentFlowError(Exception):
    """Base class for all package errors."""


class ValidationError(IntentFlowError):
    """Input rejected by a domain invariant (empty field, out-of-domain value, ...)."""


class NotFound(IntentFlowError):
    """Referenced entity (session, intent, dimension, page, action) does not exist."""


class StateError(IntentFlowError):
    """Operation precondition not met for the session's current state."""


class LinkValidationError(IntentFlowError):
    """Links handed to append_page violate a Link invariant."""


class AlreadyAnnotated(IntentFlowError):
    """Action is not pending annotation (widget actions are final)."""


class MissingVariable(IntentFlowError):
    """Prompt template placeholder missing from the supplied variables."""

    def __init__(self, kind: str, variable: str):
        super().__init__(f"template for {kind!r} is missing variable {variable!r}")
        self.kind = kind
        self.variable = variable


class SchemaError(IntentFlowError):
    """A single response payload failed schema validation.

    ``code`` is a stable machine-readable identifier (e.g. ``goal_field_empty``)
    used by the eval harness to attribute failures to checks.
    """

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class SchemaViolation(IntentFlowError):
    """Structured completion failed validation after exhausting retries."""

    def __init__(self, kind: str, attempts: int, cause: Exception):
        super().__init__(f"{kind} response invalid after {attempts} attempt(s): {cause}")
        self.kind = kind
        self.attempts = attempts
        self.cause = cause
        self.code = getattr(cause, "code", "malformed_response")


class EmptyOutput(IntentFlowError):
    """Output module produced a document with no text."""


class ProviderUnreachable(IntentFlowError):
    """Completion provider could not be reached or rejected the request."""


class ProviderTimeout(IntentFlowError):
    """Completion request exceeded the configured timeout."""


class ReplayMiss(IntentFlowError):
    """Replay provider has no recorded response for the request key."""

    def __init__(self, key: str):
        super().__init__(f"no recorded response for request key {key}")
        self.key = key


class TurnFailed(IntentFlowError):
    """A pipeline stage failed; the session was left unchanged."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"turn failed at stage {stage!r}: {cause}")
        self.stage = stage
        self.cause = cause


class StoreLocked(IntentFlowError):
    """Another live service instance owns the data directory."""


class TurnInFlight(IntentFlowError):
    """A mutation arrived while another turn holds the session's writer slot."""


class ParseError(IntentFlowError):
    """Corpus or import file could not be parsed."""
