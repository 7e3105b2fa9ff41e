"""Uniform access to completion providers with templates, schemas, and fixtures."""

from intentflow.gateway.client import Gateway, StructuredResponse
from intentflow.gateway.config import LARGE_MODEL, SMALL_MODEL, ModuleKind, ProviderConfig
from intentflow.gateway.providers import (
    CompletionRequest,
    FixtureStore,
    Provider,
    RecordingProvider,
    RemoteProvider,
    ReplayProvider,
    fixture_provider,
    request_key,
)
from intentflow.gateway.schemas import (
    DimensionItem,
    DimensionsPayload,
    EntrypointPayload,
    GoalPayload,
    IntentItem,
    IntentsPayload,
    LinkingPayload,
    OutputPayload,
    OutputSectionItem,
    parse_payload,
    validate_payload,
)
from intentflow.gateway.templates import TEMPLATES, render_template

__all__ = [name for name in dir() if not name.startswith("_")]
