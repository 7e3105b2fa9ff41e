"""Domain model: session state, pages, diff, links, serialization."""

from intentflow.core.diff import compute_diff, diff_texts, diff_tokens, tokenize
from intentflow.core.links import LinkRepairReport, check_links, validate_links
from intentflow.core.serialize import (
    SCHEMA_ID,
    canonical_json,
    dumps_session,
    loads_session,
    pages_hash,
    session_from_document,
    session_hash,
    session_to_document,
)
from intentflow.core.session import (
    AddIntent,
    AddTag,
    AppliedTurn,
    DeleteIntent,
    PanelChanges,
    PanelEdit,
    PanelRevision,
    RegenEffect,
    RemoveTag,
    ReviseIntent,
    SessionState,
    SetRadio,
    SetSlider,
    ToggleKeep,
    TurnEffect,
    edit_from_dict,
    edit_to_dict,
    new_session,
)
from intentflow.core.types import (
    ActionKind,
    ActionRecord,
    ActionSource,
    ChatEntry,
    Dimension,
    DimensionValueRef,
    DiffSegment,
    DiffView,
    Goal,
    Intent,
    IntentOrigin,
    IntentRef,
    Link,
    LinkSource,
    OutputDocument,
    OutputPage,
    PageSummary,
    PanelSnapshot,
    Provenance,
    Section,
    TelemetryEvent,
    UiKind,
)

__all__ = [name for name in dir() if not name.startswith("_")]
