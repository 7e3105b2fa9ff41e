"""Domain types for writing sessions: panel content, pages, links, actions.

Everything here is plain data with ``to_dict``/``from_dict`` converters used by
the session schema. No type in this module talks to a model or the network.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from intentflow.errors import ValidationError

SLIDER_MIN = 1
SLIDER_MAX = 5


class IntentOrigin(str, Enum):
    EXTRACTED = "extracted"
    USER_ADDED = "user_added"
    REVISED = "revised"


class UiKind(str, Enum):
    SLIDER = "slider"
    RADIO = "radio"
    HASHTAG = "hashtag"


class ActionKind(str, Enum):
    ADD = "Add"
    DELETE = "Delete"
    CORRECT = "Correct"
    ADJUST = "Adjust"
    ROLLBACK = "Rollback"


class ActionSource(str, Enum):
    CHAT_PROMPT = "chat_prompt"
    TARGETED_PROMPT = "targeted_prompt"
    GOAL_EDIT = "goal_edit"
    INTENT_WIDGET = "intent_widget"
    DIMENSION_WIDGET = "dimension_widget"
    ROLLBACK_BUTTON = "rollback_button"


def _require_clean_text(value: str, what: str) -> str:
    """Reject control characters; panel fields are short plain text."""
    if any(ord(ch) < 0x20 or ord(ch) == 0x7F for ch in value):
        raise ValidationError(f"{what} must not contain control characters")
    return value


@dataclass
class Goal:
    """High-level task objective: what to write, in which domain, about what."""

    task_goal: str = ""
    writing_domain: str = ""
    topic: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {
            "task_goal": self.task_goal,
            "writing_domain": self.writing_domain,
            "topic": self.topic,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Goal":
        return cls(
            task_goal=data.get("task_goal", ""),
            writing_domain=data.get("writing_domain", ""),
            topic=data.get("topic", ""),
        )

    def is_complete(self) -> bool:
        return bool(self.task_goal and self.writing_domain and self.topic)


@dataclass
class Intent:
    """One discrete, editable intent with a keep flag and stable identity."""

    id: str
    text: str
    kept: bool = False
    origin: IntentOrigin = IntentOrigin.EXTRACTED
    created_turn: int = 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "text": self.text,
            "kept": self.kept,
            "origin": self.origin.value,
            "created_turn": self.created_turn,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Intent":
        return cls(
            id=data["id"],
            text=data["text"],
            kept=bool(data.get("kept", False)),
            origin=IntentOrigin(data.get("origin", "extracted")),
            created_turn=int(data.get("created_turn", 0)),
        )


@dataclass
class Dimension:
    """One adjustable intent dimension rendered as a slider, radio group, or hashtag set.

    Values are held canonically as strings: slider levels "1".."5", the selected
    radio option, or the current tag set. ``domain`` lists the selectable values
    for slider/radio; hashtags are an open set so their domain list is empty.
    """

    id: str
    title: str
    ui_kind: UiKind
    domain: list[str] = field(default_factory=list)
    current: list[str] = field(default_factory=list)
    value_descriptions: dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "title": self.title,
            "ui_kind": self.ui_kind.value,
            "domain": list(self.domain),
            "current": list(self.current),
            "value_descriptions": dict(self.value_descriptions),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Dimension":
        return cls(
            id=data["id"],
            title=data["title"],
            ui_kind=UiKind(data["ui_kind"]),
            domain=list(data.get("domain", [])),
            current=list(data.get("current", [])),
            value_descriptions=dict(data.get("value_descriptions", {})),
        )

    @property
    def slider_level(self) -> int:
        if self.ui_kind is not UiKind.SLIDER or not self.current:
            raise ValidationError(f"dimension {self.id} is not a slider with a value")
        return int(self.current[0])

    def has_value(self, value: str) -> bool:
        return value in self.current


@dataclass
class Section:
    """One document section: optional short header plus body text."""

    body: str
    header: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {"header": self.header, "body": self.body}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Section":
        return cls(body=data["body"], header=data.get("header"))


@dataclass
class OutputDocument:
    """Sectioned generation result with explicit canonical-text offsets.

    ``canonical_text`` is the concatenation of section bodies; ``offsets[i]``
    is the half-open [start, end) range of section i's body within it, so the
    offset table partitions the text exactly.
    """

    sections: list[Section]
    canonical_text: str = ""
    offsets: list[tuple[int, int]] = field(default_factory=list)

    @classmethod
    def from_sections(cls, sections: list[Section]) -> "OutputDocument":
        text_parts: list[str] = []
        offsets: list[tuple[int, int]] = []
        pos = 0
        for section in sections:
            start = pos
            pos += len(section.body)
            offsets.append((start, pos))
            text_parts.append(section.body)
        return cls(sections=list(sections), canonical_text="".join(text_parts), offsets=offsets)

    def check_offsets(self) -> None:
        pos = 0
        if len(self.offsets) != len(self.sections):
            raise ValidationError("section offset table length mismatch")
        for section, (start, end) in zip(self.sections, self.offsets):
            if start != pos or end - start != len(section.body):
                raise ValidationError("section offsets do not partition canonical_text")
            pos = end
        if pos != len(self.canonical_text):
            raise ValidationError("section offsets do not cover canonical_text")

    def to_dict(self) -> dict[str, Any]:
        return {
            "sections": [s.to_dict() for s in self.sections],
            "canonical_text": self.canonical_text,
            "offsets": [[start, end] for start, end in self.offsets],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "OutputDocument":
        doc = cls(
            sections=[Section.from_dict(s) for s in data["sections"]],
            canonical_text=data["canonical_text"],
            offsets=[(int(a), int(b)) for a, b in data["offsets"]],
        )
        doc.check_offsets()
        return doc


@dataclass(frozen=True)
class IntentRef:
    """Link source: an intent by id."""

    intent_id: str

    def sort_key(self) -> tuple:
        return (0, self.intent_id)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": "intent", "intent_id": self.intent_id}


@dataclass(frozen=True)
class DimensionValueRef:
    """Link source: one value of a dimension."""

    dimension_id: str
    value: str

    def sort_key(self) -> tuple:
        return (1, self.dimension_id, self.value)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": "dimension_value", "dimension_id": self.dimension_id, "value": self.value}


LinkSource = IntentRef | DimensionValueRef


def link_source_from_dict(data: dict[str, Any]) -> LinkSource:
    if data["kind"] == "intent":
        return IntentRef(intent_id=data["intent_id"])
    if data["kind"] == "dimension_value":
        return DimensionValueRef(dimension_id=data["dimension_id"], value=data["value"])
    raise ValidationError(f"unknown link source kind {data['kind']!r}")


@dataclass
class Link:
    """Character spans of canonical_text associated with one intent or dimension value."""

    source: LinkSource
    spans: list[tuple[int, int]] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "source": self.source.to_dict(),
            "spans": [[start, end] for start, end in self.spans],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Link":
        return cls(
            source=link_source_from_dict(data["source"]),
            spans=[(int(a), int(b)) for a, b in data["spans"]],
        )


@dataclass
class PanelSnapshot:
    """Deep copy of the panel (goal, intents, dimensions) frozen into a page."""

    goal: Goal
    intents: list[Intent]
    dimensions: list[Dimension]

    @classmethod
    def capture(cls, goal: Goal, intents: list[Intent], dimensions: list[Dimension]) -> "PanelSnapshot":
        return cls(
            goal=copy.deepcopy(goal),
            intents=copy.deepcopy(intents),
            dimensions=copy.deepcopy(dimensions),
        )

    def intent_by_id(self, intent_id: str) -> Intent | None:
        for intent in self.intents:
            if intent.id == intent_id:
                return intent
        return None

    def dimension_by_id(self, dimension_id: str) -> Dimension | None:
        for dimension in self.dimensions:
            if dimension.id == dimension_id:
                return dimension
        return None

    def to_dict(self) -> dict[str, Any]:
        return {
            "goal": self.goal.to_dict(),
            "intents": [i.to_dict() for i in self.intents],
            "dimensions": [d.to_dict() for d in self.dimensions],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "PanelSnapshot":
        return cls(
            goal=Goal.from_dict(data["goal"]),
            intents=[Intent.from_dict(i) for i in data["intents"]],
            dimensions=[Dimension.from_dict(d) for d in data["dimensions"]],
        )


@dataclass(frozen=True)
class Provenance:
    """How a page came to exist; rollbacks record the copied page number."""

    kind: str  # initial | chat_prompt | targeted_prompt | panel_edit | rollback
    rollback_of: int | None = None

    INITIAL = "initial"
    CHAT_PROMPT = "chat_prompt"
    TARGETED_PROMPT = "targeted_prompt"
    PANEL_EDIT = "panel_edit"
    ROLLBACK = "rollback"

    @classmethod
    def rollback_of_page(cls, page_number: int) -> "Provenance":
        return cls(kind=cls.ROLLBACK, rollback_of=page_number)

    def label(self) -> str:
        if self.kind == self.ROLLBACK:
            return f"rollback_of({self.rollback_of})"
        return self.kind

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"kind": self.kind}
        if self.rollback_of is not None:
            data["rollback_of"] = self.rollback_of
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Provenance":
        return cls(kind=data["kind"], rollback_of=data.get("rollback_of"))


@dataclass
class OutputPage:
    """One immutable generation result; pages are append-only and 1-based."""

    page_number: int
    document: OutputDocument
    snapshot: PanelSnapshot
    links: list[Link]
    provenance: Provenance

    def to_dict(self) -> dict[str, Any]:
        return {
            "page_number": self.page_number,
            "document": self.document.to_dict(),
            "snapshot": self.snapshot.to_dict(),
            "links": [link.to_dict() for link in self.links],
            "provenance": self.provenance.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "OutputPage":
        return cls(
            page_number=int(data["page_number"]),
            document=OutputDocument.from_dict(data["document"]),
            snapshot=PanelSnapshot.from_dict(data["snapshot"]),
            links=[Link.from_dict(link) for link in data["links"]],
            provenance=Provenance.from_dict(data["provenance"]),
        )


@dataclass
class PageSummary:
    """Pagination metadata for one page."""

    page_number: int
    provenance: str
    section_count: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "page_number": self.page_number,
            "provenance": self.provenance,
            "section_count": self.section_count,
        }


@dataclass
class DiffSegment:
    kind: str  # equal | inserted | deleted
    text: str

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "text": self.text}


@dataclass
class DiffView:
    """Ordered equal/inserted/deleted runs between two canonical texts."""

    segments: list[DiffSegment]

    def old_text(self) -> str:
        return "".join(s.text for s in self.segments if s.kind in ("equal", "deleted"))

    def new_text(self) -> str:
        return "".join(s.text for s in self.segments if s.kind in ("equal", "inserted"))

    def to_dict(self) -> dict[str, Any]:
        return {"segments": [s.to_dict() for s in self.segments]}


@dataclass
class ActionRecord:
    """One intent-communication input, classified into the five-kind taxonomy."""

    action_id: str
    kind: ActionKind
    source: ActionSource
    auto_classified: bool
    annotation_pending: bool
    timestamp: str
    payload: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "action_id": self.action_id,
            "kind": self.kind.value,
            "source": self.source.value,
            "auto_classified": self.auto_classified,
            "annotation_pending": self.annotation_pending,
            "timestamp": self.timestamp,
            "payload": dict(self.payload),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ActionRecord":
        return cls(
            action_id=data["action_id"],
            kind=ActionKind(data["kind"]),
            source=ActionSource(data["source"]),
            auto_classified=bool(data["auto_classified"]),
            annotation_pending=bool(data["annotation_pending"]),
            timestamp=data["timestamp"],
            payload=dict(data.get("payload", {})),
        )


@dataclass
class ChatEntry:
    """One chat panel message with any status lines shown alongside it."""

    role: str  # user | assistant
    text: str
    status_events: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {"role": self.role, "text": self.text, "status_events": list(self.status_events)}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ChatEntry":
        return cls(
            role=data["role"],
            text=data["text"],
            status_events=list(data.get("status_events", [])),
        )


@dataclass
class TelemetryEvent:
    """Non-action interaction (keep toggle, page navigation, hover, view toggles)."""

    event: str
    timestamp: str
    detail: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {"event": self.event, "timestamp": self.timestamp, "detail": dict(self.detail)}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "TelemetryEvent":
        return cls(event=data["event"], timestamp=data["timestamp"], detail=dict(data.get("detail", {})))
