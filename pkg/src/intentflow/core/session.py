"""Session state machine: panel edits, append-only page history, rollback, action log.

All mutations are deterministic given their inputs. Timestamps come from a
per-session logical clock (fixed epoch + tick) so that identical action
scripts serialize identically; nothing in core reads the wall clock.
"""

from __future__ import annotations

import copy
import re
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone
from typing import Any

from intentflow.core.links import check_links
from intentflow.core.types import (
    SLIDER_MAX,
    SLIDER_MIN,
    ActionKind,
    ActionRecord,
    ActionSource,
    ChatEntry,
    Dimension,
    Goal,
    Intent,
    IntentOrigin,
    Link,
    OutputDocument,
    OutputPage,
    PageSummary,
    PanelSnapshot,
    Provenance,
    TelemetryEvent,
    UiKind,
    _require_clean_text,
)
from intentflow.errors import AlreadyAnnotated, NotFound, StateError, ValidationError

CLOCK_EPOCH = datetime(2025, 1, 1, tzinfo=timezone.utc)
MAX_INTENTS = 10
MAX_DIMENSIONS = 7

GOAL_FIELDS = ("task_goal", "writing_domain", "topic")

_ID_NUM_RE = re.compile(r"(\d+)$")


# ---------------------------------------------------------------------------
# Edit commands
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AddIntent:
    text: str


@dataclass(frozen=True)
class DeleteIntent:
    intent_id: str


@dataclass(frozen=True)
class ReviseIntent:
    intent_id: str
    text: str


@dataclass(frozen=True)
class ToggleKeep:
    intent_id: str


@dataclass(frozen=True)
class SetSlider:
    dimension_id: str
    level: int


@dataclass(frozen=True)
class SetRadio:
    dimension_id: str
    option: str


@dataclass(frozen=True)
class AddTag:
    dimension_id: str
    tag: str


@dataclass(frozen=True)
class RemoveTag:
    dimension_id: str
    tag: str


IntentEdit = AddIntent | DeleteIntent | ReviseIntent | ToggleKeep
DimensionEdit = SetSlider | SetRadio | AddTag | RemoveTag
PanelEdit = IntentEdit | DimensionEdit

_EDIT_TYPES: dict[str, type] = {
    "add_intent": AddIntent,
    "delete_intent": DeleteIntent,
    "revise_intent": ReviseIntent,
    "toggle_keep": ToggleKeep,
    "set_slider": SetSlider,
    "set_radio": SetRadio,
    "add_tag": AddTag,
    "remove_tag": RemoveTag,
}
_EDIT_NAMES = {cls: name for name, cls in _EDIT_TYPES.items()}


def edit_to_dict(cmd: PanelEdit) -> dict[str, Any]:
    data = {"op": _EDIT_NAMES[type(cmd)]}
    data.update(cmd.__dict__)
    return data


def edit_from_dict(data: dict[str, Any]) -> PanelEdit:
    kwargs = {k: v for k, v in data.items() if k != "op"}
    try:
        return _EDIT_TYPES[data["op"]](**kwargs)
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed edit command: {data!r}") from exc


# ---------------------------------------------------------------------------
# Effects and results
# ---------------------------------------------------------------------------


@dataclass
class PanelRevision:
    """Outcome of a panel edit: what changed and whether regeneration is due."""

    change: str
    regeneration_required: bool
    action_id: str | None = None
    detail: dict[str, Any] = field(default_factory=dict)


@dataclass
class PanelChanges:
    """Turn summary of intent/dimension list deltas."""

    added_intents: list[str] = field(default_factory=list)
    removed_intents: list[str] = field(default_factory=list)
    revised_intents: list[str] = field(default_factory=list)
    added_dimensions: list[str] = field(default_factory=list)
    removed_dimensions: list[str] = field(default_factory=list)
    goal_changed: bool = False

    def to_dict(self) -> dict[str, Any]:
        return {
            "added_intents": list(self.added_intents),
            "removed_intents": list(self.removed_intents),
            "revised_intents": list(self.revised_intents),
            "added_dimensions": list(self.added_dimensions),
            "removed_dimensions": list(self.removed_dimensions),
            "goal_changed": self.goal_changed,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "PanelChanges":
        return cls(
            added_intents=list(data.get("added_intents", [])),
            removed_intents=list(data.get("removed_intents", [])),
            revised_intents=list(data.get("revised_intents", [])),
            added_dimensions=list(data.get("added_dimensions", [])),
            removed_dimensions=list(data.get("removed_dimensions", [])),
            goal_changed=bool(data.get("goal_changed", False)),
        )


@dataclass
class TurnEffect:
    """The deterministic result of one planned chat turn, ready to apply.

    Everything model-dependent is already resolved; applying an effect never
    calls a provider, which is what makes event-log replay exact.
    """

    prompt: str
    source: ActionSource
    targeted_intent: str | None
    reply: str
    status_events: list[str]
    invoked: list[str]
    provisional_kind: ActionKind
    goal: Goal | None
    intents: list[Intent] | None
    dimensions: list[Dimension] | None
    document: OutputDocument | None
    links: list[Link] | None
    link_repairs: int
    panel_changes: PanelChanges

    def to_dict(self) -> dict[str, Any]:
        return {
            "prompt": self.prompt,
            "source": self.source.value,
            "targeted_intent": self.targeted_intent,
            "reply": self.reply,
            "status_events": list(self.status_events),
            "invoked": list(self.invoked),
            "provisional_kind": self.provisional_kind.value,
            "goal": self.goal.to_dict() if self.goal else None,
            "intents": [i.to_dict() for i in self.intents] if self.intents is not None else None,
            "dimensions": [d.to_dict() for d in self.dimensions] if self.dimensions is not None else None,
            "document": self.document.to_dict() if self.document else None,
            "links": [link.to_dict() for link in self.links] if self.links is not None else None,
            "link_repairs": self.link_repairs,
            "panel_changes": self.panel_changes.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "TurnEffect":
        return cls(
            prompt=data["prompt"],
            source=ActionSource(data["source"]),
            targeted_intent=data.get("targeted_intent"),
            reply=data["reply"],
            status_events=list(data.get("status_events", [])),
            invoked=list(data.get("invoked", [])),
            provisional_kind=ActionKind(data["provisional_kind"]),
            goal=Goal.from_dict(data["goal"]) if data.get("goal") else None,
            intents=[Intent.from_dict(i) for i in data["intents"]] if data.get("intents") is not None else None,
            dimensions=[Dimension.from_dict(d) for d in data["dimensions"]]
            if data.get("dimensions") is not None
            else None,
            document=OutputDocument.from_dict(data["document"]) if data.get("document") else None,
            links=[Link.from_dict(link) for link in data["links"]] if data.get("links") is not None else None,
            link_repairs=int(data.get("link_repairs", 0)),
            panel_changes=PanelChanges.from_dict(data.get("panel_changes", {})),
        )


@dataclass
class RegenEffect:
    """Generate+link result appended after a regeneration-signaling panel edit."""

    document: OutputDocument
    links: list[Link]
    link_repairs: int = 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "document": self.document.to_dict(),
            "links": [link.to_dict() for link in self.links],
            "link_repairs": self.link_repairs,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "RegenEffect":
        return cls(
            document=OutputDocument.from_dict(data["document"]),
            links=[Link.from_dict(link) for link in data["links"]],
            link_repairs=int(data.get("link_repairs", 0)),
        )


@dataclass
class AppliedTurn:
    new_page: int | None
    action_id: str


# ---------------------------------------------------------------------------
# Session state
# ---------------------------------------------------------------------------


@dataclass
class SessionState:
    """One writing session. Mutations must be serialized by the caller."""

    session_id: str
    goal: Goal = field(default_factory=Goal)
    intents: list[Intent] = field(default_factory=list)
    dimensions: list[Dimension] = field(default_factory=list)
    pages: list[OutputPage] = field(default_factory=list)
    chat_history: list[ChatEntry] = field(default_factory=list)
    action_log: list[ActionRecord] = field(default_factory=list)
    telemetry: list[TelemetryEvent] = field(default_factory=list)
    turn_counter: int = 0
    intent_seq: int = 0
    dimension_seq: int = 0
    action_seq: int = 0
    clock_tick: int = 0

    # -- identity and clock -------------------------------------------------

    def _now(self) -> str:
        self.clock_tick += 1
        return (CLOCK_EPOCH + timedelta(seconds=self.clock_tick)).isoformat()

    def next_intent_id(self) -> str:
        self.intent_seq += 1
        return f"i{self.intent_seq}"

    def next_dimension_id(self) -> str:
        self.dimension_seq += 1
        return f"d{self.dimension_seq}"

    def _next_action_id(self) -> str:
        self.action_seq += 1
        return f"a{self.action_seq}"

    def _bump_seq_for(self, ids: list[str], attr: str) -> None:
        # Ids assigned while planning a turn must never be reissued.
        highest = getattr(self, attr)
        for item_id in ids:
            match = _ID_NUM_RE.search(item_id)
            if match:
                highest = max(highest, int(match.group(1)))
        setattr(self, attr, highest)

    def log_action(
        self,
        kind: ActionKind,
        source: ActionSource,
        *,
        auto_classified: bool,
        annotation_pending: bool,
        payload: dict[str, Any] | None = None,
    ) -> ActionRecord:
        record = ActionRecord(
            action_id=self._next_action_id(),
            kind=kind,
            source=source,
            auto_classified=auto_classified,
            annotation_pending=annotation_pending,
            timestamp=self._now(),
            payload=payload or {},
        )
        self.action_log.append(record)
        return record

    def record_telemetry(self, event: str, detail: dict[str, Any] | None = None) -> None:
        self.telemetry.append(TelemetryEvent(event=event, timestamp=self._now(), detail=detail or {}))

    # -- lookups --------------------------------------------------------------

    def intent_by_id(self, intent_id: str) -> Intent:
        for intent in self.intents:
            if intent.id == intent_id:
                return intent
        raise NotFound(f"intent {intent_id} not found")

    def dimension_by_id(self, dimension_id: str) -> Dimension:
        for dimension in self.dimensions:
            if dimension.id == dimension_id:
                return dimension
        raise NotFound(f"dimension {dimension_id} not found")

    def action_by_id(self, action_id: str) -> ActionRecord:
        for record in self.action_log:
            if record.action_id == action_id:
                return record
        raise NotFound(f"action {action_id} not found")

    def page_at(self, page_number: int) -> OutputPage:
        if not 1 <= page_number <= len(self.pages):
            raise NotFound(f"page {page_number} does not exist")
        return self.pages[page_number - 1]

    def list_pages(self) -> list[PageSummary]:
        return [
            PageSummary(
                page_number=page.page_number,
                provenance=page.provenance.label(),
                section_count=len(page.document.sections),
            )
            for page in self.pages
        ]

    # -- panel edits ----------------------------------------------------------

    def apply_goal_edit(self, fields: dict[str, str]) -> PanelRevision:
        if self.turn_counter < 1:
            raise StateError("goal can be edited only after the first completed turn")
        unknown = set(fields) - set(GOAL_FIELDS)
        if unknown:
            raise ValidationError(f"unknown goal fields: {sorted(unknown)}")
        if not fields:
            raise ValidationError("goal edit names no fields")
        for name, value in fields.items():
            if not isinstance(value, str) or not value.strip():
                raise ValidationError(f"goal field {name!r} must be non-empty")
            _require_clean_text(value, f"goal field {name!r}")
        for name, value in fields.items():
            setattr(self.goal, name, value)
        record = self.log_action(
            ActionKind.ADJUST,
            ActionSource.GOAL_EDIT,
            auto_classified=True,
            annotation_pending=False,
            payload={"fields": dict(fields)},
        )
        return PanelRevision(
            change="goal_edit",
            regeneration_required=True,
            action_id=record.action_id,
            detail={"fields": dict(fields)},
        )

    def apply_intent_edit(self, cmd: IntentEdit) -> PanelRevision:
        if isinstance(cmd, AddIntent):
            text = cmd.text.strip()
            if not text:
                raise ValidationError("intent text must be non-empty")
            if len(self.intents) >= MAX_INTENTS:
                raise ValidationError(f"intent list is capped at {MAX_INTENTS}")
            intent = Intent(
                id=self.next_intent_id(),
                text=text,
                kept=False,
                origin=IntentOrigin.USER_ADDED,
                created_turn=self.turn_counter,
            )
            self.intents.append(intent)
            record = self.log_action(
                ActionKind.ADD,
                ActionSource.INTENT_WIDGET,
                auto_classified=True,
                annotation_pending=False,
                payload={"op": "add_intent", "intent_id": intent.id, "text": text},
            )
            return PanelRevision("intent_add", True, record.action_id, {"intent_id": intent.id})

        if isinstance(cmd, DeleteIntent):
            intent = self.intent_by_id(cmd.intent_id)
            self.intents.remove(intent)
            record = self.log_action(
                ActionKind.DELETE,
                ActionSource.INTENT_WIDGET,
                auto_classified=True,
                annotation_pending=False,
                payload={"op": "delete_intent", "intent_id": intent.id, "text": intent.text},
            )
            return PanelRevision("intent_delete", True, record.action_id, {"intent_id": intent.id})

        if isinstance(cmd, ReviseIntent):
            intent = self.intent_by_id(cmd.intent_id)
            text = cmd.text.strip()
            if not text:
                raise ValidationError("intent text must be non-empty")
            intent.text = text
            intent.origin = IntentOrigin.REVISED
            record = self.log_action(
                ActionKind.ADJUST,
                ActionSource.INTENT_WIDGET,
                auto_classified=True,
                annotation_pending=False,
                payload={"op": "revise_intent", "intent_id": intent.id, "text": text},
            )
            return PanelRevision("intent_revise", True, record.action_id, {"intent_id": intent.id})

        if isinstance(cmd, ToggleKeep):
            intent = self.intent_by_id(cmd.intent_id)
            intent.kept = not intent.kept
            # Keep constrains future generations only: no action, no new page.
            self.record_telemetry("keep_toggle", {"intent_id": intent.id, "kept": intent.kept})
            return PanelRevision("keep_toggle", False, None, {"intent_id": intent.id, "kept": intent.kept})

        raise ValidationError(f"unknown intent edit {cmd!r}")

    def apply_dimension_edit(self, cmd: DimensionEdit) -> PanelRevision:
        if isinstance(cmd, SetSlider):
            dimension = self.dimension_by_id(cmd.dimension_id)
            if dimension.ui_kind is not UiKind.SLIDER:
                raise ValidationError(f"dimension {dimension.id} is not a slider")
            if not SLIDER_MIN <= cmd.level <= SLIDER_MAX:
                raise ValidationError(f"slider level {cmd.level} outside {SLIDER_MIN}..{SLIDER_MAX}")
            previous = dimension.current[0] if dimension.current else None
            dimension.current = [str(cmd.level)]
            record = self.log_action(
                ActionKind.ADJUST,
                ActionSource.DIMENSION_WIDGET,
                auto_classified=True,
                annotation_pending=False,
                payload={"op": "set_slider", "dimension_id": dimension.id, "from": previous, "to": str(cmd.level)},
            )
            return PanelRevision("dimension_set", True, record.action_id, {"dimension_id": dimension.id})

        if isinstance(cmd, SetRadio):
            dimension = self.dimension_by_id(cmd.dimension_id)
            if dimension.ui_kind is not UiKind.RADIO:
                raise ValidationError(f"dimension {dimension.id} is not a radio group")
            if cmd.option not in dimension.domain:
                raise ValidationError(f"option {cmd.option!r} is not one of {dimension.domain}")
            previous = dimension.current[0] if dimension.current else None
            dimension.current = [cmd.option]
            record = self.log_action(
                ActionKind.ADJUST,
                ActionSource.DIMENSION_WIDGET,
                auto_classified=True,
                annotation_pending=False,
                payload={"op": "set_radio", "dimension_id": dimension.id, "from": previous, "to": cmd.option},
            )
            return PanelRevision("dimension_set", True, record.action_id, {"dimension_id": dimension.id})

        if isinstance(cmd, AddTag):
            dimension = self.dimension_by_id(cmd.dimension_id)
            if dimension.ui_kind is not UiKind.HASHTAG:
                raise ValidationError(f"dimension {dimension.id} is not a hashtag set")
            tag = cmd.tag.strip()
            if not tag:
                raise ValidationError("tag must be non-empty")
            if tag not in dimension.current:
                dimension.current.append(tag)
            record = self.log_action(
                ActionKind.ADD,
                ActionSource.DIMENSION_WIDGET,
                auto_classified=True,
                annotation_pending=False,
                payload={"op": "add_tag", "dimension_id": dimension.id, "tag": tag},
            )
            return PanelRevision("dimension_add_tag", True, record.action_id, {"dimension_id": dimension.id})

        if isinstance(cmd, RemoveTag):
            dimension = self.dimension_by_id(cmd.dimension_id)
            if dimension.ui_kind is not UiKind.HASHTAG:
                raise ValidationError(f"dimension {dimension.id} is not a hashtag set")
            if cmd.tag not in dimension.current:
                raise ValidationError(f"tag {cmd.tag!r} is not present")
            dimension.current.remove(cmd.tag)
            record = self.log_action(
                ActionKind.DELETE,
                ActionSource.DIMENSION_WIDGET,
                auto_classified=True,
                annotation_pending=False,
                payload={"op": "remove_tag", "dimension_id": dimension.id, "tag": cmd.tag},
            )
            return PanelRevision("dimension_remove_tag", True, record.action_id, {"dimension_id": dimension.id})

        raise ValidationError(f"unknown dimension edit {cmd!r}")

    # -- pages ------------------------------------------------------------------

    def append_page(self, document: OutputDocument, links: list[Link], provenance: Provenance) -> int:
        document.check_offsets()
        snapshot = PanelSnapshot.capture(self.goal, self.intents, self.dimensions)
        check_links(document, snapshot, links)
        page = OutputPage(
            page_number=len(self.pages) + 1,
            document=copy.deepcopy(document),
            snapshot=snapshot,
            links=copy.deepcopy(links),
            provenance=provenance,
        )
        self.pages.append(page)
        return page.page_number

    def rollback(self, page_number: int) -> int:
        target = self.page_at(page_number)
        clone = OutputPage(
            page_number=len(self.pages) + 1,
            document=copy.deepcopy(target.document),
            snapshot=copy.deepcopy(target.snapshot),
            links=copy.deepcopy(target.links),
            provenance=Provenance.rollback_of_page(page_number),
        )
        self.pages.append(clone)
        self.goal = copy.deepcopy(target.snapshot.goal)
        self.intents = copy.deepcopy(target.snapshot.intents)
        self.dimensions = copy.deepcopy(target.snapshot.dimensions)
        self.log_action(
            ActionKind.ROLLBACK,
            ActionSource.ROLLBACK_BUTTON,
            auto_classified=True,
            annotation_pending=False,
            payload={"page": page_number, "new_page": clone.page_number},
        )
        return clone.page_number

    # -- turn application ---------------------------------------------------------

    def apply_turn(self, effect: TurnEffect) -> AppliedTurn:
        """Commit a planned turn atomically; validates before any mutation."""
        staged_goal = effect.goal if effect.goal is not None else self.goal
        staged_intents = effect.intents if effect.intents is not None else self.intents
        staged_dimensions = effect.dimensions if effect.dimensions is not None else self.dimensions
        if effect.document is not None:
            effect.document.check_offsets()
            staged_snapshot = PanelSnapshot.capture(staged_goal, staged_intents, staged_dimensions)
            check_links(effect.document, staged_snapshot, effect.links or [])

        self.goal = copy.deepcopy(staged_goal)
        self.intents = copy.deepcopy(staged_intents)
        self.dimensions = copy.deepcopy(staged_dimensions)
        self._bump_seq_for([i.id for i in self.intents], "intent_seq")
        self._bump_seq_for([d.id for d in self.dimensions], "dimension_seq")

        self.chat_history.append(ChatEntry(role="user", text=effect.prompt))
        self.chat_history.append(
            ChatEntry(role="assistant", text=effect.reply, status_events=list(effect.status_events))
        )

        new_page: int | None = None
        if effect.document is not None:
            if not self.pages:
                provenance = Provenance(kind=Provenance.INITIAL)
            elif effect.source is ActionSource.TARGETED_PROMPT:
                provenance = Provenance(kind=Provenance.TARGETED_PROMPT)
            else:
                provenance = Provenance(kind=Provenance.CHAT_PROMPT)
            new_page = self.append_page(effect.document, effect.links or [], provenance)

        self.turn_counter += 1
        record = self.log_action(
            effect.provisional_kind,
            effect.source,
            auto_classified=False,
            annotation_pending=True,
            payload={
                "prompt": effect.prompt,
                "targeted_intent": effect.targeted_intent,
                "invoked": list(effect.invoked),
                "new_page": new_page,
            },
        )
        return AppliedTurn(new_page=new_page, action_id=record.action_id)

    def apply_regeneration(self, effect: RegenEffect) -> int:
        """Append the page produced after a regeneration-signaling panel edit."""
        return self.append_page(effect.document, effect.links, Provenance(kind=Provenance.PANEL_EDIT))

    # -- annotation -----------------------------------------------------------------

    def annotate_action(self, action_id: str, kind: ActionKind) -> ActionRecord:
        record = self.action_by_id(action_id)
        if not record.annotation_pending:
            raise AlreadyAnnotated(f"action {action_id} is not pending annotation")
        record.kind = kind
        record.annotation_pending = False
        record.auto_classified = False
        return record


def new_session(session_id: str | None = None) -> SessionState:
    """Fresh empty session; explicit ids are for deterministic harness runs."""
    return SessionState(session_id=session_id or uuid.uuid4().hex)
