"""Action taxonomy: widget classification, annotation, and summary statistics."""

from __future__ import annotations

import statistics
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from intentflow.core.types import ActionKind, ActionRecord, ActionSource
from intentflow.errors import AlreadyAnnotated, NotFound, ValidationError

# Interactions outside the five-kind taxonomy, logged as telemetry only.
NON_ACTION_EVENTS = frozenset({"keep_toggle", "page_view", "hover", "diff_toggle", "header_toggle"})

_WIDGET_OPS: dict[tuple[ActionSource, str], ActionKind] = {
    (ActionSource.INTENT_WIDGET, "add_intent"): ActionKind.ADD,
    (ActionSource.INTENT_WIDGET, "delete_intent"): ActionKind.DELETE,
    (ActionSource.INTENT_WIDGET, "revise_intent"): ActionKind.ADJUST,
    (ActionSource.DIMENSION_WIDGET, "add_tag"): ActionKind.ADD,
    (ActionSource.DIMENSION_WIDGET, "remove_tag"): ActionKind.DELETE,
    (ActionSource.DIMENSION_WIDGET, "set_slider"): ActionKind.ADJUST,
    (ActionSource.DIMENSION_WIDGET, "set_radio"): ActionKind.ADJUST,
}


def classify_widget_action(source: ActionSource, detail: dict[str, Any] | None = None) -> ActionKind:
    """Deterministic, total mapping from widget events to the five kinds."""
    if source is ActionSource.ROLLBACK_BUTTON:
        return ActionKind.ROLLBACK
    if source is ActionSource.GOAL_EDIT:
        return ActionKind.ADJUST
    op = (detail or {}).get("op", "")
    try:
        return _WIDGET_OPS[(source, op)]
    except KeyError:
        raise ValidationError(f"not a widget event: source={source.value} op={op!r}") from None


def annotate(log: Sequence[ActionRecord], action_id: str, kind: ActionKind) -> list[ActionRecord]:
    """Pure annotation: returns a new log with the pending action resolved."""
    updated: list[ActionRecord] = []
    found = False
    for record in log:
        if record.action_id == action_id:
            found = True
            if not record.annotation_pending:
                raise AlreadyAnnotated(f"action {action_id} is final")
            record = ActionRecord(
                action_id=record.action_id,
                kind=kind,
                source=record.source,
                auto_classified=False,
                annotation_pending=False,
                timestamp=record.timestamp,
                payload=dict(record.payload),
            )
        updated.append(record)
    if not found:
        raise NotFound(f"action {action_id} not found")
    return updated


@dataclass
class KindStats:
    mean: float
    sd: float | None  # sample SD; None with fewer than two sessions


@dataclass
class ActionSummary:
    session_count: int
    total_actions: int
    counts: dict[str, int]
    percentages: dict[str, float] | None  # None marks the undefined empty-log case
    per_session: dict[str, KindStats] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "session_count": self.session_count,
            "total_actions": self.total_actions,
            "counts": dict(self.counts),
            "percentages": dict(self.percentages) if self.percentages is not None else None,
            "per_session": {
                kind: {"mean": stats.mean, "sd": stats.sd} for kind, stats in self.per_session.items()
            },
        }


def _as_session_logs(logs) -> list[list[ActionRecord]]:
    if not logs:
        return []
    items = list(logs)
    if isinstance(items[0], ActionRecord):
        return [items]
    return [list(session_log) for session_log in items]


def summarize(logs: Iterable) -> ActionSummary:
    """Counts, percentages, and per-session mean/SD per kind over one or many logs."""
    session_logs = _as_session_logs(logs)
    kinds = [kind.value for kind in ActionKind]
    counts = {kind: 0 for kind in kinds}
    per_session_counts: dict[str, list[int]] = {kind: [] for kind in kinds}
    for session_log in session_logs:
        session_counts = {kind: 0 for kind in kinds}
        for record in session_log:
            session_counts[record.kind.value] += 1
        for kind in kinds:
            counts[kind] += session_counts[kind]
            per_session_counts[kind].append(session_counts[kind])

    total = sum(counts.values())
    percentages = {kind: counts[kind] * 100.0 / total for kind in kinds} if total > 0 else None
    per_session: dict[str, KindStats] = {}
    for kind in kinds:
        values = per_session_counts[kind]
        if values:
            per_session[kind] = KindStats(
                mean=statistics.mean(values),
                sd=statistics.stdev(values) if len(values) >= 2 else None,
            )
    return ActionSummary(
        session_count=len(session_logs),
        total_actions=total,
        counts=counts,
        percentages=percentages,
        per_session=per_session,
    )
