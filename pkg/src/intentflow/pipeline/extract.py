"""Goal, intent, and dimension extraction with panel reconciliation.

Reconciliation keeps user state authoritative: ids survive by normalized-text
match, kept intents survive regardless of what the model proposes, and user-set
dimension values win over re-proposals. Extraction never mutates the session;
it returns staged lists whose fresh ids start after the session's counters.
"""

from __future__ import annotations

import copy

from intentflow.core.session import MAX_DIMENSIONS, MAX_INTENTS, PanelChanges
from intentflow.core.types import Dimension, Goal, Intent, IntentOrigin, UiKind
from intentflow.errors import SchemaError
from intentflow.gateway.client import Gateway
from intentflow.gateway.config import ModuleKind
from intentflow.gateway.schemas import DimensionItem, IntentItem
from intentflow.pipeline.context import goal_block, intents_block, targeted_intent_block


def normalize_text(text: str) -> str:
    return " ".join(text.casefold().split())


def _sanitize(text: str) -> str:
    return " ".join(text.split())


def extract_goal(prompt: str, gateway: Gateway) -> Goal:
    response = gateway.complete_structured(ModuleKind.GOAL, {"prompt": prompt})
    payload = response.payload
    goal = Goal(
        task_goal=_sanitize(payload.task_goal),
        writing_domain=_sanitize(payload.writing_domain),
        topic=_sanitize(payload.topic),
    )
    if not goal.is_complete():
        raise SchemaError("goal_field_empty", "extracted goal has an empty field")
    return goal


def reconcile_intents(
    existing: list[Intent],
    items: list[IntentItem],
    seq_start: int,
    turn: int,
) -> tuple[list[Intent], PanelChanges]:
    """Merge a model proposal into the existing intent list (identity by normalized text)."""
    changes = PanelChanges()
    proposal_norms = {normalize_text(item.text) for item in items}
    retained: list[Intent] = []
    for intent in existing:
        if intent.kept or normalize_text(intent.text) in proposal_norms:
            retained.append(copy.deepcopy(intent))
        else:
            changes.removed_intents.append(intent.id)

    seen = {normalize_text(intent.text) for intent in retained}
    candidates: list[tuple[float, int, Intent]] = []
    seq = seq_start
    for index, item in enumerate(items):
        norm = normalize_text(item.text)
        if norm in seen:
            continue
        seen.add(norm)
        seq += 1
        candidates.append(
            (
                item.salience,
                index,
                Intent(
                    id=f"i{seq}",
                    text=_sanitize(item.text),
                    kept=False,
                    origin=IntentOrigin.EXTRACTED,
                    created_turn=turn,
                ),
            )
        )

    room = max(0, MAX_INTENTS - len(retained))
    if len(candidates) > room:
        # overflow drops lowest salience first (later proposals first on ties)
        keep = sorted(candidates, key=lambda c: (-c[0], c[1]))[:room]
        keep_ids = {intent.id for _, _, intent in keep}
        candidates = [c for c in candidates if c[2].id in keep_ids]

    new_intents = [intent for _, _, intent in sorted(candidates, key=lambda c: c[1])]
    changes.added_intents.extend(intent.id for intent in new_intents)
    return retained + new_intents, changes


def extract_intents(
    prompt: str,
    goal: Goal,
    existing: list[Intent],
    gateway: Gateway,
    *,
    seq_start: int,
    turn: int,
) -> tuple[list[Intent], PanelChanges]:
    response = gateway.complete_structured(
        ModuleKind.INTENT,
        {
            "prompt": prompt,
            "goal_block": goal_block(goal),
            "existing_intents_block": intents_block(existing, mark_kept=True),
            "targeted_block": "",
        },
    )
    return reconcile_intents(existing, response.payload.intents, seq_start, turn)


def revise_targeted_intent(
    prompt: str,
    goal: Goal,
    existing: list[Intent],
    targeted_id: str,
    gateway: Gateway,
) -> tuple[list[Intent], PanelChanges]:
    """Targeted prompting: rewrite one intent's text, leaving the rest untouched."""
    target = next(intent for intent in existing if intent.id == targeted_id)
    response = gateway.complete_structured(
        ModuleKind.INTENT,
        {
            "prompt": prompt,
            "goal_block": goal_block(goal),
            "existing_intents_block": intents_block(existing, mark_kept=True),
            "targeted_block": targeted_intent_block(target),
        },
    )
    items = response.payload.intents
    # The revised text is the proposal entry that is new with respect to the others.
    existing_norms = {normalize_text(intent.text) for intent in existing if intent.id != targeted_id}
    revised_text = None
    for item in items:
        if normalize_text(item.text) not in existing_norms:
            revised_text = _sanitize(item.text)
            break
    if revised_text is None:
        raise SchemaError("intent_text_missing", "targeted revision returned no updated intent")

    updated: list[Intent] = []
    for intent in existing:
        clone = copy.deepcopy(intent)
        if intent.id == targeted_id:
            clone.text = revised_text
            clone.origin = IntentOrigin.REVISED
        updated.append(clone)
    changes = PanelChanges(revised_intents=[targeted_id])
    return updated, changes


def _dimension_from_item(item: DimensionItem, dimension_id: str) -> Dimension:
    ui_kind = UiKind(item.ui_kind)
    if ui_kind is UiKind.SLIDER:
        current = [str(item.initial)]
        domain = list(item.domain)
    elif ui_kind is UiKind.RADIO:
        current = [str(item.initial)]
        domain = list(item.domain)
    else:
        current = [str(tag) for tag in item.initial]
        domain = []
    return Dimension(
        id=dimension_id,
        title=_sanitize(item.title),
        ui_kind=ui_kind,
        domain=domain,
        current=current,
        value_descriptions=dict(item.descriptions),
    )


def reconcile_dimensions(
    existing: list[Dimension],
    items: list[DimensionItem],
    seq_start: int,
) -> tuple[list[Dimension], PanelChanges]:
    """Merge proposed dimensions; matched titles keep id and the user's current value."""
    changes = PanelChanges()
    proposal_norms = {normalize_text(item.title) for item in items}
    retained: list[Dimension] = []
    for dimension in existing:
        if normalize_text(dimension.title) in proposal_norms:
            retained.append(copy.deepcopy(dimension))
        else:
            changes.removed_dimensions.append(dimension.id)

    seen = {normalize_text(dimension.title) for dimension in retained}
    new_dimensions: list[Dimension] = []
    seq = seq_start
    for item in items:
        norm = normalize_text(item.title)
        if norm in seen:
            continue
        seen.add(norm)
        seq += 1
        new_dimensions.append(_dimension_from_item(item, f"d{seq}"))

    room = max(0, MAX_DIMENSIONS - len(retained))
    new_dimensions = new_dimensions[:room]
    changes.added_dimensions.extend(dimension.id for dimension in new_dimensions)
    return retained + new_dimensions, changes


def derive_dimensions(
    prompt: str,
    goal: Goal,
    intents: list[Intent],
    existing: list[Dimension],
    gateway: Gateway,
    *,
    seq_start: int,
) -> tuple[list[Dimension], PanelChanges]:
    existing_titles = "\n".join(f"- {dimension.title}" for dimension in existing) or "(none)"
    response = gateway.complete_structured(
        ModuleKind.DIMENSION,
        {
            "prompt": prompt,
            "goal_block": goal_block(goal),
            "intents_block": intents_block(intents),
            "existing_dimensions_block": existing_titles,
        },
    )
    return reconcile_dimensions(existing, response.payload.dimensions, seq_start)
