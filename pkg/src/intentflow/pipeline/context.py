"""Builders for the panel-state blocks embedded in module prompts."""

from __future__ import annotations

from intentflow.core.types import Dimension, Goal, Intent, IntentRef, OutputPage


def goal_block(goal: Goal) -> str:
    if not (goal.task_goal or goal.writing_domain or goal.topic):
        return "(not set yet)"
    return (
        f"Task goal: {goal.task_goal}\n"
        f"Writing domain: {goal.writing_domain}\n"
        f"Topic: {goal.topic}"
    )


def intents_block(intents: list[Intent], *, mark_kept: bool = False) -> str:
    if not intents:
        return "(none)"
    lines = [f"- [{intent.id}] {intent.text}" + (" (KEPT)" if mark_kept and intent.kept else "") for intent in intents]
    return "\n".join(lines)


def output_intents_block(intents: list[Intent]) -> str:
    """Intents for the output request, with kept ones in a MUST-PRESERVE block."""
    regular = [i for i in intents if not i.kept]
    kept = [i for i in intents if i.kept]
    lines = [f"- {intent.text}" for intent in regular] or ["(none)"]
    if kept:
        lines.append("MUST-PRESERVE:")
        lines.extend(f"- {intent.text}" for intent in kept)
    return "\n".join(lines)


def dimensions_block(dimensions: list[Dimension], *, with_descriptions: bool = True) -> str:
    if not dimensions:
        return "(none)"
    lines = []
    for dimension in dimensions:
        values = ", ".join(dimension.current)
        lines.append(f"- [{dimension.id}] {dimension.title} ({dimension.ui_kind.value}): {values}")
        if with_descriptions:
            for value in dimension.current:
                description = dimension.value_descriptions.get(value, "")
                if description:
                    lines.append(f"    {value}: {description}")
    return "\n".join(lines)


def previous_block(previous: OutputPage | None, intents: list[Intent]) -> str:
    if previous is None:
        return ""
    kept_ids = {intent.id for intent in intents if intent.kept}
    passages: list[str] = []
    for link in previous.links:
        if isinstance(link.source, IntentRef) and link.source.intent_id in kept_ids:
            for start, end in link.spans:
                passages.append(previous.document.canonical_text[start:end])
    block = (
        "\nPREVIOUS DOCUMENT (revise this document; keep everything not affected by the"
        " changes unchanged):\n"
        f"{previous.document.canonical_text}\n"
    )
    if passages:
        block += "Preserve these passages, which realize kept intents, as they are:\n"
        block += "\n".join(f'- "{passage}"' for passage in passages) + "\n"
    return block


def targeted_output_block(intent: Intent | None, instruction: str) -> str:
    if intent is None:
        return ""
    return (
        f"\nTARGETED REVISION: only material related to the intent [{intent.id}] \"{intent.text}\""
        f" may change; the rest of the document must remain as it is.\n"
        f"Revision instruction: {instruction}\n"
    )


def targeted_intent_block(intent: Intent | None) -> str:
    if intent is None:
        return ""
    return (
        f"\nTARGETED UPDATE: the prompt below revises only the intent [{intent.id}]"
        f" \"{intent.text}\". Rewrite that intent's text to follow the prompt and return"
        " the full list with every other intent unchanged.\n"
    )
