"""Entrypoint routing: which modules a prompt invokes, plus the direct reply."""

from __future__ import annotations

from dataclasses import dataclass, field

from intentflow.core.session import SessionState
from intentflow.core.types import ActionKind
from intentflow.errors import ValidationError
from intentflow.gateway.client import Gateway
from intentflow.gateway.config import ModuleKind
from intentflow.pipeline.context import dimensions_block, goal_block, intents_block

INVOKE_ORDER = ("goal", "intent", "dimension", "output")

STATUS_MESSAGES = {
    "goal": "Updating the goal…",
    "intent": "Updating the intent list…",
    "dimension": "Updating intent dimensions…",
    "output": "Generating the output…",
    "linking": "Linking intents and dimensions to the output…",
}


@dataclass
class RouterDecision:
    direct_reply: str
    invoke: list[str]
    status_messages: list[str] = field(default_factory=list)
    targeted_intent: str | None = None
    provisional_kind: ActionKind = ActionKind.ADJUST


def enforce_cascade(invoke: list[str]) -> list[str]:
    """Goal updates cascade downstream, and any extractor update regenerates output."""
    chosen = set(invoke)
    if "goal" in chosen:
        chosen.update(("intent", "dimension", "output"))
    if chosen & {"goal", "intent", "dimension"}:
        chosen.add("output")
    return [stage for stage in INVOKE_ORDER if stage in chosen]


def status_messages_for(invoke: list[str]) -> list[str]:
    messages = [STATUS_MESSAGES[stage] for stage in invoke]
    if "output" in invoke:
        messages.append(STATUS_MESSAGES["linking"])
    return messages


def route_prompt(
    session: SessionState,
    prompt: str,
    targeted_intent: str | None,
    gateway: Gateway,
) -> RouterDecision:
    """Decide the invoked subset; first and targeted prompts are rule-forced."""
    if not prompt.strip():
        raise ValidationError("prompt must be non-empty")

    if targeted_intent is not None:
        intent = session.intent_by_id(targeted_intent)
        invoke = enforce_cascade(["intent", "output"])
        return RouterDecision(
            direct_reply=f'Revising the intent "{intent.text}" and regenerating the affected output.',
            invoke=invoke,
            status_messages=status_messages_for(invoke),
            targeted_intent=targeted_intent,
            provisional_kind=ActionKind.ADJUST,
        )

    response = gateway.complete_structured(
        ModuleKind.ENTRYPOINT,
        {
            "prompt": prompt,
            "goal_block": goal_block(session.goal),
            "intents_block": intents_block(session.intents, mark_kept=True),
            "dimensions_block": dimensions_block(session.dimensions, with_descriptions=False),
        },
    )
    payload = response.payload
    if session.turn_counter == 0:
        invoke = list(INVOKE_ORDER)  # rule-forced full pipeline on the first prompt
    else:
        invoke = enforce_cascade(payload.invoke)
    return RouterDecision(
        direct_reply=payload.reply,
        invoke=invoke,
        status_messages=status_messages_for(invoke),
        targeted_intent=None,
        provisional_kind=ActionKind(payload.provisional_kind),
    )
