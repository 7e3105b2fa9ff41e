"""Turn assembly: route, extract, generate, link, and apply — all or nothing.

``plan_turn`` is pure with respect to the session: every model call happens
while planning, and the resulting ``TurnEffect`` is applied in one step. Any
stage failure therefore leaves the session exactly as it was.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass
from typing import Callable

from intentflow.core.session import PanelChanges, RegenEffect, SessionState, TurnEffect
from intentflow.core.types import ActionSource, Dimension, Goal, Intent
from intentflow.errors import NotFound, TurnFailed, ValidationError
from intentflow.gateway.client import Gateway
from intentflow.pipeline.extract import derive_dimensions, extract_goal, extract_intents, revise_targeted_intent
from intentflow.pipeline.generate import generate_output
from intentflow.pipeline.linking import link_all
from intentflow.pipeline.router import STATUS_MESSAGES, RouterDecision, route_prompt

StatusCallback = Callable[[str], None]

STAGES = ("goal", "intent", "dimension", "output", "linking")


@dataclass
class TurnResult:
    decision: RouterDecision
    new_page: int | None
    panel_changes: PanelChanges
    link_repairs: int
    action_id: str
    effect: TurnEffect


def _run_stage(stage: str, fn):
    try:
        return fn()
    except (ValidationError, NotFound):
        raise
    except Exception as exc:
        raise TurnFailed(stage, exc) from exc


def plan_turn(
    session: SessionState,
    prompt: str,
    targeted_intent: str | None,
    gateway: Gateway,
    on_status: StatusCallback | None = None,
    baseline: bool = False,
) -> tuple[RouterDecision, TurnEffect]:
    """Run the pipeline for one prompt without touching the session.

    ``baseline`` disables the intent-panel stages (goal/intent/dimension) and
    linking, leaving plain prompt-to-output generation with pagination.
    """
    if not prompt or not prompt.strip():
        raise ValidationError("prompt must be non-empty")
    if targeted_intent is not None:
        if baseline:
            raise ValidationError("targeted prompts are unavailable in baseline mode")
        session.intent_by_id(targeted_intent)  # NotFound before any model call

    def emit(message: str) -> None:
        if on_status is not None:
            on_status(message)

    decision = _run_stage("route", lambda: route_prompt(session, prompt, targeted_intent, gateway))
    if baseline:
        decision.invoke = ["output"] if ("output" in decision.invoke or session.turn_counter == 0) else []
        decision.status_messages = [STATUS_MESSAGES["output"]] if decision.invoke else []

    staged_goal: Goal = copy.deepcopy(session.goal)
    staged_intents: list[Intent] = copy.deepcopy(session.intents)
    staged_dimensions: list[Dimension] = copy.deepcopy(session.dimensions)
    changes = PanelChanges()
    goal_out: Goal | None = None
    intents_out: list[Intent] | None = None
    dimensions_out: list[Dimension] | None = None
    next_turn = session.turn_counter + 1

    if "goal" in decision.invoke:
        emit(STATUS_MESSAGES["goal"])
        extracted = _run_stage("goal", lambda: extract_goal(prompt, gateway))
        changes.goal_changed = extracted != staged_goal
        staged_goal = extracted
        goal_out = extracted

    if "intent" in decision.invoke:
        emit(STATUS_MESSAGES["intent"])
        if decision.targeted_intent is not None:
            staged_intents, part = _run_stage(
                "intent",
                lambda: revise_targeted_intent(prompt, staged_goal, staged_intents, decision.targeted_intent, gateway),
            )
        else:
            staged_intents, part = _run_stage(
                "intent",
                lambda: extract_intents(
                    prompt,
                    staged_goal,
                    staged_intents,
                    gateway,
                    seq_start=session.intent_seq,
                    turn=next_turn,
                ),
            )
        changes.added_intents = part.added_intents
        changes.removed_intents = part.removed_intents
        changes.revised_intents = part.revised_intents
        intents_out = staged_intents

    if "dimension" in decision.invoke:
        emit(STATUS_MESSAGES["dimension"])
        staged_dimensions, part = _run_stage(
            "dimension",
            lambda: derive_dimensions(
                prompt,
                staged_goal,
                staged_intents,
                staged_dimensions,
                gateway,
                seq_start=session.dimension_seq,
            ),
        )
        changes.added_dimensions = part.added_dimensions
        changes.removed_dimensions = part.removed_dimensions
        dimensions_out = staged_dimensions

    document = None
    links = None
    repairs = 0
    if "output" in decision.invoke:
        emit(STATUS_MESSAGES["output"])
        previous = session.pages[-1] if session.pages else None
        targeted = None
        if decision.targeted_intent is not None:
            targeted = next(i for i in staged_intents if i.id == decision.targeted_intent)
        document = _run_stage(
            "output",
            lambda: generate_output(
                staged_goal,
                staged_intents,
                staged_dimensions,
                previous,
                gateway,
                targeted=targeted,
                instruction=prompt if targeted is not None else "",
            ),
        )
        if baseline:
            links = []
        else:
            emit(STATUS_MESSAGES["linking"])
            outcome = _run_stage("linking", lambda: link_all(document, staged_intents, staged_dimensions, gateway))
            links = outcome.links
            repairs = outcome.repairs

    source = ActionSource.TARGETED_PROMPT if decision.targeted_intent else ActionSource.CHAT_PROMPT
    effect = TurnEffect(
        prompt=prompt,
        source=source,
        targeted_intent=decision.targeted_intent,
        reply=decision.direct_reply,
        status_events=list(decision.status_messages),
        invoked=list(decision.invoke),
        provisional_kind=decision.provisional_kind,
        goal=goal_out,
        intents=intents_out,
        dimensions=dimensions_out,
        document=document,
        links=links,
        link_repairs=repairs,
        panel_changes=changes,
    )
    return decision, effect


def run_turn(
    session: SessionState,
    prompt: str,
    targeted_intent: str | None = None,
    *,
    gateway: Gateway,
    on_status: StatusCallback | None = None,
    baseline: bool = False,
) -> TurnResult:
    """Plan and apply one chat turn; on failure the session is unchanged."""
    decision, effect = plan_turn(session, prompt, targeted_intent, gateway, on_status, baseline)
    applied = session.apply_turn(effect)
    return TurnResult(
        decision=decision,
        new_page=applied.new_page,
        panel_changes=effect.panel_changes,
        link_repairs=effect.link_repairs,
        action_id=applied.action_id,
        effect=effect,
    )


def plan_regeneration(session: SessionState, gateway: Gateway, on_status: StatusCallback | None = None) -> RegenEffect:
    """Generate+link for the current panel after a regeneration-signaling edit."""

    def emit(message: str) -> None:
        if on_status is not None:
            on_status(message)

    emit(STATUS_MESSAGES["output"])
    previous = session.pages[-1] if session.pages else None
    document = _run_stage(
        "output",
        lambda: generate_output(session.goal, session.intents, session.dimensions, previous, gateway),
    )
    emit(STATUS_MESSAGES["linking"])
    outcome = _run_stage("linking", lambda: link_all(document, session.intents, session.dimensions, gateway))
    return RegenEffect(document=document, links=outcome.links, link_repairs=outcome.repairs)
