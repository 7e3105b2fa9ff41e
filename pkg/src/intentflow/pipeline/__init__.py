"""Pipeline orchestration: routing, extraction, generation, linking, turns."""

from intentflow.pipeline.extract import (
    derive_dimensions,
    extract_goal,
    extract_intents,
    normalize_text,
    reconcile_dimensions,
    reconcile_intents,
    revise_targeted_intent,
)
from intentflow.pipeline.generate import generate_output
from intentflow.pipeline.linking import LinkingOutcome, link_all, locate_quotes
from intentflow.pipeline.router import (
    INVOKE_ORDER,
    STATUS_MESSAGES,
    RouterDecision,
    enforce_cascade,
    route_prompt,
)
from intentflow.pipeline.turn import STAGES, TurnResult, plan_regeneration, plan_turn, run_turn

__all__ = [name for name in dir() if not name.startswith("_")]
