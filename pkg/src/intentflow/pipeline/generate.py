"""Output generation: document requests built from the full panel state."""

from __future__ import annotations

from intentflow.core.types import Dimension, Goal, Intent, OutputDocument, OutputPage, Section
from intentflow.errors import EmptyOutput
from intentflow.gateway.client import Gateway
from intentflow.gateway.config import ModuleKind
from intentflow.pipeline.context import (
    dimensions_block,
    goal_block,
    output_intents_block,
    previous_block,
    targeted_output_block,
)


def generate_output(
    goal: Goal,
    intents: list[Intent],
    dimensions: list[Dimension],
    previous: OutputPage | None,
    gateway: Gateway,
    *,
    targeted: Intent | None = None,
    instruction: str = "",
) -> OutputDocument:
    """Generate the document for the staged panel state.

    The request always carries the goal, every intent (kept ones under
    MUST-PRESERVE), and every dimension value with its description; revision
    turns additionally carry the previous document with preservation
    instructions, and targeted turns the single intent allowed to change.
    """
    response = gateway.complete_structured(
        ModuleKind.OUTPUT,
        {
            "goal_block": goal_block(goal),
            "intents_block": output_intents_block(intents),
            "dimensions_block": dimensions_block(dimensions),
            "previous_block": previous_block(previous, intents),
            "targeted_block": targeted_output_block(targeted, instruction),
        },
    )
    sections = [Section(body=item.body, header=item.header) for item in response.payload.sections]
    document = OutputDocument.from_sections(sections)
    if not document.canonical_text.strip():
        raise EmptyOutput("output module produced an empty document")
    return document
