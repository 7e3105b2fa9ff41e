"""Prompt templates for the six pipeline modules.

One template per module kind. Rendering is plain ``string.Template``
substitution: deterministic, and a missing variable raises instead of leaking
a placeholder into a live prompt.
"""

from __future__ import annotations

from string import Template

from intentflow.errors import MissingVariable
from intentflow.gateway.config import ModuleKind

_ENTRYPOINT = Template(
    """You are the entry point of a structured writing assistant. The assistant keeps a
panel with the user's writing goal, a list of discrete intents, and adjustable
intent dimensions, plus a generated document.

Current panel state:
GOAL:
${goal_block}
INTENTS:
${intents_block}
DIMENSIONS:
${dimensions_block}

The user just wrote:
"${prompt}"

Decide how the assistant should respond:
1. Write a short direct reply to the user describing how their input was understood
   and what will be updated.
2. Choose which modules must run, as a subset of ["goal", "intent", "dimension", "output"].
   Include "goal" only if the overall task, domain, or topic changed. Include "intent"
   when the message adds, removes, or alters what the user wants. Include "dimension"
   when adjustable facets (tone, length, focus, audience, ...) are affected. Include
   "output" whenever the document must be regenerated. Use [] for a pure question
   that changes nothing.
3. Classify the message as one of "Add" (a new intent), "Delete" (withdrawing one),
   "Correct" (restating something the assistant got wrong), or "Adjust" (tuning an
   existing intent).

Respond with only a JSON object:
{"reply": "...", "invoke": ["..."], "provisional_kind": "Add|Delete|Correct|Adjust"}"""
)

_GOAL = Template(
    """You extract the high-level writing goal from a user prompt for a writing assistant.

User prompt:
"${prompt}"

Identify the user's overall objective. Respond with only a JSON object:
{"task_goal": "...", "writing_domain": "...", "topic": "..."}

task_goal: one sentence stating what the user wants written and any overall qualities.
writing_domain: the kind of writing (e.g. "science writing", "business email").
topic: the subject matter, in a few words taken from or implied by the prompt.
All three fields must be non-empty plain text without line breaks."""
)

_INTENT = Template(
    """You maintain the list of discrete user intents for a writing assistant. An intent
is one low-level strategy or preference shaping how the goal should be achieved.

User goal:
${goal_block}

Existing intents (keep ids stable; intents marked KEPT must stay in the list verbatim):
${existing_intents_block}
${targeted_block}
User prompt:
"${prompt}"

Produce the updated full list of intents. Rules:
- Each intent is one short, self-contained sentence; no two intents may overlap in meaning.
- Carry over every existing intent that still applies, with its exact text.
- Add new intents implied by the prompt; remove only intents the prompt withdraws.
- At most 10 intents. Give each a salience between 0 and 1 (how central it is).

Respond with only a JSON object:
{"intents": [{"text": "...", "salience": 0.0}]}"""
)

_DIMENSION = Template(
    """You derive adjustable intent dimensions for a writing assistant. A dimension is one
facet of the user's intents (tone, length, focus, audience, ...) the user may want
to tune, rendered as a UI control.

User goal:
${goal_block}

Current intents:
${intents_block}

Existing dimensions (titles already in use; re-propose them unchanged if still relevant):
${existing_dimensions_block}

User prompt:
"${prompt}"

Propose the updated list of dimensions. Rules per dimension:
- "title": short label naming the facet.
- "ui_kind": "slider" for a 1..5 ordinal level, "radio" for one choice among 2-5
  labeled options, "hashtag" for an open set of style tags.
- "domain": for radio the ordered option labels; for slider and hashtag use [].
- "initial": slider level as an integer 1..5, the chosen radio option, or the list
  of initial hashtag strings.
- "descriptions": an object mapping EVERY selectable value (slider levels "1".."5",
  each radio option, each initial hashtag) to one sentence explaining what choosing
  it does to the output. No value may be left undescribed.
- At most 7 dimensions.

Respond with only a JSON object:
{"dimensions": [{"title": "...", "ui_kind": "...", "domain": [], "initial": null, "descriptions": {}}]}"""
)

_OUTPUT = Template(
    """You are the output writer of a structured writing assistant. Write the document
that satisfies the goal, intents, and dimension settings below.

GOAL:
${goal_block}

INTENTS (every intent must shape the text; intents under MUST-PRESERVE are locked
user decisions and their influence on the text must be kept intact):
${intents_block}

DIMENSION SETTINGS (honor each selected value; the description states its effect):
${dimensions_block}
${previous_block}${targeted_block}
Write the full document as an ordered list of sections. Each section has an optional
short "header" (or null) and a "body" of plain text. Do not use markdown syntax.

Respond with only a JSON object:
{"sections": [{"header": "... or null", "body": "..."}]}"""
)

_LINKING = Template(
    """You connect panel items to the passages of a generated document they influenced.

DOCUMENT:
${document}

PANEL ITEM (${source_label}):
${source_text}

Quote the exact passages of the document that this item most strongly shaped.
Rules:
- Each quote must be copied verbatim from the document (character for character).
- Prefer one or two key passages; quote nothing if the item left no visible trace.

Respond with only a JSON object:
{"quotes": ["..."]}"""
)

TEMPLATES: dict[ModuleKind, Template] = {
    ModuleKind.ENTRYPOINT: _ENTRYPOINT,
    ModuleKind.GOAL: _GOAL,
    ModuleKind.INTENT: _INTENT,
    ModuleKind.DIMENSION: _DIMENSION,
    ModuleKind.OUTPUT: _OUTPUT,
    ModuleKind.LINKING: _LINKING,
}


def render_template(kind: ModuleKind, variables: dict[str, str]) -> str:
    """Substitute ``variables`` into the module template; all placeholders required."""
    try:
        return TEMPLATES[kind].substitute(variables)
    except KeyError as exc:
        raise MissingVariable(kind.value, exc.args[0]) from exc
