"""Response schemas for the six module kinds.

Validators are handwritten so every rejection carries a stable machine code
(``SchemaError.code``); the eval harness maps codes to the check that owns the
violated property. ``validate_payload`` is total over module kinds: any payload
the pipeline receives has passed its module schema.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Any

from intentflow.core.types import SLIDER_MAX, SLIDER_MIN
from intentflow.errors import SchemaError
from intentflow.gateway.config import ModuleKind

INVOKABLE = ("goal", "intent", "dimension", "output")
ACTION_KINDS = ("Add", "Delete", "Correct", "Adjust")
UI_KINDS = ("slider", "radio", "hashtag")


@dataclass
class GoalPayload:
    task_goal: str
    writing_domain: str
    topic: str


@dataclass
class IntentItem:
    text: str
    salience: float


@dataclass
class IntentsPayload:
    intents: list[IntentItem]


@dataclass
class DimensionItem:
    title: str
    ui_kind: str
    domain: list[str]
    initial: Any
    descriptions: dict[str, str]

    def initial_values(self) -> list[str]:
        if self.ui_kind == "slider":
            return [str(self.initial)]
        if self.ui_kind == "radio":
            return [str(self.initial)]
        return [str(tag) for tag in self.initial]


@dataclass
class DimensionsPayload:
    dimensions: list[DimensionItem]


@dataclass
class OutputSectionItem:
    body: str
    header: str | None = None


@dataclass
class OutputPayload:
    sections: list[OutputSectionItem]


@dataclass
class LinkingPayload:
    quotes: list[str] = field(default_factory=list)


@dataclass
class EntrypointPayload:
    reply: str
    invoke: list[str]
    provisional_kind: str


def _object(data: Any, kind: str) -> dict:
    if not isinstance(data, dict):
        raise SchemaError(f"{kind}_not_object", f"{kind} response must be a JSON object")
    return data


def _string(data: dict, name: str, code: str, *, allow_empty: bool = False) -> str:
    value = data.get(name)
    if not isinstance(value, str):
        raise SchemaError(f"{code}_missing", f"field {name!r} must be a string")
    if not allow_empty and not value.strip():
        raise SchemaError(f"{code}_empty", f"field {name!r} must be non-empty")
    return value


def _list(data: dict, name: str, code: str) -> list:
    value = data.get(name)
    if not isinstance(value, list):
        raise SchemaError(f"{code}_missing", f"field {name!r} must be a list")
    return value


def _validate_goal(data: Any) -> GoalPayload:
    obj = _object(data, "goal")
    return GoalPayload(
        task_goal=_string(obj, "task_goal", "goal_field"),
        writing_domain=_string(obj, "writing_domain", "goal_field"),
        topic=_string(obj, "topic", "goal_field"),
    )


def _validate_intents(data: Any) -> IntentsPayload:
    obj = _object(data, "intent")
    items = _list(obj, "intents", "intents")
    if not items:
        raise SchemaError("intents_empty", "intents list must not be empty")
    parsed: list[IntentItem] = []
    for item in items:
        entry = _object(item, "intent_item")
        text = _string(entry, "text", "intent_text")
        salience = entry.get("salience")
        if not isinstance(salience, (int, float)) or isinstance(salience, bool) or not 0 <= salience <= 1:
            raise SchemaError("intent_salience_invalid", f"salience for {text!r} must be a number in [0,1]")
        parsed.append(IntentItem(text=text, salience=float(salience)))
    return IntentsPayload(intents=parsed)


def _validate_dimension_item(entry: dict) -> DimensionItem:
    title = _string(entry, "title", "dimension_title")
    ui_kind = entry.get("ui_kind")
    if ui_kind not in UI_KINDS:
        raise SchemaError("dimension_ui_kind_invalid", f"ui_kind {ui_kind!r} must be one of {UI_KINDS}")
    domain_raw = entry.get("domain", [])
    if not isinstance(domain_raw, list) or not all(isinstance(v, str) for v in domain_raw):
        raise SchemaError("dimension_domain_malformed", f"domain for {title!r} must be a list of strings")
    descriptions_raw = entry.get("descriptions")
    if not isinstance(descriptions_raw, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in descriptions_raw.items()
    ):
        raise SchemaError("dimension_description_missing", f"descriptions for {title!r} must map values to text")
    descriptions = dict(descriptions_raw)
    initial = entry.get("initial")

    if ui_kind == "slider":
        if isinstance(initial, str) and re.fullmatch(r"\d+", initial):
            initial = int(initial)
        if not isinstance(initial, int) or isinstance(initial, bool) or not SLIDER_MIN <= initial <= SLIDER_MAX:
            raise SchemaError(
                "dimension_value_out_of_domain",
                f"slider {title!r} initial {initial!r} must be an integer {SLIDER_MIN}..{SLIDER_MAX}",
            )
        domain = [str(v) for v in range(SLIDER_MIN, SLIDER_MAX + 1)]
    elif ui_kind == "radio":
        domain = list(domain_raw)
        if len(domain) < 2 or len(set(domain)) != len(domain) or not all(v.strip() for v in domain):
            raise SchemaError("dimension_domain_malformed", f"radio {title!r} needs >=2 distinct options")
        if not isinstance(initial, str) or initial not in domain:
            raise SchemaError(
                "dimension_value_out_of_domain",
                f"radio {title!r} initial {initial!r} must be one of its options",
            )
    else:  # hashtag
        if (
            not isinstance(initial, list)
            or not initial
            or not all(isinstance(tag, str) and tag.strip() for tag in initial)
            or len(set(initial)) != len(initial)
        ):
            raise SchemaError(
                "dimension_value_out_of_domain",
                f"hashtag {title!r} initial must be a non-empty list of distinct tags",
            )
        domain = []

    item = DimensionItem(title=title, ui_kind=ui_kind, domain=domain, initial=initial, descriptions=descriptions)
    for value in item.initial_values() if ui_kind == "hashtag" else domain:
        if not descriptions.get(value, "").strip():
            raise SchemaError(
                "dimension_description_missing",
                f"dimension {title!r} value {value!r} has no description",
            )
    return item


def _validate_dimensions(data: Any) -> DimensionsPayload:
    obj = _object(data, "dimension")
    items = _list(obj, "dimensions", "dimensions")
    if not items:
        raise SchemaError("dimensions_empty", "dimensions list must not be empty")
    return DimensionsPayload(dimensions=[_validate_dimension_item(_object(i, "dimension_item")) for i in items])


def _validate_output(data: Any) -> OutputPayload:
    obj = _object(data, "output")
    items = _list(obj, "sections", "output_sections")
    if not items:
        raise SchemaError("output_sections_empty", "sections list must not be empty")
    sections: list[OutputSectionItem] = []
    for item in items:
        entry = _object(item, "output_section")
        body = _string(entry, "body", "output_body")
        header = entry.get("header")
        if header is not None and not isinstance(header, str):
            raise SchemaError("output_header_invalid", "section header must be a string or null")
        if isinstance(header, str) and not header.strip():
            header = None
        sections.append(OutputSectionItem(body=body, header=header))
    return OutputPayload(sections=sections)


def _validate_linking(data: Any) -> LinkingPayload:
    obj = _object(data, "linking")
    quotes = _list(obj, "quotes", "linking_quotes")
    parsed: list[str] = []
    for quote in quotes:
        if not isinstance(quote, str) or not quote.strip():
            raise SchemaError("linking_quote_empty", "quotes must be non-empty strings")
        parsed.append(quote)
    return LinkingPayload(quotes=parsed)


def _validate_entrypoint(data: Any) -> EntrypointPayload:
    obj = _object(data, "entrypoint")
    reply = _string(obj, "reply", "entrypoint_reply")
    invoke = _list(obj, "invoke", "entrypoint_invoke")
    seen: list[str] = []
    for module in invoke:
        if module not in INVOKABLE:
            raise SchemaError("entrypoint_invoke_invalid", f"invoke entry {module!r} not one of {INVOKABLE}")
        if module not in seen:
            seen.append(module)
    kind = obj.get("provisional_kind")
    if kind not in ACTION_KINDS:
        raise SchemaError("entrypoint_kind_invalid", f"provisional_kind {kind!r} not one of {ACTION_KINDS}")
    return EntrypointPayload(reply=reply, invoke=seen, provisional_kind=kind)


_VALIDATORS = {
    ModuleKind.GOAL: _validate_goal,
    ModuleKind.INTENT: _validate_intents,
    ModuleKind.DIMENSION: _validate_dimensions,
    ModuleKind.OUTPUT: _validate_output,
    ModuleKind.LINKING: _validate_linking,
    ModuleKind.ENTRYPOINT: _validate_entrypoint,
}

_FENCE_RE = re.compile(r"^\s*```(?:json)?\s*(.*?)\s*```\s*$", re.DOTALL)


def parse_payload(kind: ModuleKind, raw: str):
    """Parse raw model text as JSON (tolerating a markdown fence) and validate."""
    text = raw.strip()
    fenced = _FENCE_RE.match(text)
    if fenced:
        text = fenced.group(1)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("malformed_json", f"response is not valid JSON: {exc}") from exc
    return validate_payload(kind, data)


def validate_payload(kind: ModuleKind, data: Any):
    return _VALIDATORS[kind](data)
