"""Structural analogs of the eight pipeline-quality questions.

Each check is an automated, machine-checkable proxy for a question that was
originally a human judgment; thresholds are configuration knobs recorded in the
report header. Checks are independent: each consumes only its stage's data.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any

from intentflow.core.types import Dimension, Goal, Intent, Link, OutputDocument, UiKind

PASS = "pass"
FAIL = "fail"
SKIP = "skip"

CHECK_NAMES = ("q1", "q2", "q3", "q4", "q5", "q6", "q7", "q8")

CHECK_TITLES = {
    "q1": "Goal alignment (fields set, topic overlaps prompt)",
    "q2": "Intent set completeness proxy (count window)",
    "q3": "Intent distinctiveness (pairwise token Jaccard)",
    "q4": "Intent relevance (token overlap with prompt/goal)",
    "q5": "Dimension relevance (title overlap with prompt/intents)",
    "q6": "Dimension UI appropriateness (kind and domain well-formed)",
    "q7": "Dimension value appropriateness (in domain, all described)",
    "q8": "Link accuracy (span-valid links, enough intents linked)",
}

_STOPWORDS = frozenset(
    """a an the and or but nor of in on onto for to with without is are am be been being was
    were as at by it its that this these those your yours you i we they he she his her their
    our my me us them than then so such each very about into from up down out over under
    again further once here there when where why how what which who whom whose whether while
    if because until during should would could can may might must will shall do does did
    doing not no own same too just now has have had having more most some any all both few
    other another only between after before against e g etc like also something anything
    please want wants""".split()
)

_TOKEN_RE = re.compile(r"[a-z0-9]+")


def content_tokens(text: str) -> set[str]:
    """Lowercased alphanumeric tokens minus function words and single letters."""
    return {
        token
        for token in _TOKEN_RE.findall(text.lower())
        if len(token) >= 2 and token not in _STOPWORDS
    }


def token_jaccard(a: str, b: str) -> float:
    ta, tb = content_tokens(a), content_tokens(b)
    if not ta and not tb:
        return 1.0
    union = ta | tb
    return len(ta & tb) / len(union) if union else 0.0


@dataclass
class CheckConfig:
    q2_min_intents: int = 3
    q2_max_intents: int = 10
    q3_max_jaccard: float = 0.6
    q8_min_linked_fraction: float = 0.5

    def to_dict(self) -> dict[str, Any]:
        return {
            "q2.min_intents": self.q2_min_intents,
            "q2.max_intents": self.q2_max_intents,
            "q3.max_jaccard": self.q3_max_jaccard,
            "q8.min_linked_fraction": self.q8_min_linked_fraction,
        }

    def apply_override(self, name: str, value: str) -> None:
        targets = {
            "q2.min_intents": ("q2_min_intents", int),
            "q2.max_intents": ("q2_max_intents", int),
            "q3.max_jaccard": ("q3_max_jaccard", float),
            "q8.min_linked_fraction": ("q8_min_linked_fraction", float),
        }
        if name not in targets:
            raise ValueError(f"unknown check parameter {name!r} (known: {sorted(targets)})")
        attr, cast = targets[name]
        setattr(self, attr, cast(value))


@dataclass
class CheckResult:
    check: str
    status: str
    evidence: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {"check": self.check, "status": self.status, "evidence": self.evidence}


@dataclass
class EntryChecks:
    results: dict[str, CheckResult] = field(default_factory=dict)

    def put(self, result: CheckResult) -> None:
        self.results[result.check] = result

    def skip_missing(self, reason: str) -> None:
        for name in CHECK_NAMES:
            if name not in self.results:
                self.results[name] = CheckResult(check=name, status=SKIP, evidence=reason)

    def all_pass(self) -> bool:
        return all(r.status == PASS for r in self.results.values())


def check_q1_goal(goal: Goal, prompt: str) -> CheckResult:
    empty = [name for name, value in goal.to_dict().items() if not value.strip()]
    if empty:
        return CheckResult("q1", FAIL, f"empty goal fields: {', '.join(empty)}")
    overlap = content_tokens(goal.topic) & content_tokens(prompt)
    if not overlap:
        return CheckResult("q1", FAIL, f"topic {goal.topic!r} shares no content token with the prompt")
    return CheckResult("q1", PASS, f"topic overlap: {sorted(overlap)[:4]}")


def check_q2_intent_count(intents: list[Intent], config: CheckConfig) -> CheckResult:
    count = len(intents)
    if not config.q2_min_intents <= count <= config.q2_max_intents:
        return CheckResult(
            "q2", FAIL, f"{count} intents outside [{config.q2_min_intents},{config.q2_max_intents}]"
        )
    return CheckResult("q2", PASS, f"{count} intents")


def check_q3_distinctiveness(intents: list[Intent], config: CheckConfig) -> CheckResult:
    for i, first in enumerate(intents):
        for second in intents[i + 1 :]:
            score = token_jaccard(first.text, second.text)
            if score >= config.q3_max_jaccard:
                return CheckResult(
                    "q3",
                    FAIL,
                    f"near-duplicate pair ({first.id}, {second.id}) jaccard={score:.2f}: "
                    f"{first.text!r} / {second.text!r}",
                )
    return CheckResult("q3", PASS, f"all pairs below {config.q3_max_jaccard}")


def check_q4_intent_relevance(intents: list[Intent], prompt: str, goal: Goal) -> CheckResult:
    reference = content_tokens(prompt) | content_tokens(" ".join(goal.to_dict().values()))
    for intent in intents:
        if not content_tokens(intent.text) & reference:
            return CheckResult("q4", FAIL, f"intent {intent.id} {intent.text!r} shares no token with prompt/goal")
    return CheckResult("q4", PASS, f"{len(intents)} intents grounded")


def check_q5_dimension_relevance(dimensions: list[Dimension], prompt: str, intents: list[Intent]) -> CheckResult:
    reference = content_tokens(prompt) | content_tokens(" ".join(intent.text for intent in intents))
    for dimension in dimensions:
        if not content_tokens(dimension.title) & reference:
            return CheckResult(
                "q5", FAIL, f"dimension {dimension.id} title {dimension.title!r} shares no token with prompt/intents"
            )
    return CheckResult("q5", PASS, f"{len(dimensions)} dimensions grounded")


def check_q6_ui_wellformed(dimensions: list[Dimension]) -> CheckResult:
    for dimension in dimensions:
        if dimension.ui_kind is UiKind.SLIDER:
            if dimension.domain != [str(v) for v in range(1, 6)]:
                return CheckResult("q6", FAIL, f"slider {dimension.id} domain {dimension.domain} is not 1..5")
        elif dimension.ui_kind is UiKind.RADIO:
            if len(dimension.domain) < 2 or len(set(dimension.domain)) != len(dimension.domain):
                return CheckResult("q6", FAIL, f"radio {dimension.id} needs >=2 distinct options")
        elif dimension.ui_kind is UiKind.HASHTAG:
            if dimension.domain:
                return CheckResult("q6", FAIL, f"hashtag {dimension.id} must have an open domain")
            if len(set(dimension.current)) != len(dimension.current):
                return CheckResult("q6", FAIL, f"hashtag {dimension.id} has duplicate tags")
        else:  # unreachable with the UiKind enum; defensive
            return CheckResult("q6", FAIL, f"dimension {dimension.id} has unknown ui_kind")
    return CheckResult("q6", PASS, f"{len(dimensions)} dimensions well-formed")


def check_q7_values(dimensions: list[Dimension]) -> CheckResult:
    for dimension in dimensions:
        if dimension.ui_kind in (UiKind.SLIDER, UiKind.RADIO):
            if len(dimension.current) != 1 or dimension.current[0] not in dimension.domain:
                return CheckResult(
                    "q7", FAIL, f"dimension {dimension.id} current {dimension.current} outside domain"
                )
            undescribed = [v for v in dimension.domain if not dimension.value_descriptions.get(v, "").strip()]
        else:
            undescribed = [v for v in dimension.current if not dimension.value_descriptions.get(v, "").strip()]
        if undescribed:
            return CheckResult("q7", FAIL, f"dimension {dimension.id} values without description: {undescribed}")
    return CheckResult("q7", PASS, "all values in domain and described")


def check_q8_links(
    document: OutputDocument,
    intents: list[Intent],
    links: list[Link],
    repairs: int,
    config: CheckConfig,
) -> CheckResult:
    length = len(document.canonical_text)
    for link in links:
        previous_end = -1
        for start, end in link.spans:
            if not (0 <= start < end <= length) or start < previous_end:
                return CheckResult("q8", FAIL, f"invalid span [{start},{end}) on {link.source}")
            previous_end = end
    linked_intent_ids = {
        link.source.intent_id
        for link in links
        if hasattr(link.source, "intent_id") and link.spans
    }
    fraction = len(linked_intent_ids) / len(intents) if intents else 1.0
    evidence = f"{len(linked_intent_ids)}/{len(intents)} intents linked, repairs={repairs}"
    if fraction < config.q8_min_linked_fraction:
        return CheckResult("q8", FAIL, evidence + f" (< {config.q8_min_linked_fraction:.0%})")
    return CheckResult("q8", PASS, evidence)


# SchemaViolation codes mapped to the check that owns the violated property.
CODE_TO_CHECK = {
    "goal_field_missing": "q1",
    "goal_field_empty": "q1",
    "goal_not_object": "q1",
    "intents_missing": "q2",
    "intents_empty": "q2",
    "intent_text_missing": "q4",
    "intent_text_empty": "q4",
    "intent_salience_invalid": "q2",
    "dimension_title_missing": "q5",
    "dimension_title_empty": "q5",
    "dimension_ui_kind_invalid": "q6",
    "dimension_domain_malformed": "q6",
    "dimension_value_out_of_domain": "q7",
    "dimension_description_missing": "q7",
}
