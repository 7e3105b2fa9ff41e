"""Human-rating forms: one Yes/No questionnaire per corpus entry.

The eight questions cover goal alignment, intent set quality, individual
intents, dimensions, and link accuracy; per-item questions repeat for each
intent, dimension, and highlighted passage. Each form embeds the generated
document verbatim so raters judge exactly what the pipeline produced.
"""

from __future__ import annotations

from pathlib import Path

from intentflow.bench.run import StructuralReport

Q1 = (
    "Do you think the task goal, domain, and topic described below appropriately "
    "reflect the user's high-level and overall goal?"
)
Q2 = (
    "Do you think the set of intents cover all key aspects of the user prompt "
    "without missing anything important?"
)
Q3 = "Do you think the intents are meaningfully distinct from each other without redundancy?"
Q4 = "Do you think this intent is relevant to the user prompt?"
Q5 = "Do you think this intent dimension is relevant to the user prompt?"
Q6 = (
    "Do you think the UI component (e.g., hashtags, slider, radio buttons) is "
    "appropriate to control this intent dimension's value?"
)
Q7 = "Do you think this intent dimension value in this UI component is appropriate to the user's prompt?"
Q8 = "Does the highlighted part correspond to the intent?"

_YESNO = "[ ] Yes   [ ] No"


def _render_form(index: int, entry_report) -> str:
    session = entry_report.session_document["session"]
    entry = entry_report.entry
    goal = session["goal"]
    intents = session["intents"]
    dimensions = session["dimensions"]
    page = session["pages"][0]
    text = page["document"]["canonical_text"]
    intent_by_id = {intent["id"]: intent for intent in intents}
    dimension_by_id = {dimension["id"]: dimension for dimension in dimensions}

    lines: list[str] = []
    out = lines.append
    out(f"# Rating form — entry {index:02d} ({entry.writing_context}: {entry.task})")
    out("")
    out("## User prompt")
    out("")
    out(f"> {entry.prompt}")
    out("")
    out("## Generated document")
    out("")
    for section in page["document"]["sections"]:
        if section.get("header"):
            out(f"### {section['header']}")
        out(section["body"])
        out("")
    out("## Q1. Goal alignment")
    out("")
    out(f"Task goal: {goal['task_goal']}")
    out(f"Domain: {goal['writing_domain']}")
    out(f"Topic: {goal['topic']}")
    out("")
    out(f"{Q1}")
    out(_YESNO)
    out("")
    out("## Q2. Set of intents — completeness")
    out("")
    for intent in intents:
        out(f"- {intent['text']}")
    out("")
    out(f"{Q2}")
    out(_YESNO)
    out("")
    out("## Q3. Set of intents — distinctiveness")
    out("")
    out(f"{Q3}")
    out(_YESNO)
    out("")
    out("## Q4. Individual intents — relevance")
    out("")
    out(f"{Q4}")
    for intent in intents:
        out(f"- {intent['text']}: {_YESNO}")
    out("")
    out("## Q5. Intent dimensions — relevance")
    out("")
    out(f"{Q5}")
    for dimension in dimensions:
        out(f"- {dimension['title']}: {_YESNO}")
    out("")
    out("## Q6. Intent dimensions — UI appropriateness")
    out("")
    out(f"{Q6}")
    for dimension in dimensions:
        out(f"- {dimension['title']} ({dimension['ui_kind']}): {_YESNO}")
    out("")
    out("## Q7. Intent dimensions — value appropriateness")
    out("")
    out(f"{Q7}")
    for dimension in dimensions:
        values = ", ".join(dimension["current"])
        out(f"- {dimension['title']} = {values}: {_YESNO}")
    out("")
    out("## Q8. Intent-to-output linking — link accuracy")
    out("")
    out(f"{Q8}")
    for link in page["links"]:
        source = link["source"]
        if source["kind"] == "intent":
            intent = intent_by_id.get(source["intent_id"])
            label = f"intent \"{intent['text']}\"" if intent else source["intent_id"]
        else:
            dimension = dimension_by_id.get(source["dimension_id"])
            title = dimension["title"] if dimension else source["dimension_id"]
            label = f"dimension {title} = {source['value']}"
        for start, end in link["spans"]:
            excerpt = text[start:end]
            out(f"- {label} → \"{excerpt}\": {_YESNO}")
    out("")
    return "\n".join(lines)


def export_rating_forms(report: StructuralReport, out_dir: str | Path) -> list[Path]:
    """One markdown form per successfully evaluated entry; returns written paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    for entry_report in report.entries:
        if entry_report.session_document is None:
            continue
        path = out_dir / f"form-entry-{entry_report.index:02d}.md"
        path.write_text(_render_form(entry_report.index, entry_report), encoding="utf-8")
        written.append(path)
    return written
