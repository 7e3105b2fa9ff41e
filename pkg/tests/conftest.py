"""Shared builders for session/document fixtures."""

from __future__ import annotations

import pytest

from intentflow.core import (
    Dimension,
    Goal,
    Intent,
    IntentOrigin,
    OutputDocument,
    PanelSnapshot,
    Provenance,
    Section,
    SessionState,
    UiKind,
    new_session,
)


def make_document(*bodies: str, headers: list[str | None] | None = None) -> OutputDocument:
    sections = []
    for i, body in enumerate(bodies):
        header = headers[i] if headers else None
        sections.append(Section(body=body, header=header))
    return OutputDocument.from_sections(sections)


def make_goal() -> Goal:
    return Goal(task_goal="Write a concise article", writing_domain="science writing", topic="photosynthesis")


def make_intent(intent_id: str = "i1", text: str = "Keep it concise", kept: bool = False) -> Intent:
    return Intent(id=intent_id, text=text, kept=kept, origin=IntentOrigin.EXTRACTED, created_turn=1)


def make_slider(dimension_id: str = "d1", title: str = "Length of Article", level: int = 4) -> Dimension:
    return Dimension(
        id=dimension_id,
        title=title,
        ui_kind=UiKind.SLIDER,
        domain=[str(v) for v in range(1, 6)],
        current=[str(level)],
        value_descriptions={str(v): f"Level {v} detail" for v in range(1, 6)},
    )


def make_radio(dimension_id: str = "d2", title: str = "Article focus") -> Dimension:
    options = ["Process", "Importance", "Applications"]
    return Dimension(
        id=dimension_id,
        title=title,
        ui_kind=UiKind.RADIO,
        domain=options,
        current=[options[0]],
        value_descriptions={opt: f"Focus on {opt.lower()}" for opt in options},
    )


def make_hashtag(dimension_id: str = "d3", title: str = "Writing tone") -> Dimension:
    tags = ["#scientific", "#concise"]
    return Dimension(
        id=dimension_id,
        title=title,
        ui_kind=UiKind.HASHTAG,
        domain=[],
        current=list(tags),
        value_descriptions={tag: f"Tone {tag}" for tag in tags},
    )


def seeded_session(session_id: str = "s-test") -> SessionState:
    """Session that already completed one turn, with a page on file."""
    session = new_session(session_id)
    session.goal = make_goal()
    session.intents = [make_intent("i1"), make_intent("i2", "Explain key processes", kept=False)]
    session.intent_seq = 2
    session.dimensions = [make_slider("d1"), make_radio("d2"), make_hashtag("d3")]
    session.dimension_seq = 3
    document = make_document("Photosynthesis converts sunlight into chemical energy. ", "Plants use chlorophyll.")
    session.append_page(document, [], Provenance(kind="initial"))
    session.turn_counter = 1
    return session


def make_snapshot() -> PanelSnapshot:
    return PanelSnapshot.capture(
        make_goal(),
        [make_intent("i1"), make_intent("i2", "Explain key processes")],
        [make_slider("d1"), make_radio("d2"), make_hashtag("d3")],
    )


@pytest.fixture
def session() -> SessionState:
    return seeded_session()
