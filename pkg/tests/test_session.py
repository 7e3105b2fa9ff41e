"""Session state machine: edits, paging, rollback, serialization round-trips."""

from __future__ import annotations

import pytest

from intentflow.core import (
    ActionKind,
    ActionSource,
    AddIntent,
    AddTag,
    DeleteIntent,
    IntentOrigin,
    IntentRef,
    Link,
    Provenance,
    RemoveTag,
    ReviseIntent,
    SetRadio,
    SetSlider,
    ToggleKeep,
    dumps_session,
    loads_session,
    new_session,
    pages_hash,
    session_hash,
)
from intentflow.errors import (
    AlreadyAnnotated,
    LinkValidationError,
    NotFound,
    StateError,
    ValidationError,
)

from .conftest import make_document, seeded_session


# -- construction -------------------------------------------------------------


def test_new_session_is_empty():
    session = new_session()
    assert session.pages == []
    assert session.turn_counter == 0
    assert session.intents == [] and session.dimensions == []
    assert session.action_log == [] and session.chat_history == []


def test_new_sessions_have_distinct_ids():
    assert new_session().session_id != new_session().session_id


def test_serialize_round_trip_is_identity():
    # Oracle: serialize then deserialize must reproduce a structurally equal state.
    session = seeded_session()
    session.apply_intent_edit(AddIntent("Use analogies"))
    session.apply_dimension_edit(SetSlider("d1", 3))
    restored = loads_session(dumps_session(session))
    assert restored == session
    assert session_hash(restored) == session_hash(session)


# -- goal edits ---------------------------------------------------------------


def test_goal_edit_replaces_named_fields_only(session):
    session.apply_goal_edit({"topic": "cellular respiration"})
    assert session.goal.topic == "cellular respiration"
    assert session.goal.task_goal == "Write a concise article"
    assert session.action_log[-1].kind is ActionKind.ADJUST
    assert session.action_log[-1].source is ActionSource.GOAL_EDIT
    assert session.action_log[-1].auto_classified


def test_goal_edit_with_identical_values_still_logged(session):
    before = session.goal.to_dict()
    revision = session.apply_goal_edit({"topic": session.goal.topic})
    assert session.goal.to_dict() == before
    assert revision.regeneration_required
    assert session.action_log[-1].action_id == revision.action_id


def test_goal_edit_empty_field_rejected(session):
    with pytest.raises(ValidationError):
        session.apply_goal_edit({"task_goal": "   "})


def test_goal_edit_before_first_turn_rejected():
    with pytest.raises(StateError):
        new_session().apply_goal_edit({"topic": "anything"})


def test_goal_edit_control_characters_rejected(session):
    with pytest.raises(ValidationError):
        session.apply_goal_edit({"topic": "bad\x00topic"})


# -- intent edits --------------------------------------------------------------


def test_add_intent_assigns_fresh_id_and_signals_regeneration(session):
    revision = session.apply_intent_edit(AddIntent("Use simpler terminology"))
    added = session.intents[-1]
    assert added.id == "i3"
    assert added.origin is IntentOrigin.USER_ADDED
    assert not added.kept
    assert revision.regeneration_required
    assert session.action_log[-1].kind is ActionKind.ADD


def test_intent_ids_never_reused_after_deletion(session):
    session.apply_intent_edit(DeleteIntent("i2"))
    revision = session.apply_intent_edit(AddIntent("Brand new"))
    assert revision.detail["intent_id"] == "i3"
    assert {i.id for i in session.intents} == {"i1", "i3"}


def test_revise_preserves_id_and_sets_origin(session):
    session.apply_intent_edit(ReviseIntent("i1", "Keep it very concise"))
    intent = session.intent_by_id("i1")
    assert intent.text == "Keep it very concise"
    assert intent.origin is IntentOrigin.REVISED
    assert session.action_log[-1].kind is ActionKind.ADJUST


def test_toggle_keep_is_involution_without_pages(session):
    pages_before = len(session.pages)
    actions_before = len(session.action_log)
    first = session.apply_intent_edit(ToggleKeep("i1"))
    second = session.apply_intent_edit(ToggleKeep("i1"))
    assert not first.regeneration_required and not second.regeneration_required
    assert not session.intent_by_id("i1").kept
    assert len(session.pages) == pages_before
    # keep toggles are telemetry, not actions
    assert len(session.action_log) == actions_before
    assert [t.event for t in session.telemetry[-2:]] == ["keep_toggle", "keep_toggle"]


def test_unknown_intent_rejected(session):
    with pytest.raises(NotFound):
        session.apply_intent_edit(DeleteIntent("i404"))
    with pytest.raises(ValidationError):
        session.apply_intent_edit(AddIntent("  "))


def test_intent_cap_enforced(session):
    for i in range(8):
        session.apply_intent_edit(AddIntent(f"intent number {i}"))
    assert len(session.intents) == 10
    with pytest.raises(ValidationError):
        session.apply_intent_edit(AddIntent("one too many"))


# -- dimension edits --------------------------------------------------------------


def test_set_slider_updates_value_and_logs_adjust(session):
    session.apply_dimension_edit(SetSlider("d1", 3))
    assert session.dimension_by_id("d1").slider_level == 3
    record = session.action_log[-1]
    assert record.kind is ActionKind.ADJUST
    assert record.source is ActionSource.DIMENSION_WIDGET
    assert record.payload["from"] == "4" and record.payload["to"] == "3"


def test_slider_out_of_range_rejected(session):
    with pytest.raises(ValidationError):
        session.apply_dimension_edit(SetSlider("d1", 9))


def test_radio_unknown_option_rejected(session):
    with pytest.raises(ValidationError):
        session.apply_dimension_edit(SetRadio("d2", "Nonsense"))
    session.apply_dimension_edit(SetRadio("d2", "Importance"))
    assert session.dimension_by_id("d2").current == ["Importance"]


def test_tag_add_remove_restores_set_with_two_actions(session):
    before = list(session.dimension_by_id("d3").current)
    session.apply_dimension_edit(AddTag("d3", "#playful"))
    session.apply_dimension_edit(RemoveTag("d3", "#playful"))
    assert session.dimension_by_id("d3").current == before
    kinds = [r.kind for r in session.action_log[-2:]]
    assert kinds == [ActionKind.ADD, ActionKind.DELETE]


def test_tag_set_stays_duplicate_free(session):
    session.apply_dimension_edit(AddTag("d3", "#scientific"))
    assert session.dimension_by_id("d3").current.count("#scientific") == 1


def test_unknown_dimension_rejected(session):
    with pytest.raises(NotFound):
        session.apply_dimension_edit(SetSlider("d404", 2))


# -- pages, rollback ---------------------------------------------------------------


def test_first_append_gets_page_number_one():
    session = new_session()
    number = session.append_page(make_document("hello"), [], Provenance(kind="initial"))
    assert number == 1
    assert session.page_at(1).document.canonical_text == "hello"


def test_snapshot_isolated_from_later_panel_edits(session):
    snapshot_before = pages_hash(session)
    session.apply_intent_edit(ReviseIntent("i1", "Changed after the page"))
    session.apply_dimension_edit(SetSlider("d1", 1))
    session.goal.topic = "mutated"
    assert pages_hash(session) == snapshot_before
    assert session.page_at(1).snapshot.intent_by_id("i1").text == "Keep it concise"


def test_append_with_out_of_bounds_span_refused(session):
    document = make_document("tiny")
    links = [Link(source=IntentRef("i1"), spans=[(0, 400)])]
    with pytest.raises(LinkValidationError):
        session.append_page(document, links, Provenance(kind="chat_prompt"))
    assert len(session.pages) == 1


def test_rollback_appends_copy_and_restores_panel(session):
    session.apply_dimension_edit(SetSlider("d1", 2))
    session.append_page(make_document("second version"), [], Provenance(kind="panel_edit"))
    session.apply_intent_edit(AddIntent("Something newer"))
    session.append_page(make_document("third version"), [], Provenance(kind="panel_edit"))
    assert [p.page_number for p in session.pages] == [1, 2, 3]

    new_number = session.rollback(2)
    assert new_number == 4
    assert [p.page_number for p in session.pages] == [1, 2, 3, 4]
    target, clone = session.page_at(2), session.page_at(4)
    assert clone.document == target.document
    assert clone.snapshot == target.snapshot
    assert clone.links == target.links
    assert clone.provenance == Provenance.rollback_of_page(2)
    # live panel restored to the target snapshot
    assert [i.id for i in session.intents] == [i.id for i in target.snapshot.intents]
    assert session.dimension_by_id("d1").slider_level == 2
    assert session.action_log[-1].kind is ActionKind.ROLLBACK


def test_rollback_of_latest_duplicates_it(session):
    new_number = session.rollback(1)
    assert new_number == 2
    assert session.page_at(2).document == session.page_at(1).document
    assert session.page_at(2).snapshot == session.page_at(1).snapshot


def test_rollback_out_of_range_rejected(session):
    with pytest.raises(NotFound):
        session.rollback(0)
    with pytest.raises(NotFound):
        session.rollback(99)


def test_page_at_zero_not_found(session):
    with pytest.raises(NotFound):
        session.page_at(0)


def test_list_pages_matches_generation_count(session):
    session.append_page(make_document("v2"), [], Provenance(kind="panel_edit"))
    summaries = session.list_pages()
    assert [s.page_number for s in summaries] == [1, 2]
    assert summaries[0].provenance == "initial"
    assert summaries[1].provenance == "panel_edit"


# -- annotation -----------------------------------------------------------------


def test_annotate_only_pending_actions(session):
    session.apply_dimension_edit(SetSlider("d1", 5))
    widget_action = session.action_log[-1]
    with pytest.raises(AlreadyAnnotated):
        session.annotate_action(widget_action.action_id, ActionKind.CORRECT)
    with pytest.raises(NotFound):
        session.annotate_action("a999", ActionKind.CORRECT)
