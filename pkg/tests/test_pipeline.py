"""Pipeline: routing, reconciliation, generation context, linking, atomicity."""

from __future__ import annotations

import json

import pytest

from intentflow.core import (
    ActionKind,
    IntentRef,
    SetSlider,
    ToggleKeep,
    new_session,
    session_hash,
)
from intentflow.data import walkthrough_fixtures_path
from intentflow.errors import NotFound, TurnFailed, ValidationError
from intentflow.gateway import (
    FixtureStore,
    Gateway,
    ModuleKind,
    ProviderConfig,
    ReplayProvider,
)
from intentflow.gateway.schemas import IntentItem
from intentflow.pipeline import (
    enforce_cascade,
    link_all,
    locate_quotes,
    plan_regeneration,
    reconcile_dimensions,
    reconcile_intents,
    run_turn,
)

from .conftest import make_document, make_intent, make_slider

PROMPT_1 = "Write a scientific and concise article on photosynthesis."
PROMPT_2 = (
    "I want to make the article easier for readers without a science background to understand, "
    "while keeping the academic tone"
)
PROMPT_3 = "Add a bit more background about why photosynthesis is important for the environment."
KEPT_TEXT = "Include key concepts and processes of photosynthesis"


def replay_gateway() -> Gateway:
    return Gateway(ReplayProvider(FixtureStore(walkthrough_fixtures_path())), ProviderConfig())


@pytest.fixture
def gateway() -> Gateway:
    return replay_gateway()


# -- routing ------------------------------------------------------------------


def test_first_prompt_invokes_all_four(gateway):
    session = new_session("wt")
    result = run_turn(session, PROMPT_1, gateway=gateway)
    assert result.decision.invoke == ["goal", "intent", "dimension", "output"]
    assert result.new_page == 1


def test_followup_keeps_goal_uninvoked(gateway):
    session = new_session("wt")
    run_turn(session, PROMPT_1, gateway=gateway)
    goal_before = session.goal.to_dict()
    result = run_turn(session, PROMPT_2, gateway=gateway)
    assert "goal" not in result.decision.invoke
    assert session.goal.to_dict() == goal_before
    assert session.intent_by_id("i5").text.startswith("Use simpler terminology")


def test_targeted_prompt_scopes_intent_and_output(gateway):
    session = new_session("wt")
    run_turn(session, PROMPT_1, gateway=gateway)
    run_turn(session, PROMPT_2, gateway=gateway)
    session.apply_intent_edit(ToggleKeep("i1"))
    result = run_turn(session, PROMPT_3, "i3", gateway=gateway)
    assert result.decision.targeted_intent == "i3"
    assert result.decision.invoke == ["intent", "output"]
    assert result.panel_changes.revised_intents == ["i3"]


def test_empty_prompt_rejected(gateway):
    with pytest.raises(ValidationError):
        run_turn(new_session("wt"), "   ", gateway=gateway)


def test_unknown_targeted_intent_rejected(gateway):
    session = new_session("wt")
    with pytest.raises(NotFound):
        run_turn(session, "anything", "i404", gateway=gateway)


def test_cascade_invariant():
    assert enforce_cascade(["goal"]) == ["goal", "intent", "dimension", "output"]
    assert enforce_cascade(["intent"]) == ["intent", "output"]
    assert enforce_cascade(["dimension"]) == ["dimension", "output"]
    assert enforce_cascade(["output"]) == ["output"]
    assert enforce_cascade([]) == []


# -- extraction fixtures -----------------------------------------------------------


def test_goal_extraction_matches_fixture(gateway):
    session = new_session("wt")
    run_turn(session, PROMPT_1, gateway=gateway)
    assert session.goal.topic == "photosynthesis"
    assert "science writing" in session.goal.writing_domain
    assert session.goal.task_goal


def test_intent_extraction_includes_expected_intents(gateway):
    session = new_session("wt")
    run_turn(session, PROMPT_1, gateway=gateway)
    texts = [intent.text for intent in session.intents]
    assert KEPT_TEXT in texts
    assert "Ensure the topic adheres to academic writing standards" in texts


def test_dimension_extraction_matches_walkthrough(gateway):
    session = new_session("wt")
    run_turn(session, PROMPT_1, gateway=gateway)
    by_title = {d.title: d for d in session.dimensions}
    assert by_title["Length of Article"].ui_kind.value == "slider"
    assert by_title["Length of Article"].slider_level == 4
    assert by_title["Article focus"].ui_kind.value == "radio"
    assert by_title["Writing tone"].ui_kind.value == "hashtag"
    for dimension in session.dimensions:
        values = dimension.domain if dimension.domain else dimension.current
        assert all(dimension.value_descriptions.get(v, "").strip() for v in values)


def test_replay_is_deterministic(gateway):
    first = new_session("a")
    run_turn(first, PROMPT_1, gateway=gateway)
    second = new_session("a")
    run_turn(second, PROMPT_1, gateway=replay_gateway())
    assert session_hash(first) == session_hash(second)


# -- reconciliation (no model) ------------------------------------------------------


def _items(*texts_saliences) -> list[IntentItem]:
    return [IntentItem(text=text, salience=salience) for text, salience in texts_saliences]


def test_reconcile_preserves_id_on_normalized_match():
    existing = [make_intent("i1", "Keep it concise")]
    merged, changes = reconcile_intents(existing, _items(("  keep IT  concise ", 0.5)), 1, 2)
    assert [intent.id for intent in merged] == ["i1"]
    assert changes.added_intents == [] and changes.removed_intents == []


def test_reconcile_keeps_kept_intents_absent_from_proposal():
    existing = [make_intent("i1", "Stay formal", kept=True), make_intent("i2", "Use examples")]
    merged, changes = reconcile_intents(existing, _items(("Something new", 0.9)), 2, 2)
    ids = [intent.id for intent in merged]
    assert "i1" in ids and "i2" not in ids and "i3" in ids
    assert changes.removed_intents == ["i2"]
    assert changes.added_intents == ["i3"]


def test_reconcile_caps_at_ten_dropping_lowest_salience():
    existing = [make_intent("i1", "Anchor intent", kept=True)]
    proposal = _items(*[(f"Proposal number {n}", n / 20) for n in range(1, 15)])
    merged, _ = reconcile_intents(existing, proposal, 1, 1)
    assert len(merged) == 10
    texts = {intent.text for intent in merged}
    # highest-salience proposals survive
    assert "Proposal number 14" in texts and "Proposal number 1" not in texts


def test_reconcile_dimensions_user_value_wins():
    existing = [make_slider("d1", "Length of Article", level=3)]
    from intentflow.gateway.schemas import DimensionItem

    proposal = [
        DimensionItem(
            title="length of article",
            ui_kind="slider",
            domain=[str(v) for v in range(1, 6)],
            initial=5,
            descriptions={str(v): "level" for v in range(1, 6)},
        )
    ]
    merged, changes = reconcile_dimensions(existing, proposal, 1)
    assert merged[0].id == "d1"
    assert merged[0].slider_level == 3  # user setting beats the re-proposal
    assert changes.added_dimensions == []


# -- linking ---------------------------------------------------------------------


def test_fixture_quote_located_at_first_occurrence(gateway):
    # Substring-search oracle: the span must equal [find(q), find(q)+len(q)).
    session = new_session("wt")
    run_turn(session, PROMPT_1, gateway=gateway)
    page = session.page_at(1)
    quote = "sunlight into chemical energy"
    start = page.document.canonical_text.find(quote)
    assert start >= 0
    link = next(l for l in page.links if isinstance(l.source, IntentRef) and l.source.intent_id == "i1")
    assert (start, start + len(quote)) in link.spans


def test_unlocatable_quote_dropped_and_counted():
    document = make_document("only this text exists")
    spans, dropped = locate_quotes(document, ["only this", "never present"])
    assert spans == [(0, 9)]
    assert dropped == 1


def test_zero_sources_yield_empty_links(gateway):
    outcome = link_all(make_document("text"), [], [], gateway)
    assert outcome.links == [] and outcome.repairs == 0


def test_links_ordered_by_source(gateway):
    session = new_session("wt")
    run_turn(session, PROMPT_1, gateway=gateway)
    page = session.page_at(1)
    keys = [
        (0, link.source.intent_id) if isinstance(link.source, IntentRef) else (1, link.source.dimension_id)
        for link in page.links
    ]
    assert keys == sorted(keys, key=lambda k: (k[0], int(k[1][1:])))


# -- output request contract ----------------------------------------------------------


def test_kept_intent_text_in_must_preserve_block(gateway):
    session = new_session("wt")
    run_turn(session, PROMPT_1, gateway=gateway)
    run_turn(session, PROMPT_2, gateway=gateway)
    session.apply_intent_edit(ToggleKeep("i1"))
    run_turn(session, PROMPT_3, "i3", gateway=gateway)
    request = gateway.output_requests()[-1]
    assert "MUST-PRESERVE" in request
    assert KEPT_TEXT in request.split("MUST-PRESERVE:")[1]


def test_targeted_request_carries_previous_document_and_instruction(gateway):
    session = new_session("wt")
    run_turn(session, PROMPT_1, gateway=gateway)
    run_turn(session, PROMPT_2, gateway=gateway)
    session.apply_intent_edit(ToggleKeep("i1"))
    previous_text = session.page_at(2).document.canonical_text
    run_turn(session, PROMPT_3, "i3", gateway=gateway)
    request = gateway.output_requests()[-1]
    assert "PREVIOUS DOCUMENT" in request
    assert previous_text in request
    assert PROMPT_3 in request
    assert "TARGETED REVISION" in request


def test_targeted_turn_changes_only_targeted_intent(gateway):
    # Snapshot-diff oracle between consecutive pages.
    session = new_session("wt")
    run_turn(session, PROMPT_1, gateway=gateway)
    run_turn(session, PROMPT_2, gateway=gateway)
    session.apply_intent_edit(ToggleKeep("i1"))
    run_turn(session, PROMPT_3, "i3", gateway=gateway)
    before = {i.id: i.text for i in session.page_at(2).snapshot.intents}
    after = {i.id: i.text for i in session.page_at(3).snapshot.intents}
    assert set(before) == set(after)
    changed = [intent_id for intent_id in before if before[intent_id] != after[intent_id]]
    assert changed == ["i3"]


# -- regeneration and atomicity -----------------------------------------------------


def test_panel_edit_regeneration_round(gateway):
    session = new_session("wt")
    run_turn(session, PROMPT_1, gateway=gateway)
    run_turn(session, PROMPT_2, gateway=gateway)
    session.apply_intent_edit(ToggleKeep("i1"))
    run_turn(session, PROMPT_3, "i3", gateway=gateway)
    session.apply_dimension_edit(SetSlider("d1", 3))
    effect = plan_regeneration(session, gateway)
    page_number = session.apply_regeneration(effect)
    assert page_number == 4
    assert session.page_at(4).provenance.label() == "panel_edit"
    assert session.page_at(4).snapshot.dimension_by_id("d1").slider_level == 3


class FailingAt:
    """Wraps a provider, raising at a chosen module kind."""

    def __init__(self, inner, kind: ModuleKind):
        self.inner = inner
        self.kind = kind

    def complete(self, request):
        if request.kind is self.kind:
            raise RuntimeError(f"injected failure at {self.kind.value}")
        return self.inner.complete(request)


def test_failing_output_stage_is_atomic():
    store = FixtureStore(walkthrough_fixtures_path())
    failing = Gateway(FailingAt(ReplayProvider(store), ModuleKind.OUTPUT), ProviderConfig())
    session = new_session("wt")
    before = session_hash(session)
    with pytest.raises(TurnFailed) as err:
        run_turn(session, PROMPT_1, gateway=failing)
    assert err.value.stage == "output"
    assert session_hash(session) == before
    assert session.pages == [] and session.intents == []


def test_provider_failure_at_linking_appends_zero_link_page():
    # Per-request linking failures are lenient: the page still lands.
    store = FixtureStore(walkthrough_fixtures_path())
    failing = Gateway(FailingAt(ReplayProvider(store), ModuleKind.LINKING), ProviderConfig())
    session = new_session("wt")
    result = run_turn(session, PROMPT_1, gateway=failing)
    assert result.new_page == 1
    assert all(link.spans == [] for link in session.page_at(1).links)


def test_reply_only_turn_produces_no_page():
    class ReplyOnly:
        def complete(self, request):
            assert request.kind is ModuleKind.ENTRYPOINT
            return json.dumps({"reply": "Nothing to change.", "invoke": [], "provisional_kind": "Adjust"})

    gateway = Gateway(ReplyOnly(), ProviderConfig())
    session = new_session("wt")
    session.turn_counter = 1  # not the first turn, so the model's empty invoke stands
    result = run_turn(session, "what does the slider do?", gateway=gateway)
    assert result.new_page is None
    assert session.pages == []
    assert session.chat_history[-1].text == "Nothing to change."
    assert session.action_log[-1].kind is ActionKind.ADJUST
    assert session.action_log[-1].annotation_pending
