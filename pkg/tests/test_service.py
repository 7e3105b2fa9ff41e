"""Service: endpoints, event stream, single-writer rule, event-sourced recovery."""

from __future__ import annotations

import json

import pytest
from fastapi.testclient import TestClient

from intentflow.core import session_hash
from intentflow.data import walkthrough_fixtures_path
from intentflow.errors import StoreLocked
from intentflow.gateway import FixtureStore, Gateway, ModuleKind, ProviderConfig, ReplayProvider
from intentflow.service.app import create_app, sse_decode
from intentflow.service.service import SessionService
from intentflow.service.store import EventLogStore, replay_log

PROMPT_1 = "Write a scientific and concise article on photosynthesis."
PROMPT_2 = (
    "I want to make the article easier for readers without a science background to understand, "
    "while keeping the academic tone"
)
PROMPT_3 = "Add a bit more background about why photosynthesis is important for the environment."


def replay_gateway() -> Gateway:
    return Gateway(ReplayProvider(FixtureStore(walkthrough_fixtures_path())), ProviderConfig())


@pytest.fixture
def service(tmp_path) -> SessionService:
    store = EventLogStore(tmp_path / "data")
    svc = SessionService(replay_gateway(), store)
    yield svc
    store.close()


@pytest.fixture
def client(service) -> TestClient:
    return TestClient(create_app(service))


def create_session(client) -> str:
    response = client.post("/sessions")
    assert response.status_code == 201
    return response.json()["session_id"]


def run_walkthrough(client, session_id: str) -> None:
    """Scripted scenario: two chat turns, keep, targeted turn, slider edit."""
    assert client.post(f"/sessions/{session_id}/chat", json={"prompt": PROMPT_1}).json()["new_page"] == 1
    assert client.post(f"/sessions/{session_id}/chat", json={"prompt": PROMPT_2}).json()["new_page"] == 2
    assert client.patch(f"/sessions/{session_id}/intents/i1", json={"kept": True}).status_code == 200
    targeted = client.post(
        f"/sessions/{session_id}/chat", json={"prompt": PROMPT_3, "targeted_intent": "i3"}
    )
    assert targeted.json()["new_page"] == 3
    slider = client.patch(f"/sessions/{session_id}/dimensions/d1", json={"level": 3})
    assert slider.json()["new_page"] == 4


# -- lifecycle ---------------------------------------------------------------


def test_health_and_empty_session_export(client):
    assert client.get("/health").json()["status"] == "ok"
    session_id = create_session(client)
    document = client.get(f"/sessions/{session_id}").json()
    assert document["schema"] == "intentflow/session/v1"
    assert document["session"]["pages"] == []  # present, not absent
    assert document["session"]["action_log"] == []


def test_unknown_session_is_404(client):
    assert client.get("/sessions/nope").status_code == 404
    assert client.post("/sessions/nope/chat", json={"prompt": "hi"}).status_code == 404


# -- chat -----------------------------------------------------------------------


def test_chat_emits_status_reply_page_ready(client):
    session_id = create_session(client)
    response = client.post(f"/sessions/{session_id}/chat", json={"prompt": PROMPT_1})
    assert response.status_code == 200
    body = response.json()
    assert body["new_page"] == 1
    assert body["invoked"] == ["goal", "intent", "dimension", "output"]

    stream = client.get(f"/sessions/{session_id}/events", params={"mode": "poll"})
    events = sse_decode(stream.text)
    kinds = [event["kind"] for event in events]
    assert kinds[-2:] == ["reply", "page_ready"]
    assert all(kind == "status" for kind in kinds[:-2]) and len(kinds) > 2
    seqs = [event["seq"] for event in events]
    assert seqs == list(range(1, len(seqs) + 1))  # gap-free, increasing


def test_empty_prompt_is_422(client):
    session_id = create_session(client)
    assert client.post(f"/sessions/{session_id}/chat", json={"prompt": "  "}).status_code == 422


def test_concurrent_chat_is_409(client, service):
    session_id = create_session(client)
    runtime = service.runtime(session_id)
    assert runtime.writer.acquire(blocking=False)  # simulate a turn in flight
    try:
        response = client.post(f"/sessions/{session_id}/chat", json={"prompt": PROMPT_1})
        assert response.status_code == 409
    finally:
        runtime.writer.release()


# -- panel edits ---------------------------------------------------------------------


def test_slider_edit_appends_panel_edit_page(client):
    session_id = create_session(client)
    run_walkthrough(client, session_id)
    page = client.get(f"/sessions/{session_id}/pages/4").json()
    assert page["provenance"] == {"kind": "panel_edit"}
    assert page["snapshot"]["dimensions"][0]["current"] == ["3"]


def test_keep_toggle_updates_panel_without_page(client):
    session_id = create_session(client)
    client.post(f"/sessions/{session_id}/chat", json={"prompt": PROMPT_1})
    before = client.get(f"/sessions/{session_id}/events", params={"mode": "poll"})
    seq_before = sse_decode(before.text)[-1]["seq"]

    response = client.patch(f"/sessions/{session_id}/intents/i1", json={"kept": True})
    assert response.json()["new_page"] is None

    after = client.get(f"/sessions/{session_id}/events", params={"mode": "poll", "after": seq_before})
    kinds = [event["kind"] for event in sse_decode(after.text)]
    assert kinds == ["panel_updated"]
    assert client.get(f"/sessions/{session_id}/pages").json()["pages"][-1]["page_number"] == 1


def test_delete_unknown_intent_is_422_with_notfound_detail(client):
    session_id = create_session(client)
    client.post(f"/sessions/{session_id}/chat", json={"prompt": PROMPT_1})
    response = client.delete(f"/sessions/{session_id}/intents/i99")
    assert response.status_code == 422
    assert response.json()["detail"]["error"] == "NotFound"


def test_goal_edit_before_first_turn_rejected(client):
    session_id = create_session(client)
    response = client.post(f"/sessions/{session_id}/goal", json={"topic": "anything"})
    assert response.status_code == 422


# -- pages, diff, rollback ---------------------------------------------------------------


def test_pages_links_diff_endpoints(client):
    session_id = create_session(client)
    run_walkthrough(client, session_id)

    pages = client.get(f"/sessions/{session_id}/pages").json()["pages"]
    assert [page["page_number"] for page in pages] == [1, 2, 3, 4]

    links = client.get(f"/sessions/{session_id}/pages/1/links").json()["links"]
    assert any(link["source"]["kind"] == "intent" for link in links)
    assert any(link["source"]["kind"] == "dimension_value" for link in links)

    diff = client.get(f"/sessions/{session_id}/pages/3/diff").json()
    assert diff["against"] == 2
    kinds = {segment["kind"] for segment in diff["segments"]}
    assert "inserted" in kinds  # targeted turn expanded the introduction

    page_one_text = client.get(f"/sessions/{session_id}/pages/1").json()["document"]["canonical_text"]
    rebuilt_old = "".join(s["text"] for s in diff["segments"] if s["kind"] in ("equal", "deleted"))
    page_two_text = client.get(f"/sessions/{session_id}/pages/2").json()["document"]["canonical_text"]
    assert rebuilt_old == page_two_text
    assert page_one_text  # sanity

    assert client.get(f"/sessions/{session_id}/pages/99").status_code == 404


def test_rollback_endpoint_appends_and_restores(client):
    session_id = create_session(client)
    run_walkthrough(client, session_id)
    response = client.post(f"/sessions/{session_id}/rollback", json={"page": 2})
    assert response.json()["new_page"] == 5

    page_two = client.get(f"/sessions/{session_id}/pages/2").json()
    page_five = client.get(f"/sessions/{session_id}/pages/5").json()
    assert page_five["document"] == page_two["document"]
    assert page_five["snapshot"] == page_two["snapshot"]
    assert page_five["provenance"] == {"kind": "rollback", "rollback_of": 2}

    # live panel restored to page 2's snapshot (slider back at 4)
    session = client.get(f"/sessions/{session_id}").json()["session"]
    assert session["dimensions"][0]["current"] == ["4"]

    assert client.post(f"/sessions/{session_id}/rollback", json={"page": 99}).status_code == 404


# -- actions, annotation ----------------------------------------------------------------------


def test_actions_listing_and_annotation(client):
    session_id = create_session(client)
    client.post(f"/sessions/{session_id}/chat", json={"prompt": PROMPT_1})
    actions = client.get(f"/sessions/{session_id}/actions").json()["actions"]
    chat_action = next(a for a in actions if a["source"] == "chat_prompt")
    assert chat_action["annotation_pending"] is True

    annotate = client.post(
        f"/sessions/{session_id}/actions/{chat_action['action_id']}/annotate", json={"kind": "Correct"}
    )
    assert annotate.status_code == 200
    updated = client.get(f"/sessions/{session_id}/actions").json()["actions"]
    record = next(a for a in updated if a["action_id"] == chat_action["action_id"])
    assert record["kind"] == "Correct" and record["annotation_pending"] is False

    again = client.post(
        f"/sessions/{session_id}/actions/{chat_action['action_id']}/annotate", json={"kind": "Adjust"}
    )
    assert again.status_code == 409
    missing = client.post(f"/sessions/{session_id}/actions/a999/annotate", json={"kind": "Adjust"})
    assert missing.status_code == 404


# -- persistence ---------------------------------------------------------------------------------


def test_export_import_round_trip(client, service):
    session_id = create_session(client)
    run_walkthrough(client, session_id)
    document = client.get(f"/sessions/{session_id}").json()

    fresh = SessionService(replay_gateway(), store=None)
    imported = fresh.import_session(document)
    assert session_hash(imported) == session_hash(service.session(session_id))


def test_event_log_replay_matches_live_state(client, service):
    session_id = create_session(client)
    run_walkthrough(client, session_id)
    client.post(f"/sessions/{session_id}/rollback", json={"page": 1})
    actions = client.get(f"/sessions/{session_id}/actions").json()["actions"]
    pending = next(a for a in actions if a["annotation_pending"])
    client.post(f"/sessions/{session_id}/actions/{pending['action_id']}/annotate", json={"kind": "Add"})

    events = service.store.read_log(session_id)
    rebuilt = replay_log(session_id, events)
    assert session_hash(rebuilt) == session_hash(service.session(session_id))


def test_recovery_after_restart(tmp_path):
    store = EventLogStore(tmp_path / "data")
    service = SessionService(replay_gateway(), store)
    client = TestClient(create_app(service))
    session_id = create_session(client)
    run_walkthrough(client, session_id)
    live_hash = session_hash(service.session(session_id))
    store.close()

    second_store = EventLogStore(tmp_path / "data")
    recovered = SessionService(replay_gateway(), second_store)
    assert session_hash(recovered.session(session_id)) == live_hash
    second_store.close()


def test_corrupted_tail_truncated_on_recovery(tmp_path):
    # Truncate-and-recover oracle: the last complete event wins.
    store = EventLogStore(tmp_path / "data")
    service = SessionService(replay_gateway(), store)
    client = TestClient(create_app(service))
    session_id = create_session(client)
    client.post(f"/sessions/{session_id}/chat", json={"prompt": PROMPT_1})
    expected_hash = session_hash(service.session(session_id))
    store.close()

    log_path = tmp_path / "data" / "sessions" / f"{session_id}.events.jsonl"
    with open(log_path, "a", encoding="utf-8") as handle:
        handle.write('{"seq": 2, "type": "rollback", "payl')  # torn write, no newline

    second_store = EventLogStore(tmp_path / "data")
    recovered = SessionService(replay_gateway(), second_store)
    assert session_hash(recovered.session(session_id)) == expected_hash
    assert not log_path.read_bytes().endswith(b"payl")  # file healed
    second_store.close()


def test_second_store_on_same_dir_refused(tmp_path):
    store = EventLogStore(tmp_path / "data")
    with pytest.raises(StoreLocked):
        EventLogStore(tmp_path / "data")
    store.close()


# -- baseline configuration -----------------------------------------------------------------------


def test_baseline_mode_skips_panel_and_linking(tmp_path):
    class BaselineScript:
        def complete(self, request):
            if request.kind is ModuleKind.ENTRYPOINT:
                return json.dumps({"reply": "Drafting.", "invoke": ["output"], "provisional_kind": "Add"})
            assert request.kind is ModuleKind.OUTPUT
            return json.dumps({"sections": [{"header": None, "body": "A plain draft."}]})

    service = SessionService(Gateway(BaselineScript(), ProviderConfig()), store=None, baseline=True)
    client = TestClient(create_app(service))
    session_id = create_session(client)
    body = client.post(f"/sessions/{session_id}/chat", json={"prompt": "Write a draft about anything."}).json()
    assert body["new_page"] == 1
    assert body["invoked"] == ["output"]
    session = client.get(f"/sessions/{session_id}").json()["session"]
    assert session["intents"] == [] and session["dimensions"] == []
    assert session["pages"][0]["links"] == []
