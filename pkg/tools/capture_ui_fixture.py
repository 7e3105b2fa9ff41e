#!/usr/bin/env python3
"""Capture real service responses for the web client's jsdom test fixture.

Runs the photosynthesis walkthrough against the in-process FastAPI app with the
replay provider, then snapshots the session export plus per-page links and diff
payloads into frontend/tests/fixtures/service-fixture.json.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from fastapi.testclient import TestClient  # noqa: E402

from intentflow.data import walkthrough_fixtures_path  # noqa: E402
from intentflow.gateway import FixtureStore, Gateway, ProviderConfig, ReplayProvider  # noqa: E402
from intentflow.service.app import create_app  # noqa: E402
from intentflow.service.service import SessionService  # noqa: E402

PROMPT_1 = "Write a scientific and concise article on photosynthesis."
PROMPT_2 = (
    "I want to make the article easier for readers without a science background to understand, "
    "while keeping the academic tone"
)
PROMPT_3 = "Add a bit more background about why photosynthesis is important for the environment."


def main() -> None:
    gateway = Gateway(ReplayProvider(FixtureStore(walkthrough_fixtures_path())), ProviderConfig())
    client = TestClient(create_app(SessionService(gateway, store=None)))

    sid = client.post("/sessions").json()["session_id"]
    responses = [
        client.post(f"/sessions/{sid}/chat", json={"prompt": PROMPT_1}).json(),
        client.post(f"/sessions/{sid}/chat", json={"prompt": PROMPT_2}).json(),
    ]
    client.patch(f"/sessions/{sid}/intents/i1", json={"kept": True})
    responses.append(
        client.post(f"/sessions/{sid}/chat", json={"prompt": PROMPT_3, "targeted_intent": "i3"}).json()
    )

    snapshot = {
        "session": client.get(f"/sessions/{sid}").json(),
        "links": {str(n): client.get(f"/sessions/{sid}/pages/{n}/links").json() for n in (1, 2, 3)},
        "diffs": {str(n): client.get(f"/sessions/{sid}/pages/{n}/diff").json() for n in (2, 3)},
        "chat_responses": responses,
    }
    out = REPO / "frontend" / "tests" / "fixtures" / "service-fixture.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(snapshot, indent=2, ensure_ascii=False, sort_keys=True), encoding="utf-8")
    print(f"wrote {out} (pages: {len(snapshot['session']['session']['pages'])})")


if __name__ == "__main__":
    main()
