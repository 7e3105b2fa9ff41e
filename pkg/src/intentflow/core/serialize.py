"""Session serialization: the "intentflow/session/v1" document and state hashing."""

from __future__ import annotations

import hashlib
import json
from typing import Any

from intentflow.core.session import SessionState
from intentflow.core.types import (
    ActionRecord,
    ChatEntry,
    Dimension,
    Goal,
    Intent,
    OutputPage,
    TelemetryEvent,
)
from intentflow.errors import ParseError

SCHEMA_ID = "intentflow/session/v1"


def session_to_document(session: SessionState) -> dict[str, Any]:
    """Self-contained portable document; canonical_text offsets are explicit."""
    return {
        "schema": SCHEMA_ID,
        "session": {
            "session_id": session.session_id,
            "goal": session.goal.to_dict(),
            "intents": [i.to_dict() for i in session.intents],
            "dimensions": [d.to_dict() for d in session.dimensions],
            "pages": [p.to_dict() for p in session.pages],
            "chat_history": [c.to_dict() for c in session.chat_history],
            "action_log": [a.to_dict() for a in session.action_log],
            "telemetry": [t.to_dict() for t in session.telemetry],
            "turn_counter": session.turn_counter,
            "counters": {
                "intent_seq": session.intent_seq,
                "dimension_seq": session.dimension_seq,
                "action_seq": session.action_seq,
                "clock_tick": session.clock_tick,
            },
        },
    }


def session_from_document(document: dict[str, Any]) -> SessionState:
    if not isinstance(document, dict) or document.get("schema") != SCHEMA_ID:
        raise ParseError(f"expected a {SCHEMA_ID} document")
    try:
        data = document["session"]
        counters = data.get("counters", {})
        return SessionState(
            session_id=data["session_id"],
            goal=Goal.from_dict(data["goal"]),
            intents=[Intent.from_dict(i) for i in data["intents"]],
            dimensions=[Dimension.from_dict(d) for d in data["dimensions"]],
            pages=[OutputPage.from_dict(p) for p in data["pages"]],
            chat_history=[ChatEntry.from_dict(c) for c in data["chat_history"]],
            action_log=[ActionRecord.from_dict(a) for a in data["action_log"]],
            telemetry=[TelemetryEvent.from_dict(t) for t in data.get("telemetry", [])],
            turn_counter=int(data["turn_counter"]),
            intent_seq=int(counters.get("intent_seq", 0)),
            dimension_seq=int(counters.get("dimension_seq", 0)),
            action_seq=int(counters.get("action_seq", 0)),
            clock_tick=int(counters.get("clock_tick", 0)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed session document: {exc}") from exc


def canonical_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def dumps_session(session: SessionState) -> str:
    """Human-readable export; byte-stable for identical states."""
    return json.dumps(session_to_document(session), sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def loads_session(text: str) -> SessionState:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"session document is not valid JSON: {exc}") from exc
    return session_from_document(document)


def session_hash(session: SessionState) -> str:
    return hashlib.sha256(canonical_json(session_to_document(session)).encode("utf-8")).hexdigest()


def pages_hash(session: SessionState) -> str:
    """Hash of the page list alone, for append-only/bit-stability checks."""
    payload = canonical_json([p.to_dict() for p in session.pages])
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()
