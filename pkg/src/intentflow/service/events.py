"""Per-session live event stream with strictly increasing sequence numbers."""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from typing import Any


@dataclass
class EventEnvelope:
    session_id: str
    seq: int
    kind: str  # status | reply | page_ready | panel_updated | error
    payload: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {"session_id": self.session_id, "seq": self.seq, "kind": self.kind, "payload": self.payload}

    def sse(self) -> str:
        data = json.dumps(self.to_dict(), ensure_ascii=False, sort_keys=True)
        return f"id: {self.seq}\nevent: {self.kind}\ndata: {data}\n\n"


class SessionBus:
    """Buffered multi-reader event feed for one session."""

    def __init__(self, session_id: str):
        self.session_id = session_id
        self._events: list[EventEnvelope] = []
        self._cond = threading.Condition()

    def publish(self, kind: str, payload: dict[str, Any] | None = None) -> EventEnvelope:
        with self._cond:
            envelope = EventEnvelope(
                session_id=self.session_id,
                seq=len(self._events) + 1,
                kind=kind,
                payload=payload or {},
            )
            self._events.append(envelope)
            self._cond.notify_all()
            return envelope

    def since(self, after: int) -> list[EventEnvelope]:
        with self._cond:
            return [e for e in self._events if e.seq > after]

    def wait_since(self, after: int, timeout: float = 10.0) -> list[EventEnvelope]:
        """Block until events past ``after`` exist (or timeout); may return []."""
        with self._cond:
            if not any(e.seq > after for e in self._events):
                self._cond.wait(timeout)
            return [e for e in self._events if e.seq > after]

    @property
    def last_seq(self) -> int:
        with self._cond:
            return len(self._events)
