"""Event-sourced persistence: one append-only JSONL log per session.

Every state mutation is stored as a self-describing event whose replay through
the core ops reproduces the exact session state. Recovery tolerates a torn
trailing record (the file is truncated back to the last complete line), and a
lock file keeps a data directory single-writer across processes.
"""

from __future__ import annotations

import json
import os
import threading
from pathlib import Path
from typing import Any

from intentflow.core.serialize import canonical_json
from intentflow.core.session import RegenEffect, SessionState, TurnEffect, edit_from_dict, new_session
from intentflow.core.types import ActionKind
from intentflow.errors import ParseError, StoreLocked

LOCK_NAME = "LOCK"


def apply_event(session: SessionState, etype: str, payload: dict[str, Any]) -> None:
    """Replay one persisted mutation through the deterministic core ops."""
    if etype == "turn":
        session.apply_turn(TurnEffect.from_dict(payload["effect"]))
    elif etype == "goal_edit":
        session.apply_goal_edit(dict(payload["fields"]))
        _apply_regen(session, payload)
    elif etype == "intent_edit":
        session.apply_intent_edit(edit_from_dict(payload["cmd"]))
        _apply_regen(session, payload)
    elif etype == "dimension_edit":
        session.apply_dimension_edit(edit_from_dict(payload["cmd"]))
        _apply_regen(session, payload)
    elif etype == "rollback":
        session.rollback(int(payload["page"]))
    elif etype == "annotate":
        session.annotate_action(payload["action_id"], ActionKind(payload["kind"]))
    else:
        raise ParseError(f"unknown event type {etype!r}")


def _apply_regen(session: SessionState, payload: dict[str, Any]) -> None:
    regen = payload.get("regen")
    if regen is not None:
        session.apply_regeneration(RegenEffect.from_dict(regen))


def replay_log(session_id: str, events: list[dict[str, Any]]) -> SessionState:
    session = new_session(session_id)
    for event in events:
        apply_event(session, event["type"], event["payload"])
    return session


class EventLogStore:
    """Append-only per-session logs under ``data_dir/sessions``."""

    _held_locks: set[str] = set()  # lock paths owned by this process

    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        self.sessions_dir = self.data_dir / "sessions"
        self.sessions_dir.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._seqs: dict[str, int] = {}
        self._acquire_lock()

    # -- exclusivity -------------------------------------------------------

    def _lock_path(self) -> Path:
        return self.data_dir / LOCK_NAME

    def _acquire_lock(self) -> None:
        path = self._lock_path()
        key = str(path.resolve())
        if key in EventLogStore._held_locks:
            raise StoreLocked(f"data dir {self.data_dir} is already open in this process")
        if path.exists():
            try:
                other = int(path.read_text().strip() or "0")
            except ValueError:
                other = 0
            if other and other != os.getpid() and _pid_alive(other):
                raise StoreLocked(f"data dir {self.data_dir} is owned by live pid {other}")
            path.unlink()  # stale lock from a crashed process
        fd = os.open(path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
        with os.fdopen(fd, "w") as handle:
            handle.write(str(os.getpid()))
        EventLogStore._held_locks.add(key)

    def close(self) -> None:
        EventLogStore._held_locks.discard(str(self._lock_path().resolve()))
        try:
            self._lock_path().unlink()
        except FileNotFoundError:
            pass

    # -- log IO --------------------------------------------------------------

    def _log_path(self, session_id: str) -> Path:
        return self.sessions_dir / f"{session_id}.events.jsonl"

    def append(self, session_id: str, etype: str, payload: dict[str, Any]) -> int:
        with self._lock:
            seq = self._seqs.get(session_id, 0) + 1
            self._seqs[session_id] = seq
            record = {"seq": seq, "type": etype, "payload": payload}
            with open(self._log_path(session_id), "a", encoding="utf-8") as handle:
                handle.write(canonical_json(record) + "\n")
                handle.flush()
            return seq

    def read_log(self, session_id: str) -> list[dict[str, Any]]:
        return self._read_and_heal(self._log_path(session_id))

    def _read_and_heal(self, path: Path) -> list[dict[str, Any]]:
        """Parse complete records; truncate the file at the first torn line."""
        if not path.exists():
            return []
        raw = path.read_bytes()
        events: list[dict[str, Any]] = []
        offset = 0
        for line in raw.splitlines(keepends=True):
            complete = line.endswith(b"\n")
            try:
                record = json.loads(line.decode("utf-8"))
                if not complete:
                    raise ValueError("no trailing newline")
                events.append(record)
                offset += len(line)
            except (ValueError, UnicodeDecodeError):
                with open(path, "r+b") as handle:
                    handle.truncate(offset)
                break
        return events

    def session_ids(self) -> list[str]:
        return sorted(p.name[: -len(".events.jsonl")] for p in self.sessions_dir.glob("*.events.jsonl"))

    def recover_all(self) -> dict[str, SessionState]:
        """Rebuild every session from its log; seq counters resume from disk."""
        sessions: dict[str, SessionState] = {}
        for session_id in self.session_ids():
            events = self.read_log(session_id)
            self._seqs[session_id] = events[-1]["seq"] if events else 0
            sessions[session_id] = replay_log(session_id, events)
        return sessions


def _pid_alive(pid: int) -> bool:
    try:
        os.kill(pid, 0)
    except ProcessLookupError:
        return False
    except PermissionError:
        return True
    return True
