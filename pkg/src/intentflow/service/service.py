"""Session service core: lifecycle, serialized mutations, events, persistence.

HTTP-agnostic so tests and the property fuzzer can drive it directly. All
mutations for one session run under its writer lock and persist exactly one
event; a concurrent chat/edit is rejected, not queued.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Any

from intentflow.core.serialize import session_from_document, session_to_document
from intentflow.core.session import (
    DimensionEdit,
    PanelEdit,
    PanelRevision,
    SessionState,
    edit_to_dict,
    new_session,
)
from intentflow.core.types import ActionKind
from intentflow.errors import NotFound, TurnInFlight, ValidationError
from intentflow.gateway.client import Gateway
from intentflow.pipeline.turn import TurnResult, plan_regeneration, run_turn
from intentflow.service.events import SessionBus
from intentflow.service.store import EventLogStore


@dataclass
class SessionRuntime:
    session: SessionState
    bus: SessionBus
    writer: threading.Lock = field(default_factory=threading.Lock)


class SessionService:
    def __init__(self, gateway: Gateway, store: EventLogStore | None = None, baseline: bool = False):
        self.gateway = gateway
        self.store = store
        self.baseline = baseline
        self.runtimes: dict[str, SessionRuntime] = {}
        if store is not None:
            for session_id, session in store.recover_all().items():
                self.runtimes[session_id] = SessionRuntime(session=session, bus=SessionBus(session_id))

    # -- lifecycle ---------------------------------------------------------

    def create_session(self, session_id: str | None = None) -> SessionState:
        session = new_session(session_id)
        self.runtimes[session.session_id] = SessionRuntime(session=session, bus=SessionBus(session.session_id))
        return session

    def runtime(self, session_id: str) -> SessionRuntime:
        try:
            return self.runtimes[session_id]
        except KeyError:
            raise NotFound(f"session {session_id} not found") from None

    def session(self, session_id: str) -> SessionState:
        return self.runtime(session_id).session

    def export_session(self, session_id: str) -> dict[str, Any]:
        return session_to_document(self.session(session_id))

    def import_session(self, document: dict[str, Any]) -> SessionState:
        session = session_from_document(document)
        if session.session_id in self.runtimes:
            raise ValidationError(f"session {session.session_id} already exists")
        self.runtimes[session.session_id] = SessionRuntime(session=session, bus=SessionBus(session.session_id))
        return session

    # -- mutation plumbing -----------------------------------------------------

    def _persist(self, session_id: str, etype: str, payload: dict[str, Any]) -> None:
        if self.store is not None:
            self.store.append(session_id, etype, payload)

    def _locked(self, runtime: SessionRuntime):
        if not runtime.writer.acquire(blocking=False):
            raise TurnInFlight(f"session {runtime.session.session_id} has a mutation in flight")
        return runtime.writer

    # -- chat turns ---------------------------------------------------------------

    def chat(self, session_id: str, prompt: str, targeted_intent: str | None = None) -> TurnResult:
        runtime = self.runtime(session_id)
        lock = self._locked(runtime)
        try:
            result = run_turn(
                runtime.session,
                prompt,
                targeted_intent,
                gateway=self.gateway,
                on_status=lambda message: runtime.bus.publish("status", {"message": message}),
                baseline=self.baseline,
            )
            self._persist(session_id, "turn", {"effect": result.effect.to_dict()})
            runtime.bus.publish("reply", {"text": result.decision.direct_reply, "turn_id": result.action_id})
            if result.new_page is not None:
                runtime.bus.publish("page_ready", {"page_number": result.new_page})
            return result
        except Exception as exc:
            runtime.bus.publish("error", {"message": str(exc)})
            raise
        finally:
            lock.release()

    # -- panel edits -----------------------------------------------------------------

    def goal_edit(self, session_id: str, fields: dict[str, str]) -> tuple[PanelRevision, int | None]:
        return self._panel_mutation(
            session_id, "goal_edit", {"fields": dict(fields)}, lambda s: s.apply_goal_edit(fields)
        )

    def panel_edit(self, session_id: str, cmd: PanelEdit) -> tuple[PanelRevision, int | None]:
        if isinstance(cmd, DimensionEdit):
            return self._panel_mutation(
                session_id, "dimension_edit", {"cmd": edit_to_dict(cmd)}, lambda s: s.apply_dimension_edit(cmd)
            )
        return self._panel_mutation(
            session_id, "intent_edit", {"cmd": edit_to_dict(cmd)}, lambda s: s.apply_intent_edit(cmd)
        )

    def _panel_mutation(self, session_id, etype, payload, apply_fn) -> tuple[PanelRevision, int | None]:
        runtime = self.runtime(session_id)
        lock = self._locked(runtime)
        try:
            revision = apply_fn(runtime.session)
            new_page: int | None = None
            regen_payload = None
            if revision.regeneration_required:
                effect = plan_regeneration(
                    runtime.session,
                    self.gateway,
                    on_status=lambda message: runtime.bus.publish("status", {"message": message}),
                )
                new_page = runtime.session.apply_regeneration(effect)
                regen_payload = effect.to_dict()
            self._persist(session_id, etype, {**payload, "regen": regen_payload})
            runtime.bus.publish("panel_updated", {"change": revision.change, "detail": revision.detail})
            if new_page is not None:
                runtime.bus.publish("page_ready", {"page_number": new_page})
            return revision, new_page
        except Exception as exc:
            runtime.bus.publish("error", {"message": str(exc)})
            raise
        finally:
            lock.release()

    # -- rollback and annotation ---------------------------------------------------------

    def rollback(self, session_id: str, page_number: int) -> int:
        runtime = self.runtime(session_id)
        lock = self._locked(runtime)
        try:
            new_page = runtime.session.rollback(page_number)
            self._persist(session_id, "rollback", {"page": page_number})
            runtime.bus.publish("panel_updated", {"change": "rollback", "detail": {"restored_from": page_number}})
            runtime.bus.publish("page_ready", {"page_number": new_page})
            return new_page
        except Exception as exc:
            runtime.bus.publish("error", {"message": str(exc)})
            raise
        finally:
            lock.release()

    def annotate(self, session_id: str, action_id: str, kind: ActionKind) -> None:
        runtime = self.runtime(session_id)
        lock = self._locked(runtime)
        try:
            runtime.session.annotate_action(action_id, kind)
            self._persist(session_id, "annotate", {"action_id": action_id, "kind": kind.value})
        finally:
            lock.release()
