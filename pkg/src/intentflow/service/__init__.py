"""Network-facing session service: endpoints, event stream, persistence."""

from intentflow.service.events import EventEnvelope, SessionBus
from intentflow.service.service import SessionRuntime, SessionService
from intentflow.service.store import EventLogStore, apply_event, replay_log

__all__ = [name for name in dir() if not name.startswith("_")]
