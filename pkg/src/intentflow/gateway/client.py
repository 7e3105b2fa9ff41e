"""Structured completion client: render, call, validate, repair-retry."""

from __future__ import annotations

import threading
import time
from collections import deque
from dataclasses import dataclass
from typing import Any

from intentflow.errors import ReplayMiss, SchemaError, SchemaViolation
from intentflow.gateway.config import ModuleKind, ProviderConfig
from intentflow.gateway.providers import CompletionRequest, Provider
from intentflow.gateway.schemas import parse_payload
from intentflow.gateway.templates import render_template

REQUEST_LOG_LIMIT = 512


@dataclass
class StructuredResponse:
    kind: ModuleKind
    payload: Any
    raw: str
    attempts: int
    latency: float


def _repair_instruction(error: SchemaError) -> str:
    return (
        f"Your previous reply was rejected: {error}. "
        "Reply again with only a single JSON object that satisfies the requested schema, "
        "with no prose before or after it."
    )


class Gateway:
    """Uniform, schema-validated access to one completion provider.

    Safe for concurrent use; in-flight requests are capped by the configured
    concurrency limit. Rendered prompts are kept in ``request_log`` so callers
    can audit exactly what each module was asked.
    """

    def __init__(self, provider: Provider, config: ProviderConfig | None = None):
        self.provider = provider
        self.config = config or ProviderConfig()
        self._gate = threading.BoundedSemaphore(self.config.concurrency)
        self.request_log: deque[tuple[ModuleKind, str]] = deque(maxlen=REQUEST_LOG_LIMIT)

    def render(self, kind: ModuleKind, variables: dict[str, str]) -> str:
        return render_template(kind, variables)

    def complete_structured(self, kind: ModuleKind, variables: dict[str, str]) -> StructuredResponse:
        """Render the module prompt, call the provider, and validate the payload.

        On parse/validation failure the validator's error summary is appended to
        the conversation and the call retried, up to ``max_retries`` extra
        attempts; exhaustion raises ``SchemaViolation``. Provider errors are not
        retried here — they propagate to the caller's stage handling.
        """
        prompt = render_template(kind, variables)
        self.request_log.append((kind, prompt))
        messages: list[tuple[str, str]] = [("user", prompt)]
        model = self.config.model_for(kind)
        temperature = self.config.temperature_for(kind)
        max_attempts = 1 + self.config.max_retries
        started = time.perf_counter()
        last_error: SchemaError | None = None
        for attempt in range(1, max_attempts + 1):
            request = CompletionRequest(kind=kind, messages=tuple(messages), model=model, temperature=temperature)
            try:
                with self._gate:
                    raw = self.provider.complete(request)
            except ReplayMiss:
                if last_error is not None:
                    # Repair turns are never recorded; a replay miss on a retry
                    # means the recorded response is invalid beyond repair.
                    raise SchemaViolation(kind.value, attempt, last_error) from None
                raise
            try:
                payload = parse_payload(kind, raw)
            except SchemaError as error:
                last_error = error
                messages.append(("assistant", raw))
                messages.append(("user", _repair_instruction(error)))
                continue
            return StructuredResponse(
                kind=kind,
                payload=payload,
                raw=raw,
                attempts=attempt,
                latency=time.perf_counter() - started,
            )
        raise SchemaViolation(kind.value, max_attempts, last_error or SchemaError("unknown", "no attempts made"))

    def output_requests(self) -> list[str]:
        """Rendered prompts sent to the output module, oldest first."""
        return [prompt for kind, prompt in self.request_log if kind is ModuleKind.OUTPUT]
