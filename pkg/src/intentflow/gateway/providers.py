"""Completion providers: remote OpenAI-compatible HTTP, and record/replay fixtures.

The fixture store keeps one JSON file per request key plus a manifest; the key
is a stable hash of (module kind, rendered conversation, model name), so a
replayed run resolves exactly the requests a recorded run made.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

import httpx

from intentflow.core.serialize import canonical_json
from intentflow.errors import ProviderTimeout, ProviderUnreachable, ReplayMiss, ValidationError
from intentflow.gateway.config import ModuleKind, ProviderConfig

STORE_FORMAT = "intentflow/fixtures/v1"


@dataclass(frozen=True)
class CompletionRequest:
    kind: ModuleKind
    messages: tuple[tuple[str, str], ...]  # (role, content) pairs
    model: str
    temperature: float = 0.0


def request_key(request: CompletionRequest) -> str:
    """Stable across processes: hash of kind, conversation, and model name."""
    payload = canonical_json(
        {
            "kind": request.kind.value,
            "model": request.model,
            "messages": [[role, content] for role, content in request.messages],
        }
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


class Provider(Protocol):
    def complete(self, request: CompletionRequest) -> str:
        """Return the raw assistant text for a chat completion."""
        ...


class RemoteProvider:
    """OpenAI-compatible chat-completions client (JSON response mode)."""

    def __init__(self, config: ProviderConfig, transport: httpx.BaseTransport | None = None):
        self.config = config
        self._client = httpx.Client(
            base_url=config.endpoint.rstrip("/"),
            timeout=config.timeout,
            transport=transport,
        )

    def _credential(self) -> str:
        key = os.environ.get(self.config.credential_env, "")
        if not key:
            raise ProviderUnreachable(
                f"credential environment variable {self.config.credential_env} is not set"
            )
        return key

    def complete(self, request: CompletionRequest) -> str:
        body = {
            "model": request.model,
            "messages": [{"role": role, "content": content} for role, content in request.messages],
            "temperature": request.temperature,
            "response_format": {"type": "json_object"},
        }
        try:
            response = self._client.post(
                "/chat/completions",
                json=body,
                headers={"Authorization": f"Bearer {self._credential()}"},
            )
        except httpx.TimeoutException as exc:
            raise ProviderTimeout(f"completion timed out after {self.config.timeout}s") from exc
        except httpx.HTTPError as exc:
            raise ProviderUnreachable(f"provider request failed: {exc}") from exc
        if response.status_code != 200:
            raise ProviderUnreachable(
                f"provider returned HTTP {response.status_code}: {response.text[:200]}"
            )
        try:
            return response.json()["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError, ValueError) as exc:
            raise ProviderUnreachable(f"malformed provider response: {exc}") from exc

    def close(self) -> None:
        self._client.close()


class FixtureStore:
    """One response file per request key plus an index manifest."""

    def __init__(self, path: str | Path, create: bool = False):
        self.path = Path(path)
        self._lock = threading.Lock()
        manifest_path = self.path / "manifest.json"
        if create:
            self.path.mkdir(parents=True, exist_ok=True)
            if not manifest_path.exists():
                self._write_manifest({})
        if not manifest_path.exists():
            raise ValidationError(f"fixture store {self.path} has no manifest.json")
        self._manifest: dict = json.loads(manifest_path.read_text(encoding="utf-8"))
        if self._manifest.get("format") != STORE_FORMAT:
            raise ValidationError(f"fixture store {self.path} is not a {STORE_FORMAT} store")

    def _write_manifest(self, entries: dict) -> None:
        payload = {"format": STORE_FORMAT, "entries": entries}
        text = json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=2) + "\n"
        (self.path / "manifest.json").write_text(text, encoding="utf-8")

    def entries(self) -> dict:
        return dict(self._manifest.get("entries", {}))

    def has(self, key: str) -> bool:
        return (self.path / f"{key}.json").exists()

    def load(self, key: str) -> str | None:
        entry_path = self.path / f"{key}.json"
        if not entry_path.exists():
            return None
        return json.loads(entry_path.read_text(encoding="utf-8"))["response"]

    def load_entry(self, key: str) -> dict | None:
        entry_path = self.path / f"{key}.json"
        if not entry_path.exists():
            return None
        return json.loads(entry_path.read_text(encoding="utf-8"))

    def save(self, request: CompletionRequest, response: str) -> str:
        key = request_key(request)
        entry = {
            "key": key,
            "kind": request.kind.value,
            "model": request.model,
            "messages": [[role, content] for role, content in request.messages],
            "response": response,
        }
        text = json.dumps(entry, sort_keys=True, ensure_ascii=False, indent=2) + "\n"
        with self._lock:
            (self.path / f"{key}.json").write_text(text, encoding="utf-8")
            manifest_entries = self._manifest.setdefault("entries", {})
            manifest_entries[key] = {"kind": request.kind.value, "model": request.model}
            self._write_manifest(manifest_entries)
        return key

    def save_raw(self, entry: dict) -> None:
        """Rewrite a loaded entry file verbatim (used by harness corruption tests)."""
        text = json.dumps(entry, sort_keys=True, ensure_ascii=False, indent=2) + "\n"
        with self._lock:
            (self.path / f"{entry['key']}.json").write_text(text, encoding="utf-8")


class ReplayProvider:
    """Answers solely from a fixture store; unseen requests are a hard miss."""

    def __init__(self, store: FixtureStore):
        self.store = store

    def complete(self, request: CompletionRequest) -> str:
        key = request_key(request)
        response = self.store.load(key)
        if response is None:
            raise ReplayMiss(key)
        return response


class RecordingProvider:
    """Proxies an inner provider and persists every response; replays known keys."""

    def __init__(self, inner: Provider, store: FixtureStore):
        self.inner = inner
        self.store = store

    def complete(self, request: CompletionRequest) -> str:
        key = request_key(request)
        existing = self.store.load(key)
        if existing is not None:
            return existing
        response = self.inner.complete(request)
        self.store.save(request, response)
        return response


def fixture_provider(mode: str, store_path: str | Path, config: ProviderConfig | None = None) -> Provider:
    """Build a record or replay provider over a store directory."""
    if mode == "replay":
        return ReplayProvider(FixtureStore(store_path))
    if mode == "record":
        remote = RemoteProvider(config or ProviderConfig())
        return RecordingProvider(remote, FixtureStore(store_path, create=True))
    raise ValidationError(f"fixture provider mode must be record or replay, not {mode!r}")
