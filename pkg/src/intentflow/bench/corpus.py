"""Evaluation corpus: the shipped 12-prompt set and user-supplied corpora."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any

from intentflow.errors import ParseError

WRITING_CONTEXTS = ("academic", "creative", "journalistic", "personal", "professional", "technical")

FIELDS = ("writing_context", "task", "topic", "prompt")


@dataclass
class CorpusEntry:
    writing_context: str
    task: str
    topic: str
    prompt: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "writing_context": self.writing_context,
            "task": self.task,
            "topic": self.topic,
            "prompt": self.prompt,
        }


def _entry_from(data: dict[str, Any], where: str) -> CorpusEntry:
    for name in FIELDS:
        if name not in data or not isinstance(data[name], str):
            raise ParseError(f"{where}: missing or non-string field {name!r}")
    if data["writing_context"] not in WRITING_CONTEXTS:
        raise ParseError(
            f"{where}: writing_context {data['writing_context']!r} not one of {WRITING_CONTEXTS}"
        )
    if not data["prompt"].strip():
        raise ParseError(f"{where}: prompt must be non-empty")
    return CorpusEntry(
        writing_context=data["writing_context"],
        task=data["task"],
        topic=data["topic"],
        prompt=data["prompt"],
    )


def load_corpus(path: str | Path) -> list[CorpusEntry]:
    """Load a JSON list or CSV (header row) of corpus entries."""
    path = Path(path)
    if not path.exists():
        raise ParseError(f"corpus file {path} does not exist")
    if path.suffix.lower() == ".csv":
        return _load_csv(path)
    return _load_json(path)


def _load_json(path: Path) -> list[CorpusEntry]:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(data, list):
        raise ParseError(f"{path}: expected a JSON list of entries")
    return [_entry_from(item, f"{path}[{index}]") for index, item in enumerate(data)]


def _load_csv(path: Path) -> list[CorpusEntry]:
    entries: list[CorpusEntry] = []
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None or set(FIELDS) - set(reader.fieldnames):
            raise ParseError(f"{path}: header must contain {FIELDS}")
        for line_number, row in enumerate(reader, start=2):
            entries.append(_entry_from({k: row.get(k) for k in FIELDS}, f"{path}:{line_number}"))
    return entries


def shipped_corpus_path() -> Path:
    return Path(str(resources.files("intentflow.data").joinpath("corpus.json")))


def load_shipped_corpus() -> list[CorpusEntry]:
    return load_corpus(shipped_corpus_path())
