"""Lossless action-log export/import: delimited rows and a structured document.

CSV columns: session_id, action_id, kind, source, auto_classified,
annotation_pending, timestamp (ISO-8601), payload (JSON). The JSON form mirrors
ActionRecord.to_dict grouped by session.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

from intentflow.core.types import ActionRecord
from intentflow.errors import ParseError

CSV_COLUMNS = (
    "session_id",
    "action_id",
    "kind",
    "source",
    "auto_classified",
    "annotation_pending",
    "timestamp",
    "payload",
)


def export_actions_csv(sessions: dict[str, list[ActionRecord]], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_COLUMNS)
        for session_id in sessions:
            for record in sessions[session_id]:
                writer.writerow(
                    [
                        session_id,
                        record.action_id,
                        record.kind.value,
                        record.source.value,
                        "true" if record.auto_classified else "false",
                        "true" if record.annotation_pending else "false",
                        record.timestamp,
                        json.dumps(record.payload, sort_keys=True, ensure_ascii=False),
                    ]
                )


def import_actions_csv(path: str | Path) -> dict[str, list[ActionRecord]]:
    sessions: dict[str, list[ActionRecord]] = {}
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(f"{path}: empty file, expected a header row") from None
        if tuple(header) != CSV_COLUMNS:
            raise ParseError(f"{path}: unexpected header {header!r}")
        for line_number, row in enumerate(reader, start=2):
            if len(row) != len(CSV_COLUMNS):
                raise ParseError(f"{path}:{line_number}: expected {len(CSV_COLUMNS)} fields, got {len(row)}")
            data = dict(zip(CSV_COLUMNS, row))
            try:
                record = ActionRecord.from_dict(
                    {
                        "action_id": data["action_id"],
                        "kind": data["kind"],
                        "source": data["source"],
                        "auto_classified": data["auto_classified"] == "true",
                        "annotation_pending": data["annotation_pending"] == "true",
                        "timestamp": data["timestamp"],
                        "payload": json.loads(data["payload"]),
                    }
                )
            except (ValueError, KeyError, json.JSONDecodeError) as exc:
                raise ParseError(f"{path}:{line_number}: {exc}") from exc
            sessions.setdefault(data["session_id"], []).append(record)
    return sessions


def export_actions_json(sessions: dict[str, list[ActionRecord]], path: str | Path) -> None:
    document = {
        "format": "intentflow/actions/v1",
        "sessions": {
            session_id: [record.to_dict() for record in records] for session_id, records in sessions.items()
        },
    }
    Path(path).write_text(
        json.dumps(document, sort_keys=True, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )


def import_actions_json(path: str | Path) -> dict[str, list[ActionRecord]]:
    try:
        document = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not valid JSON: {exc}") from exc
    if document.get("format") != "intentflow/actions/v1":
        raise ParseError(f"{path}: not an intentflow/actions/v1 document")
    try:
        return {
            session_id: [ActionRecord.from_dict(item) for item in records]
            for session_id, records in document["sessions"].items()
        }
    except (KeyError, ValueError, TypeError) as exc:
        raise ParseError(f"{path}: malformed action record: {exc}") from exc
