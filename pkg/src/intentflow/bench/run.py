"""Batch harness: one full first-turn pipeline run per corpus entry, checked.

A stage failure carries a machine code that maps to the check owning the
violated property; that check fails and the rest of the entry's checks are
reported as skipped, so a single corrupted response flips a single check.
Report artifacts contain no timing and no randomness: replay runs are
byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from intentflow.bench.checks import (
    CHECK_NAMES,
    CHECK_TITLES,
    CODE_TO_CHECK,
    FAIL,
    PASS,
    CheckConfig,
    CheckResult,
    EntryChecks,
    check_q1_goal,
    check_q2_intent_count,
    check_q3_distinctiveness,
    check_q4_intent_relevance,
    check_q5_dimension_relevance,
    check_q6_ui_wellformed,
    check_q7_values,
    check_q8_links,
)
from intentflow.bench.corpus import CorpusEntry
from intentflow.core.serialize import session_to_document
from intentflow.core.session import new_session
from intentflow.errors import TurnFailed
from intentflow.gateway.client import Gateway
from intentflow.pipeline.turn import run_turn

REPORT_FORMAT = "intentflow/bench-report/v1"


@dataclass
class EntryReport:
    index: int
    entry: CorpusEntry
    checks: dict[str, CheckResult] = field(default_factory=dict)
    link_repairs: int = 0
    error: str | None = None
    session_document: dict[str, Any] | None = None

    def passed(self) -> bool:
        return self.error is None and all(r.status == PASS for r in self.checks.values())

    def to_dict(self) -> dict[str, Any]:
        return {
            "index": self.index,
            "entry": self.entry.to_dict(),
            "checks": {name: self.checks[name].to_dict() for name in CHECK_NAMES},
            "link_repairs": self.link_repairs,
            "error": self.error,
        }


@dataclass
class StructuralReport:
    config: CheckConfig
    entries: list[EntryReport]

    @property
    def all_passed(self) -> bool:
        return all(entry.passed() for entry in self.entries)

    def aggregates(self) -> dict[str, dict[str, int]]:
        totals = {name: {"pass": 0, "fail": 0, "skip": 0} for name in CHECK_NAMES}
        for entry in self.entries:
            for name in CHECK_NAMES:
                totals[name][entry.checks[name].status] += 1
        return totals

    def to_dict(self) -> dict[str, Any]:
        return {
            "format": REPORT_FORMAT,
            "config": self.config.to_dict(),
            "entries": [entry.to_dict() for entry in self.entries],
            "aggregates": self.aggregates(),
            "all_passed": self.all_passed,
        }

    def to_text(self) -> str:
        lines = ["intentflow-bench structural report", ""]
        lines.append("thresholds:")
        for key, value in self.config.to_dict().items():
            lines.append(f"  {key} = {value}")
        lines.append("")
        for entry in self.entries:
            marker = "ok " if entry.passed() else "FAIL"
            lines.append(f"[{marker}] entry {entry.index:02d} ({entry.entry.writing_context}) {entry.entry.task}")
            if entry.error:
                lines.append(f"      error: {entry.error}")
            for name in CHECK_NAMES:
                result = entry.checks[name]
                lines.append(f"      {name} {result.status:<4} {result.evidence}")
        lines.append("")
        lines.append("aggregates:")
        for name, counts in self.aggregates().items():
            lines.append(
                f"  {name} pass={counts['pass']} fail={counts['fail']} skip={counts['skip']}  {CHECK_TITLES[name]}"
            )
        lines.append("")
        lines.append("ALL CHECKS PASSED" if self.all_passed else "CHECK FAILURES PRESENT")
        return "\n".join(lines) + "\n"


def _json_text(data: Any) -> str:
    return json.dumps(data, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def run_entry(index: int, entry: CorpusEntry, gateway: Gateway, config: CheckConfig) -> EntryReport:
    report = EntryReport(index=index, entry=entry)
    checks = EntryChecks()
    session = new_session(f"bench-{index:02d}")
    try:
        result = run_turn(session, entry.prompt, gateway=gateway)
    except TurnFailed as err:
        code = getattr(err.cause, "code", None)
        owner = CODE_TO_CHECK.get(code or "")
        if owner:
            checks.put(CheckResult(owner, FAIL, f"{err.stage} stage rejected the response: {err.cause}"))
        report.error = str(err)
        checks.skip_missing(f"not evaluated: {err.stage} stage failed")
        report.checks = checks.results
        return report

    page = session.page_at(result.new_page)
    report.link_repairs = result.link_repairs
    checks.put(check_q1_goal(session.goal, entry.prompt))
    checks.put(check_q2_intent_count(session.intents, config))
    checks.put(check_q3_distinctiveness(session.intents, config))
    checks.put(check_q4_intent_relevance(session.intents, entry.prompt, session.goal))
    checks.put(check_q5_dimension_relevance(session.dimensions, entry.prompt, session.intents))
    checks.put(check_q6_ui_wellformed(session.dimensions))
    checks.put(check_q7_values(session.dimensions))
    checks.put(check_q8_links(page.document, session.intents, page.links, result.link_repairs, config))
    report.checks = checks.results
    report.session_document = session_to_document(session)
    return report


def run_corpus(
    corpus: list[CorpusEntry],
    gateway: Gateway,
    out_dir: str | Path,
    config: CheckConfig | None = None,
) -> StructuralReport:
    config = config or CheckConfig()
    out_dir = Path(out_dir)
    (out_dir / "sessions").mkdir(parents=True, exist_ok=True)
    (out_dir / "requests").mkdir(parents=True, exist_ok=True)

    entries: list[EntryReport] = []
    for index, entry in enumerate(corpus):
        log_start = len(gateway.request_log)
        entry_report = run_entry(index, entry, gateway, config)
        entries.append(entry_report)

        rendered = list(gateway.request_log)[log_start:]
        request_text = "\n".join(
            f"=== {kind.value} request ===\n{prompt}\n" for kind, prompt in rendered
        )
        (out_dir / "requests" / f"entry-{index:02d}.txt").write_text(request_text, encoding="utf-8")
        if entry_report.session_document is not None:
            (out_dir / "sessions" / f"entry-{index:02d}.session.json").write_text(
                _json_text(entry_report.session_document), encoding="utf-8"
            )

    report = StructuralReport(config=config, entries=entries)
    (out_dir / "report.json").write_text(_json_text(report.to_dict()), encoding="utf-8")
    (out_dir / "report.txt").write_text(report.to_text(), encoding="utf-8")
    return report
