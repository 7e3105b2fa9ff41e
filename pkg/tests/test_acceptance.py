"""Acceptance suite: one test per release criterion, each printing a verdict line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the PASS lines.
"""

from __future__ import annotations

import json
import random
import shutil
import sys
import time
from pathlib import Path

import pytest

from intentflow.analytics import summarize
from intentflow.bench import load_shipped_corpus, run_corpus
from intentflow.core import (
    ActionKind,
    ActionRecord,
    ActionSource,
    AddIntent,
    AddTag,
    DeleteIntent,
    DimensionValueRef,
    IntentRef,
    Link,
    RemoveTag,
    ReviseIntent,
    SetRadio,
    SetSlider,
    ToggleKeep,
    UiKind,
    check_links,
    diff_texts,
    new_session,
    session_hash,
    validate_links,
)
from intentflow.core.diff import diff_tokens, edit_cost, tokenize
from intentflow.core.serialize import canonical_json
from intentflow.data import corpus_fixtures_path, walkthrough_fixtures_path
from intentflow.errors import StateError, TurnFailed, ValidationError, NotFound
from intentflow.gateway import FixtureStore, Gateway, ProviderConfig, ReplayProvider
from intentflow.pipeline import run_turn
from intentflow.pipeline import turn as turn_module
from intentflow.service.service import SessionService
from intentflow.service.store import EventLogStore, replay_log

from .conftest import make_document, make_snapshot
from .procedural import ProceduralProvider

TOOLS_DIR = Path(__file__).resolve().parent.parent / "tools"
sys.path.insert(0, str(TOOLS_DIR))
from author_fixtures import CORRUPTION_DUP_INTENT, ESSAY  # noqa: E402

PROMPT_1 = "Write a scientific and concise article on photosynthesis."
PROMPT_2 = (
    "I want to make the article easier for readers without a science background to understand, "
    "while keeping the academic tone"
)
PROMPT_3 = "Add a bit more background about why photosynthesis is important for the environment."
KEPT_TEXT = "Include key concepts and processes of photosynthesis"


def corpus_gateway(path: Path | None = None) -> Gateway:
    return Gateway(ReplayProvider(FixtureStore(path or corpus_fixtures_path())), ProviderConfig())


def walkthrough_gateway() -> Gateway:
    return Gateway(ReplayProvider(FixtureStore(walkthrough_fixtures_path())), ProviderConfig())


def verdict(name: str) -> None:
    print(f"[PASS] {name}")


# ---------------------------------------------------------------------------
# Criterion 1: replay determinism of the shipped corpus, under 2 minutes
# ---------------------------------------------------------------------------


def _tree_bytes(root: Path) -> dict[str, bytes]:
    return {str(p.relative_to(root)): p.read_bytes() for p in sorted(root.rglob("*")) if p.is_file()}


def test_determinism_two_replay_runs_byte_identical(tmp_path):
    corpus = load_shipped_corpus()
    started = time.monotonic()
    run_corpus(corpus, corpus_gateway(), tmp_path / "run-a")
    run_corpus(corpus, corpus_gateway(), tmp_path / "run-b")
    elapsed = time.monotonic() - started

    tree_a = _tree_bytes(tmp_path / "run-a")
    tree_b = _tree_bytes(tmp_path / "run-b")
    assert set(tree_a) == set(tree_b)
    assert any(name.startswith("sessions/") for name in tree_a)
    for name in tree_a:
        assert tree_a[name] == tree_b[name], f"artifact {name} differs between runs"
    assert elapsed < 120, f"two corpus runs took {elapsed:.1f}s (budget 120s)"
    verdict(f"determinism: byte-identical exports and reports across two replay runs ({elapsed:.1f}s)")


# ---------------------------------------------------------------------------
# Criterion 2: structural harness passes; single-field corruption flips one check
# ---------------------------------------------------------------------------


def _corrupted_store(tmp_path: Path, name: str) -> FixtureStore:
    target = tmp_path / name
    shutil.copytree(corpus_fixtures_path(), target)
    return FixtureStore(target)


def _find_entry(store: FixtureStore, kind: str, needle: str) -> dict:
    for key, meta in store.entries().items():
        if meta["kind"] != kind:
            continue
        entry = store.load_entry(key)
        if needle in entry["messages"][0][1]:
            return entry
    raise AssertionError(f"no {kind} fixture containing {needle!r}")


def _rewrite_response(store: FixtureStore, entry: dict, mutate) -> None:
    payload = json.loads(entry["response"])
    mutate(payload)
    entry["response"] = json.dumps(payload)
    store.save_raw(entry)


def _run_with_store(tmp_path: Path, store: FixtureStore, out_name: str):
    return run_corpus(load_shipped_corpus(), Gateway(ReplayProvider(store), ProviderConfig()), tmp_path / out_name)


def _statuses(report, index: int) -> dict[str, str]:
    return {name: result.status for name, result in report.entries[index].checks.items()}


def test_structural_harness_and_corruption_flips(tmp_path):
    prompt_0 = load_shipped_corpus()[0].prompt

    clean = _run_with_store(tmp_path, FixtureStore(corpus_fixtures_path()), "clean")
    assert clean.all_passed

    # empty topic -> exactly q1 fails (others skipped, none fail)
    store = _corrupted_store(tmp_path, "corrupt-topic")
    _rewrite_response(store, _find_entry(store, "goal", prompt_0), lambda p: p.update(topic=""))
    report = _run_with_store(tmp_path, store, "out-topic")
    statuses = _statuses(report, 0)
    assert statuses["q1"] == "fail"
    assert all(status != "fail" for name, status in statuses.items() if name != "q1")
    assert all(entry.passed() for entry in report.entries[1:])

    # duplicated intent -> exactly q3 fails (turn completes via pre-recorded branch)
    store = _corrupted_store(tmp_path, "corrupt-dup")
    _rewrite_response(
        store,
        _find_entry(store, "intent", prompt_0),
        lambda p: p["intents"].append(dict(CORRUPTION_DUP_INTENT)),
    )
    report = _run_with_store(tmp_path, store, "out-dup")
    statuses = _statuses(report, 0)
    assert statuses["q3"] == "fail"
    assert all(status == "pass" for name, status in statuses.items() if name != "q3")
    assert all(entry.passed() for entry in report.entries[1:])

    # out-of-domain slider value -> exactly q7 fails
    store = _corrupted_store(tmp_path, "corrupt-slider")
    def _break_slider(payload):
        slider = next(d for d in payload["dimensions"] if d["ui_kind"] == "slider")
        slider["initial"] = 9
    _rewrite_response(store, _find_entry(store, "dimension", prompt_0), _break_slider)
    report = _run_with_store(tmp_path, store, "out-slider")
    statuses = _statuses(report, 0)
    assert statuses["q7"] == "fail"
    assert all(status != "fail" for name, status in statuses.items() if name != "q7")
    assert all(entry.passed() for entry in report.entries[1:])

    # bogus link quotes -> exactly q8 fails (repairs counted, page still appended)
    store = _corrupted_store(tmp_path, "corrupt-links")
    marker = ESSAY.sentences[0]
    corrupted = 0
    for key, meta in store.entries().items():
        if meta["kind"] != "linking":
            continue
        entry = store.load_entry(key)
        if marker in entry["messages"][0][1]:
            _rewrite_response(store, entry, lambda p: p.update(quotes=["zz nowhere in any document zz"]))
            corrupted += 1
    assert corrupted >= 8
    report = _run_with_store(tmp_path, store, "out-links")
    statuses = _statuses(report, 0)
    assert statuses["q8"] == "fail"
    assert all(status == "pass" for name, status in statuses.items() if name != "q8")
    # 8 sources (4 intents, slider, radio, 2 tags), each with one unlocatable quote
    assert report.entries[0].link_repairs == 8
    assert all(entry.passed() for entry in report.entries[1:])

    verdict("structural harness: 12/12 entries pass; each corruption flips exactly its check")


# ---------------------------------------------------------------------------
# Criterion 3: 1,000 fuzzed action sequences uphold the history invariants
# ---------------------------------------------------------------------------


def _page_hashes(session) -> list[str]:
    return [canonical_json(page.to_dict()) for page in session.pages]


def test_rollback_property_suite_1000_sequences(tmp_path):
    rng = random.Random(20250809)
    store = EventLogStore(tmp_path / "fuzz-data")
    service = SessionService(Gateway(ProceduralProvider(), ProviderConfig()), store)
    prompts = [f"please revise item {n} of the draft" for n in range(6)]
    violations = 0
    sequences = 1000

    try:
        for index in range(sequences):
            session_id = f"fuzz-{index:04d}"
            service.create_session(session_id)
            session = service.session(session_id)
            previous_pages = _page_hashes(session)

            for _ in range(rng.randint(3, 8)):
                roll = rng.random()
                try:
                    if roll < 0.42:
                        targeted = None
                        if session.intents and rng.random() < 0.2:
                            targeted = rng.choice(session.intents).id
                        service.chat(session_id, rng.choice(prompts), targeted)
                    elif roll < 0.52 and session.intents:
                        service.panel_edit(session_id, ToggleKeep(rng.choice(session.intents).id))
                    elif roll < 0.62:
                        service.panel_edit(session_id, AddIntent(f"fuzz intent {rng.randint(0, 99)}"))
                    elif roll < 0.70 and session.intents:
                        intent = rng.choice(session.intents)
                        if rng.random() < 0.5:
                            service.panel_edit(session_id, DeleteIntent(intent.id))
                        else:
                            service.panel_edit(session_id, ReviseIntent(intent.id, f"revised {rng.randint(0, 99)}"))
                    elif roll < 0.80 and session.dimensions:
                        dimension = rng.choice(session.dimensions)
                        if dimension.ui_kind is UiKind.SLIDER:
                            service.panel_edit(session_id, SetSlider(dimension.id, rng.randint(0, 6)))
                        elif dimension.ui_kind is UiKind.RADIO:
                            service.panel_edit(session_id, SetRadio(dimension.id, rng.choice(["Option A", "Option B", "Bogus"])))
                        elif rng.random() < 0.5:
                            service.panel_edit(session_id, AddTag(dimension.id, f"#f{rng.randint(0, 9)}"))
                        else:
                            service.panel_edit(session_id, RemoveTag(dimension.id, f"#f{rng.randint(0, 9)}"))
                    elif roll < 0.88:
                        fields = {}
                        if rng.random() < 0.5:
                            fields["topic"] = f"topic {rng.randint(0, 99)}"
                        else:
                            fields["task_goal"] = f"goal {rng.randint(0, 99)}"
                        service.goal_edit(session_id, fields)
                    elif roll < 0.96:
                        target = rng.randint(0, len(session.pages) + 1)
                        rolled = service.rollback(session_id, target)
                        # rollback content equivalence
                        if session.page_at(rolled).document.to_dict() != session.page_at(target).document.to_dict():
                            violations += 1
                        if session.page_at(rolled).snapshot.to_dict() != session.page_at(target).snapshot.to_dict():
                            violations += 1
                    else:
                        pending = [a for a in session.action_log if a.annotation_pending]
                        if pending:
                            service.annotate(session_id, rng.choice(pending).action_id, ActionKind.CORRECT)
                except (ValidationError, NotFound, StateError):
                    pass  # rejected inputs are part of the fuzz surface

                current_pages = _page_hashes(session)
                if len(current_pages) < len(previous_pages):
                    violations += 1  # history truncated
                if current_pages[: len(previous_pages)] != previous_pages:
                    violations += 1  # existing page mutated
                previous_pages = current_pages

            replayed = replay_log(session_id, store.read_log(session_id))
            if session_hash(replayed) != session_hash(session):
                violations += 1
    finally:
        store.close()

    assert violations == 0, f"{violations} invariant violations across {sequences} sequences"
    verdict(f"rollback property suite: {sequences} fuzzed sequences, zero violations")


# ---------------------------------------------------------------------------
# Criterion 4: diff matches a brute-force LCS oracle on 500 random pairs
# ---------------------------------------------------------------------------


def _lcs_length_forward(a: list[str], b: list[str]) -> int:
    """Independent two-row forward DP (the diff uses a backward full table)."""
    if not a or not b:
        return 0
    previous = [0] * (len(b) + 1)
    for i in range(1, len(a) + 1):
        current = [0] * (len(b) + 1)
        ai = a[i - 1]
        for j in range(1, len(b) + 1):
            if ai == b[j - 1]:
                current[j] = previous[j - 1] + 1
            else:
                current[j] = current[j - 1] if current[j - 1] >= previous[j] else previous[j]
        previous = current
    return previous[len(b)]


def test_diff_matches_lcs_oracle_on_500_pairs():
    rng = random.Random(42)
    words = ["alpha", "beta", "gamma", "delta", "omega", "kappa."]
    pairs = 500
    for _ in range(pairs):
        a_words = [rng.choice(words) for _ in range(rng.randint(0, 100))]
        b_words = [rng.choice(words) for _ in range(rng.randint(0, 100))]
        old_text = " ".join(a_words)
        new_text = " ".join(b_words)
        a_tokens = tokenize(old_text)  # words plus whitespace runs, <= 199 tokens
        b_tokens = tokenize(new_text)

        ops = diff_tokens(a_tokens, b_tokens)
        oracle_cost = len(a_tokens) + len(b_tokens) - 2 * _lcs_length_forward(a_tokens, b_tokens)
        assert edit_cost(ops) == oracle_cost

        view = diff_texts(old_text, new_text)
        assert view.old_text() == old_text
        assert view.new_text() == new_text
    verdict(f"diff oracle: {pairs} random pairs match brute-force LCS cost with both reconstructions")


# ---------------------------------------------------------------------------
# Criterion 5: keep persistence through targeted turns and panel-edit pages
# ---------------------------------------------------------------------------


def test_keep_persistence_walkthrough():
    gateway = walkthrough_gateway()
    session = new_session("keep")
    run_turn(session, PROMPT_1, gateway=gateway)
    run_turn(session, PROMPT_2, gateway=gateway)
    session.apply_intent_edit(ToggleKeep("i1"))
    requests_before_keep = len(gateway.output_requests())

    run_turn(session, PROMPT_3, "i3", gateway=gateway)
    session.apply_dimension_edit(SetSlider("d1", 3))
    from intentflow.pipeline import plan_regeneration

    effect = plan_regeneration(session, gateway)
    session.apply_regeneration(effect)

    subsequent_requests = gateway.output_requests()[requests_before_keep:]
    assert len(subsequent_requests) == 2  # targeted turn + panel-edit regeneration
    for request in subsequent_requests:
        assert KEPT_TEXT in request, "kept intent text missing from a rendered output request"

    for page_number in (3, 4):
        snapshot = session.page_at(page_number).snapshot
        kept = snapshot.intent_by_id("i1")
        assert kept is not None and kept.kept and kept.text == KEPT_TEXT
    verdict("keep persistence: kept intent verbatim in every subsequent request and snapshot")


# ---------------------------------------------------------------------------
# Criterion 6: link validity across fixtures plus 200 malformed payload fuzz
# ---------------------------------------------------------------------------


def _assert_links_valid(document, snapshot, links) -> None:
    check_links(document, snapshot, links)  # raises on any invariant breach


def test_link_validity_fixtures_and_fuzz(tmp_path):
    # every link on every fixture-driven page satisfies the invariants
    report = run_corpus(load_shipped_corpus(), corpus_gateway(), tmp_path / "links-out")
    pages_checked = 0
    for entry in report.entries:
        session_doc = entry.session_document["session"]
        for page in session_doc["pages"]:
            length = len(page["document"]["canonical_text"])
            for link in page["links"]:
                previous_end = -1
                for start, end in link["spans"]:
                    assert 0 <= start < end <= length
                    assert start >= previous_end
                    previous_end = end
            pages_checked += 1
    assert pages_checked == 12

    # 200 malformed payloads: repair never raises, survivors always valid
    rng = random.Random(7)
    document = make_document("The quick brown fox jumps over the lazy dog near the riverbank at dawn.")
    snapshot = make_snapshot()
    length = len(document.canonical_text)
    total_repairs = 0
    for _ in range(200):
        links = []
        for _ in range(rng.randint(1, 6)):
            if rng.random() < 0.3:
                source = IntentRef(f"i{rng.randint(1, 9)}")  # i3+ do not resolve
            elif rng.random() < 0.5:
                source = DimensionValueRef(f"d{rng.randint(1, 5)}", rng.choice(["4", "2", "#concise", "zz"]))
            else:
                source = IntentRef(rng.choice(["i1", "i2"]))
            spans = []
            for _ in range(rng.randint(0, 4)):
                start = rng.randint(-10, length + 30)
                end = start + rng.randint(-5, 40)
                spans.append((start, end))
            links.append(Link(source=source, spans=spans))
        repaired, repair_report = validate_links(document, snapshot, links)
        total_repairs += repair_report.total
        _assert_links_valid(document, snapshot, repaired)
    assert total_repairs > 0
    verdict(f"link validity: 12 fixture pages + 200 fuzzed payloads, repairs counted ({total_repairs}), never fatal")


# ---------------------------------------------------------------------------
# Criterion 7: injected failures at all five stages leave the session unchanged
# ---------------------------------------------------------------------------


def test_turn_atomicity_under_stage_failures(monkeypatch):
    stage_targets = {
        "goal": "extract_goal",
        "intent": "extract_intents",
        "dimension": "derive_dimensions",
        "output": "generate_output",
        "linking": "link_all",
    }
    passed = []
    for stage, attribute in stage_targets.items():
        gateway = walkthrough_gateway()
        session = new_session("atomic")
        before = session_hash(session)

        def explode(*args, **kwargs):
            raise RuntimeError(f"injected failure in {stage}")

        with monkeypatch.context() as patch:
            patch.setattr(turn_module, attribute, explode)
            with pytest.raises(TurnFailed) as err:
                run_turn(session, PROMPT_1, gateway=gateway)
        assert err.value.stage == stage
        assert session_hash(session) == before, f"session mutated after {stage} failure"
        passed.append(stage)
    assert len(passed) == 5
    verdict(f"turn atomicity: injected failures at {passed} left session hash unchanged (5/5)")


# ---------------------------------------------------------------------------
# Criterion 8: analytics reproduces hand-computed statistics exactly
# ---------------------------------------------------------------------------


def _action(kind: ActionKind, n: int) -> ActionRecord:
    return ActionRecord(
        action_id=f"a{n}",
        kind=kind,
        source=ActionSource.CHAT_PROMPT,
        auto_classified=False,
        annotation_pending=False,
        timestamp="2025-01-01T00:00:01+00:00",
        payload={},
    )


def test_analytics_exact_statistics():
    # Twelve sessions with Correct counts 1,0,0,1,0,1,0,1,0,1,0,1 -> mean 0.50.
    correct_counts = [1, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1]
    logs = [
        [_action(ActionKind.CORRECT, n) for n in range(count)] + [_action(ActionKind.ADD, 90 + i)]
        for i, count in enumerate(correct_counts)
    ]
    summary = summarize(logs)
    assert summary.session_count == 12
    assert summary.per_session["Correct"].mean == 0.50
    assert summary.per_session["Add"].mean == 1.0
    assert summary.counts["Correct"] == 6 and summary.counts["Add"] == 12

    # hand-computed percentages: 6 Correct / 12 Add of 18 total
    assert summary.percentages["Correct"] == pytest.approx(100 * 6 / 18)
    assert summary.percentages["Add"] == pytest.approx(100 * 12 / 18)
    assert sum(summary.percentages.values()) == pytest.approx(100.0, abs=0.1)

    # 50/50 construction
    even = summarize([[_action(ActionKind.ADD, 1), _action(ActionKind.ADD, 2), _action(ActionKind.ADJUST, 3), _action(ActionKind.ADJUST, 4)]])
    assert even.percentages["Add"] == 50.0 and even.percentages["Adjust"] == 50.0
    verdict("analytics: hand-computed means and percentages reproduced exactly (Correct mean 0.50)")
