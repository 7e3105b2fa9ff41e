"""intentflow: serve the session service, analyze interaction logs."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from intentflow.analytics import export_actions_csv, summarize
from intentflow.core.serialize import session_from_document
from intentflow.errors import IntentFlowError
from intentflow.gateway import (
    FixtureStore,
    Gateway,
    ProviderConfig,
    RecordingProvider,
    RemoteProvider,
    ReplayProvider,
)


@click.group()
def main():
    """Intent-communication writing service and tooling."""


@main.command()
@click.option("--port", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--data-dir", default="./intentflow-data", show_default=True)
@click.option("--config", "config_path", default=None, help="Provider config file (INI).")
@click.option(
    "--provider",
    "provider_kind",
    type=click.Choice(["remote", "replay", "record"]),
    default="remote",
    show_default=True,
)
@click.option("--fixtures", default=None, help="Fixture store for replay/record providers.")
@click.option("--baseline", is_flag=True, help="Disable intent panel stages and linking.")
@click.option("--ui-dir", default=None, help="Serve a built web client from this directory at /ui.")
def serve(port, host, data_dir, config_path, provider_kind, fixtures, baseline, ui_dir):
    """Start the HTTP service; sessions are recovered from the data directory."""
    import uvicorn

    from intentflow.service.app import create_app
    from intentflow.service.service import SessionService
    from intentflow.service.store import EventLogStore

    try:
        provider_config = ProviderConfig.from_file(config_path) if config_path else ProviderConfig()
        if provider_kind == "replay":
            if not fixtures:
                raise click.UsageError("--fixtures is required with --provider=replay")
            provider = ReplayProvider(FixtureStore(fixtures))
        elif provider_kind == "record":
            if not fixtures:
                raise click.UsageError("--fixtures is required with --provider=record")
            provider = RecordingProvider(RemoteProvider(provider_config), FixtureStore(fixtures, create=True))
        else:
            provider = RemoteProvider(provider_config)
        store = EventLogStore(data_dir)
    except IntentFlowError as exc:
        click.echo(f"startup failed: {exc}", err=True)
        sys.exit(1)

    service = SessionService(Gateway(provider, provider_config), store, baseline=baseline)
    app = create_app(service, ui_dir=ui_dir)
    click.echo(f"serving on {host}:{port} (sessions recovered: {len(service.runtimes)})")
    try:
        uvicorn.run(app, host=host, port=port, log_level="info")
    finally:
        store.close()


@main.command()
@click.option("--sessions", "sessions_dir", required=True, help="Directory of session export JSON files.")
@click.option("--out", "out_prefix", required=True, help="Report path prefix (writes .txt/.json/.actions.csv).")
def analyze(sessions_dir, out_prefix):
    """Summarize action logs across exported sessions."""
    sessions_dir = Path(sessions_dir)
    logs = {}
    for path in sorted(sessions_dir.glob("*.json")):
        try:
            session = session_from_document(json.loads(path.read_text(encoding="utf-8")))
        except IntentFlowError:
            continue  # not a session export; skip quietly
        logs[session.session_id] = session.action_log

    summary = summarize(list(logs.values()))
    out_prefix = Path(out_prefix)
    out_prefix.parent.mkdir(parents=True, exist_ok=True)

    out_prefix.with_suffix(".json").write_text(
        json.dumps(summary.to_dict(), sort_keys=True, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )
    lines = [f"sessions: {summary.session_count}", f"actions: {summary.total_actions}", ""]
    for kind, count in summary.counts.items():
        share = f"{summary.percentages[kind]:.1f}%" if summary.percentages else "n/a"
        stats = summary.per_session.get(kind)
        mean = f"{stats.mean:.2f}" if stats else "n/a"
        sd = f"{stats.sd:.2f}" if stats and stats.sd is not None else "n/a"
        lines.append(f"{kind:<8} count={count:<4} share={share:<7} per-session mean={mean} sd={sd}")
    out_prefix.with_suffix(".txt").write_text("\n".join(lines) + "\n", encoding="utf-8")
    export_actions_csv(logs, out_prefix.with_suffix(".actions.csv"))
    click.echo("\n".join(lines))


if __name__ == "__main__":
    main()
