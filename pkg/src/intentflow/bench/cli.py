"""intentflow-bench: run the structural harness over a corpus."""

from __future__ import annotations

import sys
from pathlib import Path

import click

from intentflow.bench.checks import CheckConfig
from intentflow.bench.corpus import load_corpus, shipped_corpus_path
from intentflow.bench.forms import export_rating_forms
from intentflow.bench.run import run_corpus
from intentflow.data import corpus_fixtures_path
from intentflow.gateway import (
    FixtureStore,
    Gateway,
    ProviderConfig,
    RecordingProvider,
    RemoteProvider,
    ReplayProvider,
)


def _build_gateway(provider: str, fixtures: str | None, config: ProviderConfig) -> Gateway:
    if provider == "replay":
        store = FixtureStore(fixtures or corpus_fixtures_path())
        return Gateway(ReplayProvider(store), config)
    if provider == "record":
        if not fixtures:
            raise click.UsageError("--fixtures is required with --provider=record")
        store = FixtureStore(fixtures, create=True)
        return Gateway(RecordingProvider(RemoteProvider(config), store), config)
    return Gateway(RemoteProvider(config), config)


@click.group()
def main():
    """Structural evaluation harness for the writing pipeline."""


@main.command(context_settings={"ignore_unknown_options": True})
@click.option("--corpus", "corpus_path", default=None, help="Corpus JSON/CSV (default: shipped 12 prompts).")
@click.option(
    "--provider",
    type=click.Choice(["replay", "record", "remote"]),
    default="replay",
    show_default=True,
)
@click.option("--fixtures", default=None, help="Fixture store directory (default: shipped store).")
@click.option("--out", "out_dir", required=True, help="Output directory for report, artifacts, forms.")
@click.option("--config", "config_path", default=None, help="Provider config file.")
@click.argument("overrides", nargs=-1, type=click.UNPROCESSED)
def run(corpus_path, provider, fixtures, out_dir, config_path, overrides):
    """Run every corpus entry through the pipeline and apply the checks.

    Check thresholds accept overrides of the form --check.<name>.<param>=<value>,
    e.g. --check.q3.max_jaccard=0.5
    """
    check_config = CheckConfig()
    for override in overrides:
        if not override.startswith("--check."):
            raise click.UsageError(f"unrecognized argument {override!r}")
        try:
            name, value = override[len("--check.") :].split("=", 1)
            check_config.apply_override(name, value)
        except ValueError as exc:
            raise click.UsageError(str(exc)) from exc

    provider_config = ProviderConfig.from_file(config_path) if config_path else ProviderConfig()
    gateway = _build_gateway(provider, fixtures, provider_config)
    corpus = load_corpus(corpus_path or shipped_corpus_path())

    report = run_corpus(corpus, gateway, out_dir, check_config)
    forms = export_rating_forms(report, Path(out_dir) / "forms")
    click.echo(report.to_text())
    click.echo(f"rating forms: {len(forms)} written to {Path(out_dir) / 'forms'}")
    sys.exit(0 if report.all_passed else 1)


if __name__ == "__main__":
    main()
