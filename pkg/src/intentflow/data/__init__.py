"""Shipped data: the 12-prompt corpus and pinned replay fixture stores."""

from importlib import resources
from pathlib import Path


def data_path(*parts: str) -> Path:
    return Path(str(resources.files("intentflow.data").joinpath("/".join(parts))))


def corpus_path() -> Path:
    return data_path("corpus.json")


def corpus_fixtures_path() -> Path:
    return data_path("fixtures", "corpus")


def walkthrough_fixtures_path() -> Path:
    return data_path("fixtures", "walkthrough")
