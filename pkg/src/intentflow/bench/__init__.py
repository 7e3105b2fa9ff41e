"""Structural evaluation harness over the prompt corpus."""

from intentflow.bench.checks import CheckConfig, CheckResult, content_tokens, token_jaccard
from intentflow.bench.corpus import CorpusEntry, load_corpus, load_shipped_corpus, shipped_corpus_path
from intentflow.bench.forms import export_rating_forms
from intentflow.bench.run import EntryReport, StructuralReport, run_corpus, run_entry

__all__ = [name for name in dir() if not name.startswith("_")]
