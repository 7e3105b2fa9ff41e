"""Intent/dimension-to-span linking via quoted substrings, fanned out concurrently."""

from __future__ import annotations

import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from intentflow.core.links import validate_links
from intentflow.core.types import (
    Dimension,
    DimensionValueRef,
    Goal,
    Intent,
    IntentRef,
    Link,
    LinkSource,
    OutputDocument,
    PanelSnapshot,
)
from intentflow.gateway.client import Gateway
from intentflow.gateway.config import ModuleKind

_NUM_RE = re.compile(r"(\d+)")


@dataclass
class LinkingOutcome:
    links: list[Link]
    repairs: int
    failed_sources: int


def _source_order(link: Link) -> tuple:
    source = link.source
    if isinstance(source, IntentRef):
        match = _NUM_RE.search(source.intent_id)
        return (0, int(match.group(1)) if match else 0, source.intent_id, "")
    assert isinstance(source, DimensionValueRef)
    match = _NUM_RE.search(source.dimension_id)
    return (1, int(match.group(1)) if match else 0, source.dimension_id, source.value)


def locate_quotes(document: OutputDocument, quotes: list[str]) -> tuple[list[tuple[int, int]], int]:
    """First occurrence of each verbatim quote; unlocatable quotes are dropped."""
    spans: list[tuple[int, int]] = []
    dropped = 0
    for quote in quotes:
        start = document.canonical_text.find(quote)
        if start < 0:
            dropped += 1
            continue
        spans.append((start, start + len(quote)))
    return spans, dropped


def link_all(
    document: OutputDocument,
    intents: list[Intent],
    dimensions: list[Dimension],
    gateway: Gateway,
) -> LinkingOutcome:
    """One linking request per intent and per active dimension value.

    Requests run concurrently up to the gateway's in-flight cap. A failed
    request contributes an empty link for its source; unlocatable quotes and
    span repairs are counted, never fatal.
    """
    sources: list[tuple[LinkSource, str, str]] = []
    for intent in intents:
        sources.append((IntentRef(intent.id), f"user intent {intent.id}", intent.text))
    for dimension in dimensions:
        for value in dimension.current:
            description = dimension.value_descriptions.get(value, "")
            text = f"{dimension.title} = {value}"
            if description:
                text += f" — {description}"
            sources.append((DimensionValueRef(dimension.id, value), f"dimension value of {dimension.title}", text))

    if not sources:
        return LinkingOutcome(links=[], repairs=0, failed_sources=0)

    def fetch(entry: tuple[LinkSource, str, str]) -> tuple[LinkSource, list[str], bool]:
        source, label, text = entry
        try:
            response = gateway.complete_structured(
                ModuleKind.LINKING,
                {"document": document.canonical_text, "source_label": label, "source_text": text},
            )
            return source, response.payload.quotes, False
        except Exception:  # per-source failures degrade to an empty link
            return source, [], True

    workers = max(1, min(gateway.config.concurrency, len(sources)))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(fetch, sources))

    unlocatable = 0
    failed = 0
    links: list[Link] = []
    for source, quotes, failure in results:
        spans, dropped = locate_quotes(document, quotes)
        unlocatable += dropped
        failed += 1 if failure else 0
        links.append(Link(source=source, spans=spans))

    snapshot = PanelSnapshot.capture(goal=Goal(), intents=intents, dimensions=dimensions)
    validated, report = validate_links(document, snapshot, links)
    validated.sort(key=_source_order)
    return LinkingOutcome(links=validated, repairs=report.total + unlocatable, failed_sources=failed)
