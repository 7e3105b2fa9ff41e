"""Link validation: lenient repair for model-produced spans, strict checks for pages."""

from __future__ import annotations

from dataclasses import dataclass

from intentflow.core.types import (
    DimensionValueRef,
    IntentRef,
    Link,
    OutputDocument,
    PanelSnapshot,
)
from intentflow.errors import LinkValidationError


@dataclass
class LinkRepairReport:
    """Counts of repairs applied while validating a link set."""

    dropped_links: int = 0
    dropped_spans: int = 0
    clamped_spans: int = 0
    merged_spans: int = 0

    @property
    def total(self) -> int:
        return self.dropped_links + self.dropped_spans + self.clamped_spans + self.merged_spans


def _source_resolves(source, snapshot: PanelSnapshot) -> bool:
    if isinstance(source, IntentRef):
        return snapshot.intent_by_id(source.intent_id) is not None
    if isinstance(source, DimensionValueRef):
        dimension = snapshot.dimension_by_id(source.dimension_id)
        return dimension is not None and dimension.has_value(source.value)
    return False


def validate_links(
    document: OutputDocument,
    snapshot: PanelSnapshot,
    links: list[Link],
) -> tuple[list[Link], LinkRepairReport]:
    """Repair a link set so every Link invariant holds; never raises.

    Unresolvable sources drop the whole link; spans are clamped to the text,
    empty/inverted spans are dropped, and overlapping spans within a link are
    merged. Every repair is counted.
    """
    report = LinkRepairReport()
    length = len(document.canonical_text)
    repaired: list[Link] = []
    for link in links:
        if not _source_resolves(link.source, snapshot):
            report.dropped_links += 1
            continue
        spans: list[tuple[int, int]] = []
        for start, end in link.spans:
            clamped = (max(0, min(start, length)), max(0, min(end, length)))
            if clamped != (start, end):
                report.clamped_spans += 1
            if clamped[0] >= clamped[1]:
                report.dropped_spans += 1
                continue
            spans.append(clamped)
        spans.sort()
        merged: list[tuple[int, int]] = []
        for span in spans:
            if merged and span[0] < merged[-1][1]:
                merged[-1] = (merged[-1][0], max(merged[-1][1], span[1]))
                report.merged_spans += 1
            else:
                merged.append(span)
        repaired.append(Link(source=link.source, spans=merged))
    return repaired, report


def check_links(document: OutputDocument, snapshot: PanelSnapshot, links: list[Link]) -> None:
    """Strict Link-invariant check used before a page is appended."""
    length = len(document.canonical_text)
    for link in links:
        if not _source_resolves(link.source, snapshot):
            raise LinkValidationError(f"link source {link.source} does not resolve in the panel")
        previous_end = -1
        for start, end in link.spans:
            if not (0 <= start < end <= length):
                raise LinkValidationError(f"span [{start},{end}) out of bounds for text of length {length}")
            if start < previous_end:
                raise LinkValidationError(f"spans of {link.source} are unsorted or overlapping")
            previous_end = end
