"""Lenient link repair and strict page-side link checks."""

from __future__ import annotations

import pytest

from intentflow.core import DimensionValueRef, IntentRef, Link, check_links, validate_links
from intentflow.errors import LinkValidationError

from .conftest import make_document, make_snapshot


def test_inverted_span_dropped():
    document = make_document("0123456789")
    links = [Link(source=IntentRef("i1"), spans=[(5, 3)])]
    repaired, report = validate_links(document, make_snapshot(), links)
    assert repaired[0].spans == []
    assert report.dropped_spans == 1


def test_overlong_span_clamped():
    document = make_document("x" * 200)
    links = [Link(source=IntentRef("i1"), spans=[(10, 10_000)])]
    repaired, report = validate_links(document, make_snapshot(), links)
    assert repaired[0].spans == [(10, 200)]
    assert report.clamped_spans == 1


def test_unresolvable_source_dropped_and_counted():
    document = make_document("some text")
    links = [Link(source=IntentRef("i-deleted"), spans=[(0, 4)])]
    repaired, report = validate_links(document, make_snapshot(), links)
    assert repaired == []
    assert report.dropped_links == 1
    assert report.total == 1


def test_dimension_value_resolution_requires_active_value():
    document = make_document("some text")
    active = Link(source=DimensionValueRef("d1", "4"), spans=[(0, 4)])
    inactive = Link(source=DimensionValueRef("d1", "2"), spans=[(0, 4)])
    repaired, report = validate_links(document, make_snapshot(), [active, inactive])
    assert [link.source for link in repaired] == [active.source]
    assert report.dropped_links == 1


def test_overlapping_spans_merged_and_sorted():
    document = make_document("abcdefghijklmnop")
    links = [Link(source=IntentRef("i1"), spans=[(8, 12), (0, 5), (3, 7)])]
    repaired, report = validate_links(document, make_snapshot(), links)
    assert repaired[0].spans == [(0, 7), (8, 12)]
    assert report.merged_spans == 1


def test_touching_spans_stay_separate():
    document = make_document("abcdefgh")
    links = [Link(source=IntentRef("i1"), spans=[(0, 3), (3, 6)])]
    repaired, report = validate_links(document, make_snapshot(), links)
    assert repaired[0].spans == [(0, 3), (3, 6)]
    assert report.total == 0


def test_check_links_raises_on_bad_span():
    document = make_document("short")
    with pytest.raises(LinkValidationError):
        check_links(document, make_snapshot(), [Link(source=IntentRef("i1"), spans=[(0, 99)])])


def test_check_links_raises_on_unknown_source():
    document = make_document("short")
    with pytest.raises(LinkValidationError):
        check_links(document, make_snapshot(), [Link(source=IntentRef("zzz"), spans=[(0, 2)])])


def test_check_links_accepts_validated_output():
    document = make_document("hello world, this is fine")
    raw = [
        Link(source=IntentRef("i1"), spans=[(30, 999), (2, 2), (4, 1)]),
        Link(source=IntentRef("i404"), spans=[(0, 3)]),
        Link(source=DimensionValueRef("d3", "#concise"), spans=[(6, 11), (9, 14)]),
    ]
    repaired, report = validate_links(document, make_snapshot(), raw)
    assert report.total > 0
    check_links(document, make_snapshot(), repaired)  # must not raise
