// Hover-linked highlighting: map a hover target to exact character ranges.

import type { HoverTarget } from "./state.js";
import type { DiffSegment, Link, OutputDocument } from "./types.js";

export type HighlightClass = "hl-intent" | "hl-dimension";

export interface HighlightSpan {
  start: number;
  end: number;
  cls: HighlightClass;
}

// Spans of every link whose source matches the hover target; green class for
// intents, blue class for dimension values. No target or no match: empty.
export function highlightSpans(links: Link[], hover: HoverTarget | null): HighlightSpan[] {
  if (!hover) return [];
  const spans: HighlightSpan[] = [];
  for (const link of links) {
    const source = link.source;
    if (hover.kind === "intent" && source.kind === "intent" && source.intent_id === hover.intentId) {
      for (const [start, end] of link.spans) spans.push({ start, end, cls: "hl-intent" });
    }
    if (
      hover.kind === "dimension_value" &&
      source.kind === "dimension_value" &&
      source.dimension_id === hover.dimensionId &&
      source.value === hover.value
    ) {
      for (const [start, end] of link.spans) spans.push({ start, end, cls: "hl-dimension" });
    }
  }
  spans.sort((a, b) => a.start - b.start);
  return spans;
}

export interface TextRun {
  text: string;
  cls: HighlightClass | null;
}

// Partition [from, to) of the canonical text into plain and highlighted runs.
export function sliceRuns(text: string, from: number, to: number, spans: HighlightSpan[]): TextRun[] {
  const runs: TextRun[] = [];
  let cursor = from;
  for (const span of spans) {
    const start = Math.max(span.start, from);
    const end = Math.min(span.end, to);
    if (end <= cursor || start >= to) continue;
    if (start > cursor) runs.push({ text: text.slice(cursor, start), cls: null });
    runs.push({ text: text.slice(Math.max(start, cursor), end), cls: span.cls });
    cursor = Math.max(cursor, end);
  }
  if (cursor < to) runs.push({ text: text.slice(cursor, to), cls: null });
  return runs.filter((run) => run.text.length > 0);
}

// Render one document section's body as highlight runs, using the document's
// explicit section offsets so ranges line up with the links endpoint exactly.
export function sectionRuns(document: OutputDocument, index: number, spans: HighlightSpan[]): TextRun[] {
  const [from, to] = document.offsets[index];
  return sliceRuns(document.canonical_text, from, to, spans);
}

export type DiffRun = { text: string; cls: "diff-inserted" | "diff-deleted" | null };

export function diffRuns(segments: DiffSegment[]): DiffRun[] {
  return segments.map((segment) => ({
    text: segment.text,
    cls:
      segment.kind === "inserted"
        ? "diff-inserted"
        : segment.kind === "deleted"
          ? "diff-deleted"
          : null,
  }));
}
