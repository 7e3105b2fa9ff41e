// Output panel: paginated document with highlights, diff view, rollback.

import { diffRuns, highlightSpans, sectionRuns } from "../highlight.js";
import type { ViewState } from "../state.js";
import type { DiffView, Link, OutputPage, SessionState } from "../types.js";

export interface OutputActions {
  goToPage(pageNumber: number): void;
  toggleDiff(): void;
  toggleHeaders(): void;
  rollback(pageNumber: number): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function documentView(page: OutputPage, links: Link[], view: ViewState): HTMLElement {
  const container = el("div", "document");
  const spans = highlightSpans(links, view.hover);
  page.document.sections.forEach((section, index) => {
    const block = el("div", "doc-section");
    if (view.headersOn && section.header) {
      block.append(el("h3", "doc-header", section.header));
    }
    const body = el("p", "doc-body");
    for (const run of sectionRuns(page.document, index, spans)) {
      if (run.cls) {
        const mark = el("mark", run.cls, run.text);
        body.append(mark);
      } else {
        body.append(document.createTextNode(run.text));
      }
    }
    block.append(body);
    container.append(block);
  });
  return container;
}

function diffDocumentView(diff: DiffView): HTMLElement {
  const container = el("div", "document diff-view");
  const body = el("p", "doc-body");
  for (const run of diffRuns(diff.segments)) {
    if (run.cls) body.append(el("span", run.cls, run.text));
    else body.append(document.createTextNode(run.text));
  }
  container.append(body);
  return container;
}

export function OutputPanel(
  session: SessionState,
  view: ViewState,
  page: OutputPage | null,
  links: Link[],
  diff: DiffView | null,
  actions: OutputActions,
): HTMLElement {
  const panel = el("section", "panel output-panel");
  panel.append(el("h2", "panel-title", "Output"));

  const toolbar = el("div", "toolbar");
  const headerToggle = el("button", "toolbar-button header-toggle", view.headersOn ? "Header On" : "Header Off");
  headerToggle.addEventListener("click", () => actions.toggleHeaders());
  const diffToggle = el("button", "toolbar-button diff-toggle", view.diffOn ? "Diff On" : "Diff Off");
  diffToggle.addEventListener("click", () => actions.toggleDiff());
  const rollback = el("button", "toolbar-button rollback-button", "Make this latest page");
  rollback.disabled = page === null || view.busy;
  rollback.addEventListener("click", () => {
    if (page) actions.rollback(page.page_number);
  });
  toolbar.append(headerToggle, diffToggle, rollback);
  panel.append(toolbar);

  if (page === null) {
    panel.append(el("div", "document placeholder", "No output yet — describe your writing task in the chat."));
    return panel;
  }

  if (view.diffOn && diff) {
    panel.append(diffDocumentView(diff));
  } else {
    panel.append(documentView(page, links, view));
  }

  const total = session.pages.length;
  const pagination = el("div", "pagination");
  const previous = el("button", "page-button page-prev", "‹");
  previous.disabled = view.currentPage <= 1;
  previous.addEventListener("click", () => actions.goToPage(view.currentPage - 1));
  const label = el("span", "page-label", `${view.currentPage} / ${total}`);
  const next = el("button", "page-button page-next", "›");
  next.disabled = view.currentPage >= total;
  next.addEventListener("click", () => actions.goToPage(view.currentPage + 1));
  pagination.append(previous, label, next);
  panel.append(pagination);
  return panel;
}
