// Application shell: loads session truth, holds view state, re-renders panels.
// The screen is reproducible from GET /sessions/{id} plus the view state alone.

import { ApiClient, ApiError } from "./api.js";
import { ChatPanel } from "./panels/chat.js";
import { IntentPanel } from "./panels/intent.js";
import { OutputPanel } from "./panels/output.js";
import {
  afterPanelChange,
  diffBaseline,
  initialViewState,
  sameHover,
  toggleDiff,
  toggleHeaders,
  withPage,
  type HoverTarget,
  type ViewState,
} from "./state.js";
import type { ActionKind, DiffView, Link, SessionDocument } from "./types.js";

export class App {
  view: ViewState = initialViewState(0);
  session: SessionDocument | null = null;
  links: Link[] = [];
  diff: DiffView | null = null;
  private lastSeq = 0;
  private unsubscribe: () => void = () => {};

  constructor(
    private readonly root: HTMLElement,
    readonly api: ApiClient,
    readonly sessionId: string,
  ) {}

  async load(): Promise<void> {
    this.session = await this.api.getSession(this.sessionId);
    this.view = initialViewState(this.session.session.pages.length);
    await this.refreshPageData();
    this.unsubscribe();
    this.unsubscribe = this.api.subscribeEvents(this.sessionId, this.lastSeq, (event) => {
      this.lastSeq = Math.max(this.lastSeq, event.seq);
      if (event.kind === "status") {
        this.view = { ...this.view, statusLine: String(event.payload.message ?? "") };
        this.render();
      }
    });
    this.render();
  }

  private async refreshPageData(): Promise<void> {
    if (!this.session || this.view.currentPage < 1) {
      this.links = [];
      this.diff = null;
      return;
    }
    const pageNumber = this.view.currentPage;
    this.links = (await this.api.getLinks(this.sessionId, pageNumber)).links;
    this.diff = this.view.diffOn
      ? await this.api.getDiff(this.sessionId, pageNumber, diffBaseline(this.view))
      : null;
  }

  // Re-fetch truth after a mutation; jump to a fresh page when one was made.
  private async reload(newPage: number | null): Promise<void> {
    this.session = await this.api.getSession(this.sessionId);
    const total = this.session.session.pages.length;
    const target = newPage ?? (Math.min(this.view.currentPage, total) || total);
    this.view = afterPanelChange(withPage(this.view, target, total));
    await this.refreshPageData();
  }

  private async mutate(run: () => Promise<number | null>): Promise<void> {
    if (this.view.busy) return;
    this.view = { ...this.view, busy: true, notice: null };
    this.render();
    try {
      const newPage = await run();
      await this.reload(newPage);
    } catch (error) {
      // no local state changes on failure; surface a dismissible notice
      const message = error instanceof ApiError ? `${error.errorKind}: ${error.message}` : String(error);
      this.view = { ...this.view, notice: message };
    } finally {
      this.view = { ...this.view, busy: false, statusLine: null };
      this.render();
    }
  }

  // -- gesture handlers -----------------------------------------------------

  sendPrompt(prompt: string): void {
    const targeted = this.view.targetedIntent?.id ?? null;
    void this.mutate(async () => {
      const response = await this.api.chat(this.sessionId, prompt, targeted);
      this.view = { ...this.view, targetedIntent: null, pendingAnnotation: response.turn_id };
      return response.new_page;
    });
  }

  quoteIntent(intentId: string): void {
    const intent = this.session?.session.intents.find((candidate) => candidate.id === intentId);
    if (!intent) return;
    this.view = { ...this.view, targetedIntent: { id: intent.id, text: intent.text } };
    this.render();
  }

  clearTargeted(): void {
    this.view = { ...this.view, targetedIntent: null };
    this.render();
  }

  annotate(actionId: string, kind: ActionKind): void {
    void this.mutate(async () => {
      await this.api.annotate(this.sessionId, actionId, kind);
      this.view = { ...this.view, pendingAnnotation: null };
      return null;
    });
  }

  confirmGoal(fields: Record<string, string>): void {
    void this.mutate(async () => (await this.api.editGoal(this.sessionId, fields)).new_page);
  }

  addIntent(text: string): void {
    void this.mutate(async () => (await this.api.addIntent(this.sessionId, text)).new_page);
  }

  reviseIntent(intentId: string, text: string): void {
    void this.mutate(async () => (await this.api.reviseIntent(this.sessionId, intentId, text)).new_page);
  }

  deleteIntent(intentId: string): void {
    void this.mutate(async () => (await this.api.deleteIntent(this.sessionId, intentId)).new_page);
  }

  setKept(intentId: string, kept: boolean): void {
    void this.mutate(async () => (await this.api.setKept(this.sessionId, intentId, kept)).new_page);
  }

  setSlider(dimensionId: string, level: number): void {
    void this.mutate(async () => (await this.api.setSlider(this.sessionId, dimensionId, level)).new_page);
  }

  setRadio(dimensionId: string, option: string): void {
    void this.mutate(async () => (await this.api.setRadio(this.sessionId, dimensionId, option)).new_page);
  }

  addTag(dimensionId: string, tag: string): void {
    void this.mutate(async () => (await this.api.addTag(this.sessionId, dimensionId, tag)).new_page);
  }

  removeTag(dimensionId: string, tag: string): void {
    void this.mutate(async () => (await this.api.removeTag(this.sessionId, dimensionId, tag)).new_page);
  }

  rollback(pageNumber: number): void {
    void this.mutate(async () => (await this.api.rollback(this.sessionId, pageNumber)).new_page);
  }

  goToPage(pageNumber: number): void {
    if (!this.session) return;
    this.view = withPage(this.view, pageNumber, this.session.session.pages.length);
    void this.refreshPageData().then(() => this.render());
  }

  toggleDiff(): void {
    this.view = toggleDiff(this.view);
    void this.refreshPageData().then(() => this.render());
  }

  toggleHeaders(): void {
    this.view = toggleHeaders(this.view);
    this.render();
  }

  hover(target: HoverTarget | null): void {
    if (sameHover(this.view.hover, target)) return;
    this.view = { ...this.view, hover: target };
    this.render();
  }

  // -- rendering ---------------------------------------------------------------

  render(): void {
    if (!this.session) return;
    const session = this.session.session;
    const page = this.view.currentPage >= 1 ? session.pages[this.view.currentPage - 1] : null;

    const layout = document.createElement("div");
    layout.className = "layout";
    if (this.view.notice) {
      const notice = document.createElement("div");
      notice.className = "notice";
      notice.textContent = this.view.notice;
      const dismiss = document.createElement("button");
      dismiss.className = "chip-clear";
      dismiss.textContent = "×";
      dismiss.addEventListener("click", () => {
        this.view = { ...this.view, notice: null };
        this.render();
      });
      notice.append(dismiss);
      layout.append(notice);
    }

    const columns = document.createElement("div");
    columns.className = "columns";
    columns.append(
      ChatPanel(session, this.view, this),
      IntentPanel(session, this.view, this),
      OutputPanel(session, this.view, page, this.links, this.diff, this),
    );
    layout.append(columns);
    this.root.replaceChildren(layout);
  }
}
