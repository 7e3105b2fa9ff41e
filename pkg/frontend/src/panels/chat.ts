// Chat panel: prompt input, message history, status lines, annotation chips.

import type { ViewState } from "../state.js";
import type { ActionKind, SessionState } from "../types.js";

export interface ChatActions {
  sendPrompt(prompt: string): void;
  clearTargeted(): void;
  annotate(actionId: string, kind: ActionKind): void;
}

const ANNOTATION_KINDS: ActionKind[] = ["Add", "Delete", "Correct", "Adjust"];

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

export function ChatPanel(session: SessionState, view: ViewState, actions: ChatActions): HTMLElement {
  const panel = el("section", "panel chat-panel");
  panel.append(el("h2", "panel-title", "Chat"));

  const history = el("div", "chat-history");
  for (const entry of session.chat_history) {
    const message = el("div", `chat-message chat-${entry.role}`);
    message.append(el("div", "chat-text", entry.text));
    for (const status of entry.status_events) {
      message.append(el("div", "chat-status", status));
    }
    history.append(message);
  }
  if (view.statusLine) {
    history.append(el("div", "chat-status chat-status-live", view.statusLine));
  }
  panel.append(history);

  if (view.pendingAnnotation) {
    const chips = el("div", "annotation-chips");
    chips.append(el("span", "annotation-label", "What was this input?"));
    for (const kind of ANNOTATION_KINDS) {
      const chip = el("button", "chip annotation-chip", kind);
      chip.dataset.kind = kind;
      chip.addEventListener("click", () => actions.annotate(view.pendingAnnotation!, kind));
      chips.append(chip);
    }
    panel.append(chips);
  }

  const composer = el("div", "composer");
  if (view.targetedIntent) {
    const chip = el("div", "chip targeted-chip");
    chip.append(el("span", "", `re: ${view.targetedIntent.text}`));
    const clear = el("button", "chip-clear", "×");
    clear.addEventListener("click", () => actions.clearTargeted());
    chip.append(clear);
    composer.append(chip);
  }

  const input = el("textarea", "prompt-input") as HTMLTextAreaElement;
  input.placeholder = view.targetedIntent
    ? "Describe how this intent should change…"
    : "Describe what you want written…";
  input.disabled = view.busy;

  const send = el("button", "send-button", view.busy ? "Working…" : "Send");
  send.disabled = view.busy;
  const submit = () => {
    const prompt = input.value.trim();
    if (!prompt || view.busy) return;
    input.value = "";
    actions.sendPrompt(prompt);
  };
  send.addEventListener("click", submit);
  input.addEventListener("keydown", (event) => {
    if (event.key === "Enter" && !event.shiftKey) {
      event.preventDefault();
      submit();
    }
  });

  composer.append(input, send);
  panel.append(composer);
  return panel;
}
