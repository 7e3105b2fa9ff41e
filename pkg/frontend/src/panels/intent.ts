// Intent panel: goal fields, intent list with keep/quote/edit/delete, dimensions.

import type { HoverTarget, ViewState } from "../state.js";
import type { Dimension, SessionState } from "../types.js";

export interface IntentPanelActions {
  confirmGoal(fields: Record<string, string>): void;
  addIntent(text: string): void;
  reviseIntent(intentId: string, text: string): void;
  deleteIntent(intentId: string): void;
  setKept(intentId: string, kept: boolean): void;
  quoteIntent(intentId: string): void;
  setSlider(dimensionId: string, level: number): void;
  setRadio(dimensionId: string, option: string): void;
  addTag(dimensionId: string, tag: string): void;
  removeTag(dimensionId: string, tag: string): void;
  hover(target: HoverTarget | null): void;
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

function hoverable(node: HTMLElement, target: HoverTarget, actions: IntentPanelActions): HTMLElement {
  node.addEventListener("mouseenter", () => actions.hover(target));
  node.addEventListener("mouseleave", () => actions.hover(null));
  return node;
}

function goalSection(session: SessionState, actions: IntentPanelActions): HTMLElement {
  const section = el("div", "goal-section");
  section.append(el("h3", "section-title", "User Goal"));
  const fields: Array<[keyof SessionState["goal"], string]> = [
    ["task_goal", "Task Goal"],
    ["writing_domain", "Domain"],
    ["topic", "Topic"],
  ];
  const inputs = new Map<string, HTMLInputElement>();
  for (const [name, label] of fields) {
    const row = el("label", "goal-field");
    row.append(el("span", "field-label", label));
    const input = el("input", "field-input") as HTMLInputElement;
    input.value = session.goal[name];
    input.name = name;
    inputs.set(name, input);
    row.append(input);
    section.append(row);
  }
  const confirm = el("button", "confirm-button", "✓ Update goal");
  confirm.addEventListener("click", () => {
    const changed: Record<string, string> = {};
    for (const [name, input] of inputs) {
      if (input.value !== session.goal[name as keyof SessionState["goal"]]) changed[name] = input.value;
    }
    if (Object.keys(changed).length > 0) actions.confirmGoal(changed);
  });
  section.append(confirm);
  return section;
}

function intentList(session: SessionState, actions: IntentPanelActions): HTMLElement {
  const section = el("div", "intent-list-section");
  section.append(el("h3", "section-title", "User Intents"));
  for (const intent of session.intents) {
    const row = el("div", "intent-row");
    row.dataset.intentId = intent.id;
    hoverable(row, { kind: "intent", intentId: intent.id }, actions);

    const keep = el("button", `icon-button keep-button${intent.kept ? " kept" : ""}`, intent.kept ? "★" : "☆");
    keep.title = intent.kept ? "Stop keeping this intent" : "Keep this intent in every future output";
    keep.addEventListener("click", () => actions.setKept(intent.id, !intent.kept));

    const quote = el("button", "icon-button quote-button", "“”");
    quote.title = "Write a targeted prompt for this intent";
    quote.addEventListener("click", () => actions.quoteIntent(intent.id));

    const text = el("input", "intent-text") as HTMLInputElement;
    text.value = intent.text;
    text.addEventListener("change", () => {
      if (text.value.trim() && text.value !== intent.text) actions.reviseIntent(intent.id, text.value);
    });

    const trash = el("button", "icon-button trash-button", "🗑");
    trash.title = "Delete this intent";
    trash.addEventListener("click", () => actions.deleteIntent(intent.id));

    row.append(keep, quote, text, trash);
    section.append(row);
  }

  const addRow = el("div", "intent-add-row");
  const input = el("input", "intent-add-input") as HTMLInputElement;
  input.placeholder = "Add an intent…";
  const add = el("button", "icon-button add-button", "+");
  add.addEventListener("click", () => {
    if (input.value.trim()) {
      actions.addIntent(input.value.trim());
      input.value = "";
    }
  });
  addRow.append(input, add);
  section.append(addRow);
  return section;
}

function popover(description: string): HTMLElement {
  return el("span", "popover", description);
}

function sliderWidget(dimension: Dimension, actions: IntentPanelActions): HTMLElement {
  const body = el("div", "dimension-body");
  const level = dimension.current[0] ?? "1";
  const input = el("input", "slider-input") as HTMLInputElement;
  input.type = "range";
  input.min = "1";
  input.max = "5";
  input.step = "1";
  input.value = level;
  input.addEventListener("change", () => actions.setSlider(dimension.id, Number(input.value)));

  const scale = el("div", "slider-scale");
  for (const value of dimension.domain) {
    const mark = el("span", `slider-mark${value === level ? " active" : ""}`, value);
    mark.dataset.dimensionId = dimension.id;
    mark.dataset.value = value;
    mark.append(popover(dimension.value_descriptions[value] ?? ""));
    if (value === level) {
      hoverable(mark, { kind: "dimension_value", dimensionId: dimension.id, value }, actions);
    }
    scale.append(mark);
  }
  body.append(input, scale);
  return body;
}

function radioWidget(dimension: Dimension, actions: IntentPanelActions): HTMLElement {
  const body = el("div", "dimension-body radio-group");
  const selected = dimension.current[0];
  for (const option of dimension.domain) {
    const label = el("label", `radio-option${option === selected ? " active" : ""}`);
    label.dataset.dimensionId = dimension.id;
    label.dataset.value = option;
    const input = el("input") as HTMLInputElement;
    input.type = "radio";
    input.name = `radio-${dimension.id}`;
    input.checked = option === selected;
    input.addEventListener("change", () => actions.setRadio(dimension.id, option));
    label.append(input, el("span", "", option), popover(dimension.value_descriptions[option] ?? ""));
    if (option === selected) {
      hoverable(label, { kind: "dimension_value", dimensionId: dimension.id, value: option }, actions);
    }
    body.append(label);
  }
  return body;
}

function hashtagWidget(dimension: Dimension, actions: IntentPanelActions): HTMLElement {
  const body = el("div", "dimension-body hashtag-set");
  for (const tag of dimension.current) {
    const chip = el("span", "chip tag-chip");
    chip.dataset.dimensionId = dimension.id;
    chip.dataset.value = tag;
    chip.append(el("span", "", tag), popover(dimension.value_descriptions[tag] ?? ""));
    const remove = el("button", "chip-clear", "×");
    remove.addEventListener("click", () => actions.removeTag(dimension.id, tag));
    chip.append(remove);
    hoverable(chip, { kind: "dimension_value", dimensionId: dimension.id, value: tag }, actions);
    body.append(chip);
  }
  const input = el("input", "tag-add-input") as HTMLInputElement;
  input.placeholder = "#add-tag";
  input.addEventListener("keydown", (event) => {
    if (event.key === "Enter" && input.value.trim()) {
      actions.addTag(dimension.id, input.value.trim());
      input.value = "";
    }
  });
  body.append(input);
  return body;
}

function dimensionSection(session: SessionState, actions: IntentPanelActions): HTMLElement {
  const section = el("div", "dimension-section");
  section.append(el("h3", "section-title", "Intent Dimensions"));
  for (const dimension of session.dimensions) {
    const block = el("div", "dimension-block");
    block.dataset.dimensionId = dimension.id;
    block.append(el("h4", "dimension-title", dimension.title));
    if (dimension.ui_kind === "slider") block.append(sliderWidget(dimension, actions));
    else if (dimension.ui_kind === "radio") block.append(radioWidget(dimension, actions));
    else block.append(hashtagWidget(dimension, actions));
    section.append(block);
  }
  return section;
}

export function IntentPanel(session: SessionState, _view: ViewState, actions: IntentPanelActions): HTMLElement {
  const panel = el("section", "panel intent-panel");
  panel.append(el("h2", "panel-title", "Intent Panel"));
  panel.append(goalSection(session, actions));
  panel.append(intentList(session, actions));
  panel.append(dimensionSection(session, actions));
  return panel;
}
