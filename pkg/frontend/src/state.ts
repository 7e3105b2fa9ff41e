// Client view state. The screen is a pure function of (session document, view
// state); nothing here is authoritative about the session itself.

export type HoverTarget =
  | { kind: "intent"; intentId: string }
  | { kind: "dimension_value"; dimensionId: string; value: string };

export interface ViewState {
  currentPage: number; // 0 when the session has no pages yet
  diffOn: boolean;
  headersOn: boolean;
  hover: HoverTarget | null;
  targetedIntent: { id: string; text: string } | null; // quote-icon pre-fill
  busy: boolean; // a turn is in flight; inputs disabled
  pendingAnnotation: string | null; // action id awaiting a kind chip
  statusLine: string | null;
  notice: string | null; // dismissible error notice
}

export function initialViewState(pageCount: number): ViewState {
  return {
    currentPage: pageCount,
    diffOn: false,
    headersOn: true,
    hover: null,
    targetedIntent: null,
    busy: false,
    pendingAnnotation: null,
    statusLine: null,
    notice: null,
  };
}

export function withPage(state: ViewState, page: number, pageCount: number): ViewState {
  const bounded = Math.max(pageCount ? 1 : 0, Math.min(page, pageCount));
  return { ...state, currentPage: bounded, hover: null };
}

export function toggleDiff(state: ViewState): ViewState {
  return { ...state, diffOn: !state.diffOn };
}

export function toggleHeaders(state: ViewState): ViewState {
  return { ...state, headersOn: !state.headersOn };
}

export function withHover(state: ViewState, hover: HoverTarget | null): ViewState {
  return { ...state, hover };
}

// The diff baseline: the previous page (an empty baseline for page 1).
export function diffBaseline(state: ViewState): number {
  return Math.max(0, state.currentPage - 1);
}

// Any change to the panel invalidates the hover target.
export function afterPanelChange(state: ViewState): ViewState {
  return { ...state, hover: null };
}

export function sameHover(a: HoverTarget | null, b: HoverTarget | null): boolean {
  if (a === null || b === null) return a === b;
  if (a.kind === "intent" && b.kind === "intent") return a.intentId === b.intentId;
  if (a.kind === "dimension_value" && b.kind === "dimension_value") {
    return a.dimensionId === b.dimensionId && a.value === b.value;
  }
  return false;
}
