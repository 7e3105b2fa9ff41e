// Wire contracts mirrored from the session service.

export interface Goal {
  task_goal: string;
  writing_domain: string;
  topic: string;
}

export interface Intent {
  id: string;
  text: string;
  kept: boolean;
  origin: string;
  created_turn: number;
}

export type UiKind = "slider" | "radio" | "hashtag";

export interface Dimension {
  id: string;
  title: string;
  ui_kind: UiKind;
  domain: string[];
  current: string[];
  value_descriptions: Record<string, string>;
}

export interface Section {
  header: string | null;
  body: string;
}

export interface OutputDocument {
  sections: Section[];
  canonical_text: string;
  offsets: [number, number][];
}

export type LinkSource =
  | { kind: "intent"; intent_id: string }
  | { kind: "dimension_value"; dimension_id: string; value: string };

export interface Link {
  source: LinkSource;
  spans: [number, number][];
}

export interface PanelSnapshot {
  goal: Goal;
  intents: Intent[];
  dimensions: Dimension[];
}

export interface Provenance {
  kind: string;
  rollback_of?: number;
}

export interface OutputPage {
  page_number: number;
  document: OutputDocument;
  snapshot: PanelSnapshot;
  links: Link[];
  provenance: Provenance;
}

export interface ChatEntry {
  role: "user" | "assistant";
  text: string;
  status_events: string[];
}

export interface ActionRecord {
  action_id: string;
  kind: string;
  source: string;
  auto_classified: boolean;
  annotation_pending: boolean;
  timestamp: string;
  payload: Record<string, unknown>;
}

export interface SessionState {
  session_id: string;
  goal: Goal;
  intents: Intent[];
  dimensions: Dimension[];
  pages: OutputPage[];
  chat_history: ChatEntry[];
  action_log: ActionRecord[];
  turn_counter: number;
}

export interface SessionDocument {
  schema: string;
  session: SessionState;
}

export interface DiffSegment {
  kind: "equal" | "inserted" | "deleted";
  text: string;
}

export interface DiffView {
  against: number;
  segments: DiffSegment[];
}

export interface ChatResponse {
  turn_id: string;
  reply: string;
  invoked: string[];
  new_page: number | null;
  link_repairs: number;
}

export interface EditResponse {
  change: string;
  detail: Record<string, unknown>;
  new_page: number | null;
}

export interface EventEnvelope {
  session_id: string;
  seq: number;
  kind: "status" | "reply" | "page_ready" | "panel_updated" | "error";
  payload: Record<string, unknown>;
}

export type ActionKind = "Add" | "Delete" | "Correct" | "Adjust";
