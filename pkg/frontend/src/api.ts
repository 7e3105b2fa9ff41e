// Typed client for the session service HTTP API and event stream.

import type {
  ActionKind,
  ActionRecord,
  ChatResponse,
  DiffView,
  EditResponse,
  EventEnvelope,
  Link,
  OutputPage,
  SessionDocument,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly errorKind: string,
    message: string,
  ) {
    super(message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly base = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: {} };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(this.base + path, init);
    const payload = await response.json();
    if (!response.ok) {
      const detail = payload?.detail ?? {};
      throw new ApiError(response.status, detail.error ?? "Error", detail.message ?? response.statusText);
    }
    return payload as T;
  }

  createSession(): Promise<{ session_id: string }> {
    return this.request("POST", "/sessions");
  }

  getSession(sessionId: string): Promise<SessionDocument> {
    return this.request("GET", `/sessions/${sessionId}`);
  }

  chat(sessionId: string, prompt: string, targetedIntent?: string | null): Promise<ChatResponse> {
    return this.request("POST", `/sessions/${sessionId}/chat`, {
      prompt,
      targeted_intent: targetedIntent ?? null,
    });
  }

  editGoal(sessionId: string, fields: Partial<{ task_goal: string; writing_domain: string; topic: string }>) {
    return this.request<EditResponse>("POST", `/sessions/${sessionId}/goal`, fields);
  }

  addIntent(sessionId: string, text: string): Promise<EditResponse> {
    return this.request("POST", `/sessions/${sessionId}/intents`, { text });
  }

  reviseIntent(sessionId: string, intentId: string, text: string): Promise<EditResponse> {
    return this.request("PATCH", `/sessions/${sessionId}/intents/${intentId}`, { text });
  }

  setKept(sessionId: string, intentId: string, kept: boolean): Promise<EditResponse> {
    return this.request("PATCH", `/sessions/${sessionId}/intents/${intentId}`, { kept });
  }

  deleteIntent(sessionId: string, intentId: string): Promise<EditResponse> {
    return this.request("DELETE", `/sessions/${sessionId}/intents/${intentId}`);
  }

  setSlider(sessionId: string, dimensionId: string, level: number): Promise<EditResponse> {
    return this.request("PATCH", `/sessions/${sessionId}/dimensions/${dimensionId}`, { level });
  }

  setRadio(sessionId: string, dimensionId: string, option: string): Promise<EditResponse> {
    return this.request("PATCH", `/sessions/${sessionId}/dimensions/${dimensionId}`, { option });
  }

  addTag(sessionId: string, dimensionId: string, tag: string): Promise<EditResponse> {
    return this.request("PATCH", `/sessions/${sessionId}/dimensions/${dimensionId}`, { add_tag: tag });
  }

  removeTag(sessionId: string, dimensionId: string, tag: string): Promise<EditResponse> {
    return this.request("PATCH", `/sessions/${sessionId}/dimensions/${dimensionId}`, { remove_tag: tag });
  }

  getPage(sessionId: string, pageNumber: number): Promise<OutputPage> {
    return this.request("GET", `/sessions/${sessionId}/pages/${pageNumber}`);
  }

  getLinks(sessionId: string, pageNumber: number): Promise<{ links: Link[] }> {
    return this.request("GET", `/sessions/${sessionId}/pages/${pageNumber}/links`);
  }

  getDiff(sessionId: string, pageNumber: number, against?: number): Promise<DiffView> {
    const query = against === undefined ? "" : `?against=${against}`;
    return this.request("GET", `/sessions/${sessionId}/pages/${pageNumber}/diff${query}`);
  }

  rollback(sessionId: string, page: number): Promise<{ new_page: number }> {
    return this.request("POST", `/sessions/${sessionId}/rollback`, { page });
  }

  getActions(sessionId: string): Promise<{ actions: ActionRecord[] }> {
    return this.request("GET", `/sessions/${sessionId}/actions`);
  }

  annotate(sessionId: string, actionId: string, kind: ActionKind) {
    return this.request<{ action_id: string; kind: string }>(
      "POST",
      `/sessions/${sessionId}/actions/${actionId}/annotate`,
      { kind },
    );
  }

  // Live server-sent events; resumes from the last seen sequence number.
  subscribeEvents(sessionId: string, after: number, onEvent: (event: EventEnvelope) => void): () => void {
    if (typeof EventSource === "undefined") {
      return () => {};
    }
    const source = new EventSource(`${this.base}/sessions/${sessionId}/events?after=${after}`);
    const handler = (message: MessageEvent) => onEvent(JSON.parse(message.data) as EventEnvelope);
    for (const kind of ["status", "reply", "page_ready", "panel_updated", "error"]) {
      source.addEventListener(kind, handler as EventListener);
    }
    return () => source.close();
  }
}
