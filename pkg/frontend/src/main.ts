// Bootstrap: resume or create a session, then mount the app.

import { ApiClient } from "./api.js";
import { App } from "./app.js";

const STORAGE_KEY = "intentflow-session-id";

async function boot(): Promise<void> {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app root element");
  const api = new ApiClient("");

  let sessionId = window.localStorage.getItem(STORAGE_KEY);
  if (sessionId) {
    try {
      await api.getSession(sessionId);
    } catch {
      sessionId = null; // stale id from a wiped data dir
    }
  }
  if (!sessionId) {
    sessionId = (await api.createSession()).session_id;
    window.localStorage.setItem(STORAGE_KEY, sessionId);
  }

  const app = new App(root, api, sessionId);
  await app.load();
}

void boot();
