/**
 * Thin HTTP client for the avyview service, plus an SSE reader built on
 * fetch streaming so it runs identically in browsers and in jsdom tests
 * (jsdom has no native EventSource).
 */

import type {
  Highlights,
  SelectionAction,
  SelectionEvent,
  Theme,
  TooltipPayload,
  ViewModels,
} from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function getJson<T>(url: string): Promise<T> {
  const res = await fetch(url);
  if (!res.ok) throw new ApiError(res.status, `GET ${url}: ${res.status}`);
  return (await res.json()) as T;
}

export class ApiClient {
  constructor(private base: string) {}

  listDatasets(): Promise<{ datasets: { dataset_id: string; reports: number }[] }> {
    return getJson(`${this.base}/api/datasets`);
  }

  viewModels(datasetId: string, range?: { from: string; to: string }): Promise<ViewModels> {
    const qs = range ? `?from=${range.from}&to=${range.to}` : "";
    return getJson(`${this.base}/api/datasets/${datasetId}/viewmodels${qs}`);
  }

  theme(): Promise<Theme> {
    return getJson(`${this.base}/api/theme`);
  }

  tooltip(reportId: string): Promise<TooltipPayload> {
    return getJson(`${this.base}/api/reports/${encodeURIComponent(reportId)}/tooltip`);
  }

  async createSession(datasetId: string): Promise<{ session_id: string; version: number }> {
    const res = await fetch(`${this.base}/api/sessions`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ dataset_id: datasetId }),
    });
    if (!res.ok) throw new ApiError(res.status, `create session: ${res.status}`);
    return res.json();
  }

  async applyAction(
    sessionId: string,
    action: SelectionAction,
  ): Promise<{ version: number; selected_count: number }> {
    const res = await fetch(`${this.base}/api/sessions/${sessionId}/selection`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(action),
    });
    if (!res.ok) throw new ApiError(res.status, `selection action: ${res.status}`);
    return res.json();
  }

  highlights(sessionId: string): Promise<Highlights> {
    return getJson(`${this.base}/api/sessions/${sessionId}/highlights`);
  }

  /**
   * Subscribe to the session's selection-change stream. Returns an
   * abort function. Events carry (session_id, version); the caller
   * reconciles local state against the version.
   */
  subscribe(sessionId: string, onEvent: (event: SelectionEvent) => void): () => void {
    const controller = new AbortController();
    const url = `${this.base}/api/sessions/${sessionId}/events`;
    void (async () => {
      try {
        const res = await fetch(url, { signal: controller.signal });
        if (!res.ok || !res.body) return;
        const reader = res.body.getReader();
        const decoder = new TextDecoder();
        let buffer = "";
        for (;;) {
          const { done, value } = await reader.read();
          if (done) break;
          buffer += decoder.decode(value, { stream: true });
          const events = parseSseChunk(buffer);
          buffer = events.rest;
          for (const data of events.payloads) onEvent(data);
        }
      } catch {
        // aborted or connection dropped; caller may re-subscribe
      }
    })();
    return () => controller.abort();
  }
}

/** Extract complete SSE event payloads from a buffer; keep the tail. */
export function parseSseChunk(buffer: string): {
  payloads: SelectionEvent[];
  rest: string;
} {
  const payloads: SelectionEvent[] = [];
  const parts = buffer.split("\n\n");
  const rest = parts.pop() ?? "";
  for (const block of parts) {
    for (const line of block.split("\n")) {
      if (line.startsWith("data:")) {
        try {
          payloads.push(JSON.parse(line.slice(5).trim()) as SelectionEvent);
        } catch {
          // ignore malformed payloads (keepalive comments etc.)
        }
      }
    }
  }
  return { payloads, rest };
}
