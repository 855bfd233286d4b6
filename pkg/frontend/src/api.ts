/** Thin typed client for the workbench HTTP API. */

import type {
  AbortDetail,
  ApplyResponse,
  EventSigDoc,
  GraphDoc,
  LineageEdge,
  StrategiesResponse,
  TraceEntryDoc,
} from "./model.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
    readonly detail?: AbortDetail | string,
    readonly diagnostics?: string[],
  ) {
    super(message);
  }
}

export interface EventRequest {
  name: string;
  target: string;
  args?: unknown[];
  dryRun?: boolean;
}

export class ApiClient {
  constructor(readonly baseUrl: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.baseUrl + path, init);
    const text = await response.text();
    const body = text ? JSON.parse(text) : {};
    if (!response.ok) {
      throw new ApiError(
        response.status,
        `${init?.method ?? "GET"} ${path} failed with ${response.status}`,
        body.detail,
        body.diagnostics,
      );
    }
    return body as T;
  }

  async createSessionFromDsl(dsl: string): Promise<string> {
    const body = await this.request<{ id: string }>("/sessions", {
      method: "POST",
      headers: { "content-type": "text/plain" },
      body: dsl,
    });
    return body.id;
  }

  async listSessions(): Promise<string[]> {
    const body = await this.request<{ sessions: string[] }>("/sessions");
    return body.sessions;
  }

  applyEvent(sessionId: string, event: EventRequest): Promise<ApplyResponse> {
    return this.request(`/sessions/${sessionId}/events`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ args: [], dryRun: false, ...event }),
    });
  }

  undo(sessionId: string): Promise<{ restored: boolean }> {
    return this.request(`/sessions/${sessionId}/undo`, { method: "POST" });
  }

  async graphs(sessionId: string): Promise<GraphDoc[]> {
    const body = await this.request<{ graphs: GraphDoc[] }>(
      `/sessions/${sessionId}/graphs`,
    );
    return body.graphs;
  }

  graph(sessionId: string, graphId: string): Promise<GraphDoc> {
    return this.request(`/sessions/${sessionId}/graphs/${graphId}`);
  }

  async lineage(sessionId: string): Promise<LineageEdge[]> {
    const body = await this.request<{ lineage: LineageEdge[] }>(
      `/sessions/${sessionId}/lineage`,
    );
    return body.lineage;
  }

  strategies(sessionId: string): Promise<StrategiesResponse> {
    return this.request(`/sessions/${sessionId}/strategies`);
  }

  async events(sessionId: string): Promise<EventSigDoc[]> {
    const body = await this.request<{ events: EventSigDoc[] }>(
      `/sessions/${sessionId}/events`,
    );
    return body.events;
  }

  async rulesText(sessionId: string): Promise<string> {
    const response = await fetch(`${this.baseUrl}/sessions/${sessionId}/rules`);
    if (!response.ok) {
      throw new ApiError(response.status, "failed to load rules");
    }
    return response.text();
  }

  async putRules(sessionId: string, text: string): Promise<string[]> {
    const response = await fetch(`${this.baseUrl}/sessions/${sessionId}/rules`, {
      method: "PUT",
      headers: { "content-type": "text/plain" },
      body: text,
    });
    const body = await response.json();
    if (!response.ok) {
      return (body.diagnostics ?? [String(body.detail ?? "error")]) as string[];
    }
    return [];
  }

  async storedTrace(sessionId: string, n: number): Promise<TraceEntryDoc[]> {
    const body = await this.request<{ trace: TraceEntryDoc[] }>(
      `/sessions/${sessionId}/traces/${n}`,
    );
    return body.trace;
  }
}
