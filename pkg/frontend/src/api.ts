// API client: maps a ViewState to one query, fetches JSON, and cancels
// superseded in-flight requests (latest wins).

import type { ViewState } from "./state.js";

export interface Query {
  path: string;
  params: Record<string, string>;
}

/** The one API query a view state corresponds to. */
export function queryForState(state: ViewState): Query {
  const windowParams = { from: state.from, to: state.to };
  const m = String(state.m);
  switch (state.view) {
    case "claims": {
      const params: Record<string, string> = { ...windowParams };
      if (state.node) params.actor = state.node;
      return { path: "/claims", params };
    }
    case "network":
      return { path: "/network", params: { ...windowParams, m } };
    case "ego":
      return {
        path: "/network/ego",
        params: { node: state.node ?? "", ...windowParams, m },
      };
    case "projection":
      return {
        path: "/projection",
        params: { side: state.side, mode: state.mode, ...windowParams, m },
      };
    case "communities":
      return {
        path: "/communities",
        params: { side: state.side, mode: state.mode, ...windowParams, m },
      };
    case "monthly":
      return { path: "/stats/monthly", params: {} };
    case "keywords":
      return { path: "/keywords", params: { month: state.from.slice(0, 7) } };
  }
}

/** Deterministic URL construction (insertion-ordered params). */
export function buildUrl(base: string, query: Query): string {
  const search = new URLSearchParams();
  for (const [key, value] of Object.entries(query.params)) {
    search.set(key, value);
  }
  const suffix = search.toString();
  const root = base.replace(/\/+$/, "");
  return suffix ? `${root}${query.path}?${suffix}` : `${root}${query.path}`;
}

export class ApiError extends Error {
  constructor(readonly status: number, readonly code: string,
              message: string) {
    super(message);
  }
}

export type FetchLike = (input: string, init?: { signal?: AbortSignal })
  => Promise<{ ok: boolean; status: number; json(): Promise<unknown> }>;

export class ApiClient {
  private controller: AbortController | null = null;

  constructor(private readonly base: string,
              private readonly fetchFn: FetchLike =
              (input, init) => fetch(input, init)) {}

  /** Fetch one query, aborting any request still in flight. */
  async fetchQuery<T>(query: Query): Promise<T> {
    this.controller?.abort();
    const controller = new AbortController();
    this.controller = controller;
    const url = buildUrl(this.base, query);
    const response = await this.fetchFn(url, { signal: controller.signal });
    if (!response.ok) {
      let code = "http_error";
      let message = `request failed with status ${response.status}`;
      try {
        const body = (await response.json()) as
          { error?: { code?: string; message?: string } };
        if (body.error) {
          code = body.error.code ?? code;
          message = body.error.message ?? message;
        }
      } catch {
        // non-JSON error body: keep the generic message
      }
      throw new ApiError(response.status, code, message);
    }
    return (await response.json()) as T;
  }

  async fetchView<T>(state: ViewState): Promise<T> {
    return this.fetchQuery<T>(queryForState(state));
  }
}
