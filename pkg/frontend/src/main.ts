// Dashboard wiring: controls -> ViewState -> one API query -> render.
// The URL hash always carries the full state; on API failure the banner
// shows the error and the previous view stays on screen.

import { ApiClient, ApiError, queryForState } from "./api.js";
import {
  hideError,
  renderScene,
  renderTable,
  showError,
} from "./dom.js";
import { PHASES } from "./phases.js";
import {
  claimsTable,
  communitiesTable,
  keywordTable,
  monthlyTable,
  networkScene,
  partyColorMap,
  projectionScene,
  sortTable,
  type TableModel,
} from "./scene.js";
import {
  applyPhase,
  clampM,
  decodeState,
  defaultState,
  encodeState,
  withWindow,
  type ViewMode,
  type ViewState,
} from "./state.js";
import type {
  ActorsPayload,
  ClaimsPayload,
  CommunitiesPayload,
  KeywordsPayload,
  MonthlyStatsPayload,
  NetworkPayload,
  ProjectionPayload,
} from "./types.js";

function apiBase(): string {
  const stored = window.localStorage.getItem("claimnet-api");
  return stored || "http://127.0.0.1:8000";
}

let client: ApiClient;
let state: ViewState = defaultState();
let lastTable: TableModel | null = null;
let sortColumn = -1;
let sortDescending = false;
const actorParty = new Map<string, string>();

function element<T extends Element>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as unknown as T;
}

function pushState(next: ViewState): void {
  state = next;
  window.location.hash = encodeState(state);
  // hashchange handles the refresh so back/forward work the same way
}

function syncControls(): void {
  element<HTMLInputElement>("from").value = state.from;
  element<HTMLInputElement>("to").value = state.to;
  element<HTMLInputElement>("m").value = String(state.m);
  element<HTMLOutputElement>("m-value").textContent = String(state.m);
  element<HTMLSelectElement>("view").value = state.view;
  element<HTMLSelectElement>("side").value = state.side;
  element<HTMLSelectElement>("mode").value = state.mode;
  element<HTMLSelectElement>("phase").value = state.phase ?? "";
  element<HTMLInputElement>("node").value = state.node ?? "";
  const projection = state.view === "projection"
    || state.view === "communities";
  element<HTMLElement>("projection-controls").style.display =
    projection ? "" : "none";
}

function selectNode(id: string): void {
  const name = id.replace(/^actor:/, "").replace(/^category:/, "");
  pushState({ ...state, view: "ego", node: name });
}

async function refresh(): Promise<void> {
  syncControls();
  const banner = element<HTMLElement>("banner");
  const main = element<HTMLElement>("content");
  const query = queryForState(state);
  element<HTMLElement>("query-echo").textContent =
    `${query.path}?${new URLSearchParams(query.params).toString()}`;
  try {
    switch (state.view) {
      case "network":
      case "ego": {
        const payload = await client.fetchQuery<NetworkPayload>(query);
        const scene = networkScene(payload, 840, 560, actorParty,
                                   partyColorMap(actorParty.values()));
        renderScene(main, scene, selectNode);
        break;
      }
      case "projection": {
        const payload = await client.fetchQuery<ProjectionPayload>(query);
        renderScene(main, projectionScene(payload), selectNode);
        break;
      }
      case "communities": {
        const payload = await client.fetchQuery<CommunitiesPayload>(query);
        lastTable = communitiesTable(payload);
        renderCurrentTable(main);
        break;
      }
      case "claims": {
        const payload = await client.fetchQuery<ClaimsPayload>(query);
        lastTable = claimsTable(payload);
        renderCurrentTable(main);
        break;
      }
      case "monthly": {
        const payload = await client.fetchQuery<MonthlyStatsPayload>(query);
        lastTable = monthlyTable(payload);
        renderCurrentTable(main);
        break;
      }
      case "keywords": {
        const payload = await client.fetchQuery<KeywordsPayload>(query);
        lastTable = keywordTable(payload);
        renderCurrentTable(main);
        break;
      }
    }
    hideError(banner);
  } catch (error) {
    if (error instanceof DOMException && error.name === "AbortError") {
      return; // superseded by a newer query; keep the old view
    }
    const message = error instanceof ApiError
      ? `${error.code}: ${error.message}`
      : `API unreachable: ${String(error)}`;
    showError(banner, message);
  }
}

function renderCurrentTable(main: Element): void {
  if (!lastTable) return;
  const model = sortColumn >= 0
    ? sortTable(lastTable, sortColumn, sortDescending)
    : lastTable;
  renderTable(main, model, {
    onSort: (column) => {
      sortDescending = column === sortColumn ? !sortDescending : false;
      sortColumn = column;
      renderCurrentTable(main);
    },
    onExport: (text) => {
      const blob = new Blob([text], { type: "text/tab-separated-values" });
      const link = document.createElement("a");
      link.href = URL.createObjectURL(blob);
      link.download = `${state.view}.tsv`;
      link.click();
      URL.revokeObjectURL(link.href);
    },
    onRowClick: state.view === "claims"
      ? (row) => pushState({ ...state, view: "ego", node: String(row[0]) })
      : undefined,
  });
}

function bindControls(): void {
  const phaseSelect = element<HTMLSelectElement>("phase");
  for (const phase of PHASES) {
    const option = document.createElement("option");
    option.value = phase.name;
    option.textContent = `${phase.name} (${phase.from} – ${phase.to})`;
    phaseSelect.appendChild(option);
  }
  phaseSelect.addEventListener("change", () => {
    if (phaseSelect.value) {
      pushState(applyPhase(state, phaseSelect.value));
    }
  });
  element<HTMLInputElement>("from").addEventListener("change", (event) => {
    pushState(withWindow(state, (event.target as HTMLInputElement).value,
                         state.to));
  });
  element<HTMLInputElement>("to").addEventListener("change", (event) => {
    pushState(withWindow(state, state.from,
                         (event.target as HTMLInputElement).value));
  });
  element<HTMLInputElement>("m").addEventListener("input", (event) => {
    pushState({ ...state,
                m: clampM(Number((event.target as HTMLInputElement).value)) });
  });
  element<HTMLSelectElement>("view").addEventListener("change", (event) => {
    sortColumn = -1;
    pushState({ ...state,
                view: (event.target as HTMLSelectElement).value as ViewMode });
  });
  element<HTMLSelectElement>("side").addEventListener("change", (event) => {
    pushState({ ...state, side: (event.target as HTMLSelectElement)
                .value as ViewState["side"] });
  });
  element<HTMLSelectElement>("mode").addEventListener("change", (event) => {
    pushState({ ...state, mode: (event.target as HTMLSelectElement)
                .value as ViewState["mode"] });
  });
  element<HTMLInputElement>("node").addEventListener("change", (event) => {
    const value = (event.target as HTMLInputElement).value.trim();
    pushState({ ...state, node: value || null });
  });
  element<HTMLInputElement>("api-base").value = apiBase();
  element<HTMLInputElement>("api-base").addEventListener("change", (event) => {
    window.localStorage.setItem(
      "claimnet-api", (event.target as HTMLInputElement).value.trim());
    window.location.reload();
  });
}

async function boot(): Promise<void> {
  client = new ApiClient(apiBase());
  state = decodeState(window.location.hash);
  bindControls();
  window.addEventListener("hashchange", () => {
    state = decodeState(window.location.hash);
    void refresh();
  });
  try {
    const actors = await new ApiClient(apiBase())
      .fetchQuery<ActorsPayload>({ path: "/actors", params: {} });
    for (const actor of actors.actors) {
      if (actor.party) actorParty.set(actor.name, actor.party);
    }
  } catch {
    // party coloring is optional; the view still renders without it
  }
  await refresh();
}

if (typeof window !== "undefined" && "document" in globalThis) {
  void boot();
}
