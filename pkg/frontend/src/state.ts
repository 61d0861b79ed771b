// ViewState: everything the dashboard shows is a function of this value,
// and the full state round-trips through the URL hash so views are
// shareable and reproducible.

import { phaseByName } from "./phases.js";

export type ViewMode =
  | "claims"
  | "network"
  | "ego"
  | "projection"
  | "communities"
  | "monthly"
  | "keywords";

export type ProjectionSide = "actor" | "category";

export type ProjectionKind =
  | "positive_congruence"
  | "negative_congruence"
  | "conflict"
  | "combined";

export interface ViewState {
  from: string;
  to: string;
  phase: string | null; // preset name when the window came from a preset
  m: number; // slice threshold, slider range 1..5
  view: ViewMode;
  node: string | null; // selected node (ego queries, claims filter)
  side: ProjectionSide;
  mode: ProjectionKind;
}

// polarity colors: support blue, reject orange/red
export const SUPPORT_COLOR = "#2166ac";
export const REJECT_COLOR = "#e0711f";

export const M_MIN = 1;
export const M_MAX = 5;

const VIEWS: readonly ViewMode[] = [
  "claims", "network", "ego", "projection", "communities", "monthly",
  "keywords",
];
const SIDES: readonly ProjectionSide[] = ["actor", "category"];
const MODES: readonly ProjectionKind[] = [
  "positive_congruence", "negative_congruence", "conflict", "combined",
];

export function defaultState(): ViewState {
  return {
    from: "2015-01-01",
    to: "2015-12-31",
    phase: null,
    m: 2,
    view: "network",
    node: null,
    side: "actor",
    mode: "combined",
  };
}

export function clampM(value: number): number {
  if (!Number.isFinite(value)) return 2;
  return Math.min(M_MAX, Math.max(M_MIN, Math.round(value)));
}

const ISO_DATE = /^\d{4}-\d{2}-\d{2}$/;

export function applyPhase(state: ViewState, phaseName: string): ViewState {
  const phase = phaseByName(phaseName);
  if (!phase) return { ...state, phase: null };
  return { ...state, phase: phase.name, from: phase.from, to: phase.to };
}

export function withWindow(state: ViewState, from: string,
                           to: string): ViewState {
  return { ...state, phase: null, from, to };
}

/** Encode the full state as a URL hash fragment (stable key order). */
export function encodeState(state: ViewState): string {
  const params = new URLSearchParams();
  params.set("view", state.view);
  params.set("from", state.from);
  params.set("to", state.to);
  params.set("m", String(state.m));
  params.set("side", state.side);
  params.set("mode", state.mode);
  if (state.phase) params.set("phase", state.phase);
  if (state.node) params.set("node", state.node);
  return params.toString();
}

/** Decode a hash fragment; missing or invalid fields fall back to the
 * defaults, so any URL yields a usable state. */
export function decodeState(hash: string): ViewState {
  const clean = hash.startsWith("#") ? hash.slice(1) : hash;
  const params = new URLSearchParams(clean);
  const state = defaultState();

  const view = params.get("view");
  if (view && (VIEWS as readonly string[]).includes(view)) {
    state.view = view as ViewMode;
  }
  const from = params.get("from");
  if (from && ISO_DATE.test(from)) state.from = from;
  const to = params.get("to");
  if (to && ISO_DATE.test(to)) state.to = to;
  const m = params.get("m");
  if (m !== null) state.m = clampM(Number(m));
  const side = params.get("side");
  if (side && (SIDES as readonly string[]).includes(side)) {
    state.side = side as ProjectionSide;
  }
  const mode = params.get("mode");
  if (mode && (MODES as readonly string[]).includes(mode)) {
    state.mode = mode as ProjectionKind;
  }
  const phase = params.get("phase");
  if (phase && phaseByName(phase)) {
    state.phase = phase;
  }
  state.node = params.get("node");
  return state;
}
