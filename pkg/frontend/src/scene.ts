// View models for rendering. Every number shown in a scene or table is
// copied from an API field; the only derived values are layout positions.

import { forceLayout } from "./layout.js";
import { REJECT_COLOR, SUPPORT_COLOR } from "./state.js";
import type {
  ClaimsPayload,
  CommunitiesPayload,
  KeywordsPayload,
  MonthlyStatsPayload,
  NetworkPayload,
  ProjectionPayload,
} from "./types.js";

export interface SceneNode {
  id: string;
  label: string;
  shape: "circle" | "square"; // circles = actors, squares = categories
  color: string;
  x: number;
  y: number;
}

export interface SceneEdge {
  source: string;
  target: string;
  color: string;
  width: number;
  weight: number;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
}

export interface NetworkScene {
  nodes: SceneNode[];
  edges: SceneEdge[];
  nodeCount: number; // straight from the API payload
  edgeCount: number;
}

const NEUTRAL_EDGE = "#8a8a8a";
const ACTOR_FALLBACK = "#6b7fb5";
const CATEGORY_COLOR = "#9e6b3f";
const PARTY_PALETTE = [
  "#4363d8", "#e6194b", "#3cb44b", "#ffb000", "#911eb4", "#46a3a0",
  "#f58231", "#6a7b8b",
];

export function partyColorMap(parties: Iterable<string>): Map<string, string> {
  const map = new Map<string, string>();
  for (const party of [...new Set(parties)].sort()) {
    map.set(party, PARTY_PALETTE[map.size % PARTY_PALETTE.length]);
  }
  return map;
}

function actorKey(name: string): string {
  return `actor:${name}`;
}

function categoryKey(code: number): string {
  return `category:${code}`;
}

export function networkScene(payload: NetworkPayload,
                             width = 840, height = 560,
                             actorParty: Map<string, string> = new Map(),
                             partyColors: Map<string, string> = new Map(),
                             ): NetworkScene {
  const nodeIds = [
    ...payload.actors.map(actorKey),
    ...payload.categories.map(categoryKey),
  ];
  const links: [string, string][] = payload.edges.map(
    (e) => [actorKey(e.actor), categoryKey(e.category)]);
  const positions = forceLayout(nodeIds, links, width, height);

  const nodes: SceneNode[] = [
    ...payload.actors.map((name) => {
      const party = actorParty.get(name);
      return {
        id: actorKey(name),
        label: name,
        shape: "circle" as const,
        color: (party && partyColors.get(party)) ?? ACTOR_FALLBACK,
        ...positions.get(actorKey(name))!,
      };
    }),
    ...payload.categories.map((code) => ({
      id: categoryKey(code),
      label: String(code),
      shape: "square" as const,
      color: CATEGORY_COLOR,
      ...positions.get(categoryKey(code))!,
    })),
  ];
  const edges: SceneEdge[] = payload.edges.map((e) => {
    const a = positions.get(actorKey(e.actor))!;
    const b = positions.get(categoryKey(e.category))!;
    return {
      source: actorKey(e.actor),
      target: categoryKey(e.category),
      color: e.polarity === "+" ? SUPPORT_COLOR : REJECT_COLOR,
      width: Math.min(6, 1 + e.weight),
      weight: e.weight,
      x1: a.x, y1: a.y, x2: b.x, y2: b.y,
    };
  });
  return {
    nodes,
    edges,
    nodeCount: payload.node_count,
    edgeCount: payload.edge_count,
  };
}

export function projectionScene(payload: ProjectionPayload,
                                width = 840, height = 560,
                                communityOf: Record<string, number> = {},
                                ): NetworkScene {
  const links: [string, string][] = payload.edges.map(
    (e) => [e.source, e.target]);
  const positions = forceLayout(payload.nodes, links, width, height);
  const shape = payload.side === "actor" ? "circle" : "square";
  const nodes: SceneNode[] = payload.nodes.map((id) => ({
    id,
    label: id,
    shape,
    color: communityOf[id] !== undefined
      ? PARTY_PALETTE[communityOf[id] % PARTY_PALETTE.length]
      : (shape === "circle" ? ACTOR_FALLBACK : CATEGORY_COLOR),
    ...positions.get(id)!,
  }));
  const edges: SceneEdge[] = payload.edges.map((e) => {
    const a = positions.get(e.source)!;
    const b = positions.get(e.target)!;
    return {
      source: e.source,
      target: e.target,
      color: NEUTRAL_EDGE,
      width: Math.min(6, 1 + e.weight),
      weight: e.weight,
      x1: a.x, y1: a.y, x2: b.x, y2: b.y,
    };
  });
  return {
    nodes,
    edges,
    nodeCount: payload.node_count,
    edgeCount: payload.edge_count,
  };
}

export interface TableModel {
  columns: string[];
  rows: (string | number)[][];
}

export function claimsTable(payload: ClaimsPayload): TableModel {
  return {
    columns: ["actor", "category", "label", "polarity", "date", "doc_id"],
    rows: payload.claims.map((c) => [
      c.actor, c.category, c.label, c.polarity, c.date, c.doc_id,
    ]),
  };
}

export function monthlyTable(payload: MonthlyStatsPayload): TableModel {
  return {
    columns: ["month", "claims", "unique_categories", "unique_actors",
              "average_degree"],
    rows: payload.months.map((m) => [
      m.month, m.claims, m.unique_categories, m.unique_actors,
      m.average_degree_simple,
    ]),
  };
}

export function keywordTable(payload: KeywordsPayload): TableModel {
  const rows: (string | number)[][] = [];
  for (const month of payload.months) {
    for (const entry of month.entries) {
      rows.push([month.month, entry.keyword, entry.frequency]);
    }
  }
  return { columns: ["month", "keyword", "frequency"], rows };
}

export function communitiesTable(payload: CommunitiesPayload): TableModel {
  return {
    columns: ["node", "community"],
    rows: Object.entries(payload.assignment)
      .map(([node, community]) => [node, community] as (string | number)[]),
  };
}

export function sortTable(model: TableModel, column: number,
                          descending = false): TableModel {
  const rows = [...model.rows].sort((a, b) => {
    const x = a[column];
    const y = b[column];
    let cmp: number;
    if (typeof x === "number" && typeof y === "number") {
      cmp = x - y;
    } else {
      cmp = String(x) < String(y) ? -1 : String(x) > String(y) ? 1 : 0;
    }
    return descending ? -cmp : cmp;
  });
  return { columns: model.columns, rows };
}

/** Export a table as delimited text (tab-separated by default). */
export function toDelimited(model: TableModel, separator = "\t"): string {
  const lines = [model.columns.join(separator)];
  for (const row of model.rows) {
    lines.push(row.map(String).join(separator));
  }
  return lines.join("\n") + "\n";
}
