// Payload shapes of the claimnet HTTP API (GET-only, JSON).

export interface HealthPayload {
  status: string;
  records: number;
  observations: number;
  corpus_range: { from: string; to: string };
}

export interface ActorRow {
  name: string;
  kind: string | null;
  party: string | null;
  observations: number;
}

export interface ActorsPayload {
  actors: ActorRow[];
  count: number;
}

export interface CategoryRow {
  code: number;
  label: string | null;
  major_class: number;
  support: number;
  reject: number;
  observations: number;
}

export interface CategoriesPayload {
  categories: CategoryRow[];
  count: number;
}

export interface ClaimRow {
  record_id: string;
  doc_id: string;
  date: string;
  actor: string;
  category: number;
  label: string;
  polarity: string;
}

export interface ClaimsPayload {
  claims: ClaimRow[];
  count: number;
}

export interface AffiliationEdgeRow {
  actor: string;
  category: number;
  polarity: string;
  weight: number;
  count_raw: number;
}

export interface NetworkPayload {
  window: { from: string; to: string } | null;
  m: number;
  actors: string[];
  categories: number[];
  edges: AffiliationEdgeRow[];
  node_count: number;
  edge_count: number;
  ego?: string;
}

export interface ProjectionEdgeRow {
  source: string;
  target: string;
  weight: number;
}

export interface ProjectionPayload {
  side: string;
  mode: string;
  window: { from: string; to: string };
  m: number;
  nodes: string[];
  edges: ProjectionEdgeRow[];
  node_count: number;
  edge_count: number;
}

export interface CommunitiesPayload {
  side: string;
  mode: string;
  communities: string[][];
  assignment: Record<string, number>;
  modularity: number;
}

export interface MonthRow {
  month: string;
  claims: number;
  unique_categories: number;
  unique_actors: number;
  average_degree_simple: number;
  average_degree_split: number;
  average_degree_multiplicity: number;
}

export interface MonthlyStatsPayload {
  m: number;
  months: MonthRow[];
}

export interface KeywordEntry {
  keyword: string;
  frequency: number;
}

export interface KeywordsPayload {
  months: { month: string; entries: KeywordEntry[] }[];
}

export interface ApiErrorBody {
  error: { code: string; message: string };
}
