"""Read-only HTTP query API over an immutable dataset snapshot.

All endpoints are GET; responses are JSON with stable field names and
deterministic ordering, so identical queries return identical bytes.
Error statuses: 400 malformed parameter, 404 unknown actor/category/node,
422 structurally valid but out-of-domain window or m.
"""

from __future__ import annotations

import os
import threading
from collections import OrderedDict
from dataclasses import dataclass
from datetime import date
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .aggregate import TimeWindow, aggregate_window, unstack_all
from .analysis import (
    centrality,
    communities,
    compare_networks,
    monthly_network_stats,
)
from .ingest import Dataset, corpus_counts
from .keywords import monthly_keyword_table
from .network import (
    AffiliationNetwork,
    DegreeConvention,
    NodeNotFound,
    ProjectionMode,
    Side,
    build_affiliation,
    ego_network,
    project,
)

DEFAULT_M = 2


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str) -> None:
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def _parse_date(raw: str, param: str) -> date:
    try:
        return date.fromisoformat(raw)
    except ValueError:
        raise ApiError(400, "malformed_date",
                       f"{param} must be an ISO date, got {raw!r}") from None


def _parse_int(raw: str, param: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ApiError(400, f"malformed_{param}",
                       f"{param} must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class QuerySpec:
    """Validated query parameters shared by the windowed endpoints.

    Defaults: window = full corpus range, m = 2, no actor/category
    filter, side = actor, mode = combined, convention = multiplicity.
    """

    window: TimeWindow
    m: int = DEFAULT_M
    actor: Optional[str] = None
    category: Optional[int] = None
    side: Side = Side.ACTOR
    mode: ProjectionMode = ProjectionMode.COMBINED
    convention: DegreeConvention = DegreeConvention.MULTIPLICITY

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ApiError(422, "invalid_m", f"m must be >= 1, got {self.m}")


class Snapshot:
    """Immutable dataset plus a synchronized window-network cache."""

    def __init__(self, dataset: Dataset, cache_size: int = 0) -> None:
        self.dataset = dataset
        self.observations = tuple(unstack_all(dataset.records))
        self.counts = corpus_counts(dataset)
        self._cache: OrderedDict[tuple, AffiliationNetwork] = OrderedDict()
        self._cache_size = cache_size
        self._lock = threading.Lock()

    def window(self, start: Optional[date], end: Optional[date]) -> TimeWindow:
        first, last = self.dataset.corpus_range
        start = start if start is not None else first
        end = end if end is not None else last
        if start > end:
            raise ApiError(422, "invalid_window",
                           f"window start {start} is after end {end}")
        return TimeWindow(start, end)

    def affiliation(self, window: TimeWindow, m: int) -> AffiliationNetwork:
        if m < 1:
            raise ApiError(422, "invalid_m", f"m must be >= 1, got {m}")
        key = (window.start, window.end, m)
        with self._lock:
            if key in self._cache:
                self._cache.move_to_end(key)
                return self._cache[key]
        net = build_affiliation(
            aggregate_window(self.observations, window, m), window=window, m=m)
        with self._lock:
            self._cache[key] = net
            if self._cache_size and len(self._cache) > self._cache_size:
                self._cache.popitem(last=False)
        return net


def _query_spec(snapshot: Snapshot, request: Request,
                default_m: int = DEFAULT_M) -> QuerySpec:
    params = request.query_params
    start = _parse_date(params["from"], "from") if "from" in params else None
    end = _parse_date(params["to"], "to") if "to" in params else None
    raw_m = params.get("m")
    category_raw = params.get("category")
    return QuerySpec(
        window=snapshot.window(start, end),
        m=_parse_int(raw_m, "m") if raw_m is not None else default_m,
        actor=params.get("actor"),
        category=_parse_int(category_raw, "category")
        if category_raw is not None else None,
        side=_side_param(request),
        mode=_mode_param(request),
        convention=_convention_param(request),
    )


def _side_param(request: Request, default: str = "actor") -> Side:
    raw = request.query_params.get("side", default)
    try:
        return Side(raw)
    except ValueError:
        raise ApiError(400, "malformed_side",
                       f"side must be actor or category, got {raw!r}") from None


def _mode_param(request: Request, default: str = "combined") -> ProjectionMode:
    raw = request.query_params.get("mode", default)
    try:
        return ProjectionMode(raw)
    except ValueError:
        valid = ", ".join(m.value for m in ProjectionMode)
        raise ApiError(400, "malformed_mode",
                       f"mode must be one of {valid}, got {raw!r}") from None


def _convention_param(request: Request) -> DegreeConvention:
    raw = request.query_params.get("convention", "multiplicity")
    try:
        return DegreeConvention(raw)
    except ValueError:
        valid = ", ".join(c.value for c in DegreeConvention)
        raise ApiError(
            400, "malformed_convention",
            f"convention must be one of {valid}, got {raw!r}") from None


def _network_payload(net: AffiliationNetwork) -> dict:
    return {
        "window": {"from": net.window.start.isoformat(),
                   "to": net.window.end.isoformat()} if net.window else None,
        "m": net.m,
        "actors": sorted(net.actor_nodes),
        "categories": sorted(net.category_nodes),
        "edges": [
            {"actor": e.actor, "category": e.category,
             "polarity": e.polarity.value, "weight": e.weight,
             "count_raw": e.count_raw}
            for e in net.edges
        ],
        "node_count": net.node_count,
        "edge_count": net.edge_count,
    }


def create_app(dataset: Dataset, cache_size: int = 0,
               cors_origins: Optional[list[str]] = None) -> FastAPI:
    snapshot = Snapshot(dataset, cache_size=cache_size)
    app = FastAPI(title="claimnet", docs_url=None, redoc_url=None)
    if cors_origins is None:
        cors_origins = [o.strip() for o in
                        os.environ.get("CLAIMNET_CORS_ORIGINS", "*").split(",")]
    app.add_middleware(CORSMiddleware, allow_origins=cors_origins,
                       allow_methods=["GET"], allow_headers=["*"])

    @app.exception_handler(ApiError)
    async def _api_error(_, exc: ApiError) -> JSONResponse:
        return JSONResponse(
            status_code=exc.status,
            content={"error": {"code": exc.code, "message": exc.message}})

    @app.get("/health")
    def health() -> dict:
        first, last = snapshot.dataset.corpus_range
        return {"status": "ok",
                "records": len(snapshot.dataset.records),
                "observations": len(snapshot.observations),
                "corpus_range": {"from": first.isoformat(),
                                 "to": last.isoformat()}}

    @app.get("/actors")
    def actors() -> dict:
        rows = []
        for name in sorted(snapshot.counts.actor_counts):
            actor = snapshot.dataset.registry.get(name)
            rows.append({
                "name": name,
                "kind": actor.entity_kind.value if actor else None,
                "party": actor.party if actor else None,
                "observations": snapshot.counts.actor_counts[name],
            })
        return {"actors": rows, "count": len(rows)}

    @app.get("/categories")
    def categories() -> dict:
        rows = []
        for code, (pos, neg) in snapshot.counts.category_counts.items():
            entry = snapshot.dataset.codebook.get(code)
            rows.append({
                "code": code,
                "label": entry.label if entry else None,
                "major_class": (code // 100) * 100,
                "support": pos,
                "reject": neg,
                "observations": pos + neg,
            })
        return {"categories": rows, "count": len(rows)}

    @app.get("/claims")
    def claims(request: Request) -> dict:
        spec = _query_spec(snapshot, request)
        if spec.actor is not None and \
                not snapshot.dataset.registry.known(spec.actor) and \
                spec.actor not in snapshot.counts.actor_counts:
            raise ApiError(404, "unknown_actor",
                           f"unknown actor {spec.actor!r}")
        if spec.category is not None and \
                spec.category not in snapshot.dataset.codebook and \
                spec.category not in snapshot.counts.category_counts:
            raise ApiError(404, "unknown_category",
                           f"unknown category {spec.category}")
        rows = [
            {"record_id": o.record_id, "doc_id": o.doc_id,
             "date": o.claim_date.isoformat(), "actor": o.actor,
             "category": o.category,
             "label": snapshot.dataset.codebook.label(o.category),
             "polarity": o.polarity.value}
            for o in snapshot.observations
            if o.claim_date in spec.window
            and (spec.actor is None or o.actor == spec.actor)
            and (spec.category is None or o.category == spec.category)
        ]
        rows.sort(key=lambda r: (r["date"], r["record_id"], r["actor"],
                                 r["category"]))
        return {"claims": rows, "count": len(rows)}

    @app.get("/network")
    def network(request: Request) -> dict:
        spec = _query_spec(snapshot, request)
        return _network_payload(snapshot.affiliation(spec.window, spec.m))

    @app.get("/network/ego")
    def network_ego(request: Request) -> dict:
        node = request.query_params.get("node")
        if not node:
            raise ApiError(400, "missing_node", "node parameter is required")
        spec = _query_spec(snapshot, request)
        net = snapshot.affiliation(spec.window, spec.m)
        try:
            ego = ego_network(net, node)
        except NodeNotFound:
            raise ApiError(404, "unknown_node",
                           f"node {node!r} not in the sliced network") from None
        payload = _network_payload(ego)
        payload["ego"] = node
        return payload

    @app.get("/projection")
    def projection(request: Request) -> dict:
        spec = _query_spec(snapshot, request)
        net = snapshot.affiliation(spec.window, spec.m)
        proj = project(net, spec.side, spec.mode)
        return {
            "side": proj.side.value,
            "mode": proj.mode.value,
            "window": {"from": spec.window.start.isoformat(),
                       "to": spec.window.end.isoformat()},
            "m": proj.m,
            "nodes": list(proj.nodes),
            "edges": [{"source": e.u, "target": e.v, "weight": e.weight}
                      for e in proj.edges],
            "node_count": proj.node_count,
            "edge_count": proj.edge_count,
        }

    @app.get("/communities")
    def communities_endpoint(request: Request) -> dict:
        spec = _query_spec(snapshot, request)
        net = snapshot.affiliation(spec.window, spec.m)
        proj = project(net, spec.side, spec.mode)
        if proj.node_count == 0:
            return {"side": proj.side.value, "mode": proj.mode.value,
                    "communities": [], "assignment": {}, "modularity": 0.0}
        partition = communities(proj)
        return {
            "side": proj.side.value,
            "mode": proj.mode.value,
            "communities": partition.communities,
            "assignment": dict(sorted(partition.assignment.items())),
            "modularity": partition.modularity,
        }

    @app.get("/centrality")
    def centrality_endpoint(request: Request) -> dict:
        spec = _query_spec(snapshot, request)
        net = snapshot.affiliation(spec.window, spec.m)
        target = request.query_params.get("target", "affiliation")
        if target == "projection":
            graph = project(net, spec.side, spec.mode)
        elif target == "affiliation":
            graph = net
        else:
            raise ApiError(400, "malformed_target",
                           f"target must be affiliation or projection, "
                           f"got {target!r}")
        if graph.node_count == 0:
            return {"target": target, "convention": spec.convention.value,
                    "average_degree": 0.0, "nodes": []}
        report = centrality(graph, spec.convention)
        normalized = report.betweenness_normalized
        return {
            "target": target,
            "convention": spec.convention.value,
            "average_degree": report.average_degree,
            "nodes": [
                {"node": v, "degree": report.degree[v],
                 "betweenness": float(report.betweenness_exact[v]),
                 "betweenness_normalized": normalized[v]}
                for v in report.nodes
            ],
        }

    @app.get("/stats/monthly")
    def stats_monthly(request: Request) -> dict:
        raw = request.query_params.get("m")
        m = _parse_int(raw, "m") if raw is not None else 1
        if m < 1:
            raise ApiError(422, "invalid_m", f"m must be >= 1, got {m}")
        rows = monthly_network_stats(snapshot.dataset, m=m)
        return {"m": m, "months": [
            {"month": r.label, "claims": r.claims,
             "unique_categories": r.unique_categories,
             "unique_actors": r.unique_actors,
             "average_degree_simple": r.average_degree_simple,
             "average_degree_split": r.average_degree_split,
             "average_degree_multiplicity": r.average_degree_multiplicity}
            for r in rows
        ]}

    @app.get("/keywords")
    def keywords_endpoint(request: Request) -> dict:
        month = request.query_params.get("month")
        raw_min = request.query_params.get("min_freq")
        min_freq = _parse_int(raw_min, "min_freq") if raw_min is not None else 1
        if min_freq < 1:
            raise ApiError(422, "invalid_min_freq",
                           f"min_freq must be >= 1, got {min_freq}")
        raw_k = request.query_params.get("k")
        k = _parse_int(raw_k, "k") if raw_k is not None else 2
        if k < 1:
            raise ApiError(422, "invalid_k", f"k must be >= 1, got {k}")
        rankings = monthly_keyword_table(snapshot.dataset, k_per_passage=k,
                                         min_freq=min_freq)
        if month is not None:
            rankings = [r for r in rankings if r.month == month]
        return {"months": [
            {"month": r.month,
             "entries": [{"keyword": kw, "frequency": freq}
                         for kw, freq in r.entries]}
            for r in rankings
        ]}

    @app.get("/compare")
    def compare(request: Request) -> dict:
        params = request.query_params
        def _win(suffix: str) -> TimeWindow:
            start = _parse_date(params[f"from_{suffix}"], f"from_{suffix}") \
                if f"from_{suffix}" in params else None
            end = _parse_date(params[f"to_{suffix}"], f"to_{suffix}") \
                if f"to_{suffix}" in params else None
            return snapshot.window(start, end)
        raw_m = params.get("m")
        m = _parse_int(raw_m, "m") if raw_m is not None else DEFAULT_M
        if m < 1:
            raise ApiError(422, "invalid_m", f"m must be >= 1, got {m}")
        net_a = snapshot.affiliation(_win("a"), m)
        net_b = snapshot.affiliation(_win("b"), m)
        report = compare_networks(net_a, net_b)
        return {
            "m": m,
            "shared_nodes": sorted(report.shared_nodes),
            "exclusive_nodes_a": sorted(report.exclusive_nodes_a),
            "exclusive_nodes_b": sorted(report.exclusive_nodes_b),
            "shared_edge_count": len(report.shared_edges),
            "exclusive_edge_count_a": len(report.exclusive_edges_a),
            "exclusive_edge_count_b": len(report.exclusive_edges_b),
            "category_coverage": report.category_coverage,
            "components_a": report.components_a,
            "components_b": report.components_b,
        }

    return app


def app_from_env() -> FastAPI:
    """Build the app from CLAIMNET_* environment variables (uvicorn entry)."""
    from .cli import load_dataset_from_env

    return create_app(load_dataset_from_env())
