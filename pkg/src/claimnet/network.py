"""Bipartite affiliation networks and one-mode projections.

The affiliation network links actors to claim categories with signed,
day-count-weighted edges. Projections connect same-side nodes that share
opposite-side neighbours, optionally sorted by polarity into positive
congruence, negative congruence and conflict networks.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Union

from .aggregate import EdgeCount, TimeWindow
from .model import Polarity


class Side(Enum):
    ACTOR = "actor"
    CATEGORY = "category"


class ProjectionMode(Enum):
    POSITIVE_CONGRUENCE = "positive_congruence"
    NEGATIVE_CONGRUENCE = "negative_congruence"
    CONFLICT = "conflict"
    COMBINED = "combined"


class DegreeConvention(Enum):
    """How parallel polarity edges and weights enter degree counts.

    SIMPLE collapses parallel edges to one adjacency, SPLIT counts each
    polarity edge separately, MULTIPLICITY counts edge weights as
    multiplicities. MULTIPLICITY is the default reporting convention.
    """

    SIMPLE = "simple"
    SPLIT = "split"
    MULTIPLICITY = "multiplicity"


class NodeNotFound(KeyError):
    def __init__(self, node: str) -> None:
        super().__init__(node)
        self.node = node

    def __str__(self) -> str:
        return f"node {self.node!r} not in network"


@dataclass(frozen=True)
class AffiliationEdge:
    actor: str
    category: int
    polarity: Polarity
    weight: int
    count_raw: int


@dataclass(frozen=True)
class AffiliationNetwork:
    """Bipartite actor/category network; nodes are exactly the endpoints
    of surviving edges, so isolates never occur."""

    actor_nodes: frozenset[str]
    category_nodes: frozenset[int]
    edges: tuple[AffiliationEdge, ...]
    window: Optional[TimeWindow] = None
    m: int = 1

    @property
    def node_count(self) -> int:
        return len(self.actor_nodes) + len(self.category_nodes)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def pair_count(self) -> int:
        return len({(e.actor, e.category) for e in self.edges})

    @property
    def total_weight(self) -> int:
        return sum(e.weight for e in self.edges)

    def is_empty(self) -> bool:
        return not self.edges

    def edge_tally(self, convention: DegreeConvention) -> int:
        if convention is DegreeConvention.SIMPLE:
            return self.pair_count
        if convention is DegreeConvention.SPLIT:
            return self.edge_count
        return self.total_weight

    def degrees(self, convention: DegreeConvention = DegreeConvention.MULTIPLICITY
                ) -> dict[str, Union[int, float]]:
        out: dict[str, int] = defaultdict(int)
        for name in self.actor_nodes:
            out[_actor_key(name)] = 0
        for code in self.category_nodes:
            out[_category_key(code)] = 0
        seen_pairs: set[tuple[str, int]] = set()
        for edge in self.edges:
            if convention is DegreeConvention.SIMPLE:
                if (edge.actor, edge.category) in seen_pairs:
                    continue
                seen_pairs.add((edge.actor, edge.category))
                inc = 1
            elif convention is DegreeConvention.SPLIT:
                inc = 1
            else:
                inc = edge.weight
            out[_actor_key(edge.actor)] += inc
            out[_category_key(edge.category)] += inc
        return dict(out)

    def average_degree(self, convention: DegreeConvention = DegreeConvention.MULTIPLICITY
                       ) -> float:
        if self.node_count == 0:
            return 0.0
        return 2 * self.edge_tally(convention) / self.node_count

    def adjacency(self) -> dict[str, set[str]]:
        """Simple undirected adjacency over namespaced node keys (parallel
        polarity edges collapse)."""
        adj: dict[str, set[str]] = {}
        for name in self.actor_nodes:
            adj[_actor_key(name)] = set()
        for code in self.category_nodes:
            adj[_category_key(code)] = set()
        for edge in self.edges:
            a, c = _actor_key(edge.actor), _category_key(edge.category)
            adj[a].add(c)
            adj[c].add(a)
        return adj


def _actor_key(name: str) -> str:
    return f"actor:{name}"


def _category_key(code: int) -> str:
    return f"category:{code}"


def node_key(side: Side, value) -> str:
    return _actor_key(value) if side is Side.ACTOR else _category_key(value)


def split_node_key(key: str) -> tuple[Side, str]:
    kind, _, value = key.partition(":")
    return (Side.ACTOR if kind == "actor" else Side.CATEGORY), value


def build_affiliation(edge_counts: Iterable[EdgeCount],
                      window: Optional[TimeWindow] = None,
                      m: int = 1) -> AffiliationNetwork:
    """Assemble the bipartite network from m-sliced edge counts."""
    edges = tuple(sorted(
        (AffiliationEdge(ec.actor, ec.category, ec.polarity,
                         weight=ec.count_days, count_raw=ec.count_raw)
         for ec in edge_counts),
        key=lambda e: (e.actor, e.category, e.polarity.value)))
    return AffiliationNetwork(
        actor_nodes=frozenset(e.actor for e in edges),
        category_nodes=frozenset(e.category for e in edges),
        edges=edges,
        window=window,
        m=m,
    )


def ego_network(net: AffiliationNetwork, node: Union[str, int]) -> AffiliationNetwork:
    """Subnetwork of one node, its neighbours and its incident edges.

    ``node`` is an actor name or a category code; unknown nodes raise
    NodeNotFound (isolates are pruned at build time, so they are unknown).
    """
    if isinstance(node, str) and node in net.actor_nodes:
        edges = tuple(e for e in net.edges if e.actor == node)
    else:
        code = _coerce_category(node)
        if code is None or code not in net.category_nodes:
            raise NodeNotFound(str(node))
        edges = tuple(e for e in net.edges if e.category == code)
    return AffiliationNetwork(
        actor_nodes=frozenset(e.actor for e in edges),
        category_nodes=frozenset(e.category for e in edges),
        edges=edges,
        window=net.window,
        m=net.m,
    )


def _coerce_category(node) -> Optional[int]:
    if isinstance(node, int):
        return node
    try:
        return int(str(node))
    except ValueError:
        return None


@dataclass(frozen=True)
class ProjectedEdge:
    u: str
    v: str
    weight: int


@dataclass(frozen=True)
class ProjectedNetwork:
    """One-mode co-occurrence network; undirected, no self-loops.

    Edge weights count shared opposite-side nodes satisfying the mode
    predicate. Nodes without qualifying partners stay as isolates.
    """

    side: Side
    mode: ProjectionMode
    nodes: tuple[str, ...]
    edges: tuple[ProjectedEdge, ...]
    window: Optional[TimeWindow] = None
    m: int = 1

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def total_weight(self) -> int:
        return sum(e.weight for e in self.edges)

    def is_empty(self) -> bool:
        return not self.nodes

    def weight(self, u: str, v: str) -> int:
        a, b = (u, v) if u <= v else (v, u)
        for edge in self.edges:
            if edge.u == a and edge.v == b:
                return edge.weight
        return 0

    def adjacency(self) -> dict[str, set[str]]:
        adj: dict[str, set[str]] = {n: set() for n in self.nodes}
        for edge in self.edges:
            adj[edge.u].add(edge.v)
            adj[edge.v].add(edge.u)
        return adj

    def weighted_adjacency(self) -> dict[str, dict[str, int]]:
        adj: dict[str, dict[str, int]] = {n: {} for n in self.nodes}
        for edge in self.edges:
            adj[edge.u][edge.v] = edge.weight
            adj[edge.v][edge.u] = edge.weight
        return adj

    def degrees(self, convention: DegreeConvention = DegreeConvention.MULTIPLICITY
                ) -> dict[str, Union[int, float]]:
        out: dict[str, int] = {n: 0 for n in self.nodes}
        for edge in self.edges:
            inc = edge.weight if convention is DegreeConvention.MULTIPLICITY else 1
            out[edge.u] += inc
            out[edge.v] += inc
        return out

    def edge_tally(self, convention: DegreeConvention) -> int:
        if convention is DegreeConvention.MULTIPLICITY:
            return self.total_weight
        return self.edge_count

    def average_degree(self, convention: DegreeConvention = DegreeConvention.MULTIPLICITY
                       ) -> float:
        if not self.nodes:
            return 0.0
        return 2 * self.edge_tally(convention) / len(self.nodes)


def _mode_matches(mode: ProjectionMode, pols_u: set[Polarity],
                  pols_v: set[Polarity]) -> bool:
    if mode is ProjectionMode.COMBINED:
        return True
    if mode is ProjectionMode.POSITIVE_CONGRUENCE:
        return Polarity.SUPPORT in pols_u and Polarity.SUPPORT in pols_v
    if mode is ProjectionMode.NEGATIVE_CONGRUENCE:
        return Polarity.REJECT in pols_u and Polarity.REJECT in pols_v
    return ((Polarity.SUPPORT in pols_u and Polarity.REJECT in pols_v)
            or (Polarity.REJECT in pols_u and Polarity.SUPPORT in pols_v))


def project(net: AffiliationNetwork, side: Side,
            mode: ProjectionMode = ProjectionMode.COMBINED) -> ProjectedNetwork:
    """One-mode projection: link same-side nodes per shared opposite-side
    node whose polarity pattern satisfies the mode predicate; weight is the
    number of such shared nodes."""
    # polarity sets per (own-side node, opposite-side node)
    stances: dict[str, dict[str, set[Polarity]]] = defaultdict(
        lambda: defaultdict(set))
    if side is Side.ACTOR:
        own_nodes = sorted(net.actor_nodes)
        for edge in net.edges:
            stances[str(edge.category)][edge.actor].add(edge.polarity)
    else:
        own_nodes = sorted(str(c) for c in net.category_nodes)
        for edge in net.edges:
            stances[edge.actor][str(edge.category)].add(edge.polarity)

    weights: dict[tuple[str, str], int] = defaultdict(int)
    for shared, holders in stances.items():
        names = sorted(holders)
        for i, u in enumerate(names):
            for v in names[i + 1:]:
                if _mode_matches(mode, holders[u], holders[v]):
                    weights[(u, v)] += 1

    edges = tuple(ProjectedEdge(u, v, w)
                  for (u, v), w in sorted(weights.items()))
    return ProjectedNetwork(side=side, mode=mode,
                            nodes=tuple(own_nodes), edges=edges,
                            window=net.window, m=net.m)
