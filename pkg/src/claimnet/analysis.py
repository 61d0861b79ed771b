"""Graph metrics: degree, betweenness centrality, greedy modularity
communities, monthly network statistics and network comparison.

Betweenness and modularity are computed in exact rational arithmetic so
results are reproducible bit-for-bit across platforms; reports expose
floats alongside the exact values.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from datetime import date, timedelta
from fractions import Fraction
from typing import Iterable, Optional, Union

from .aggregate import TimeWindow, aggregate_window, month_span, unstack_all
from .ingest import Dataset
from .network import (
    AffiliationNetwork,
    DegreeConvention,
    ProjectedNetwork,
    build_affiliation,
)

Network = Union[AffiliationNetwork, ProjectedNetwork]


def betweenness_exact(adjacency: dict[str, set[str]]) -> dict[str, Fraction]:
    """Unnormalized betweenness by shortest-path accumulation (Brandes).

    The graph is undirected and unweighted; endpoints are excluded and
    each unordered pair contributes fractionally across its equal-length
    shortest paths. Exact over Fractions.
    """
    centrality = {v: Fraction(0) for v in adjacency}
    for source in adjacency:
        stack: list[str] = []
        predecessors: dict[str, list[str]] = {v: [] for v in adjacency}
        sigma = {v: 0 for v in adjacency}
        distance = {v: -1 for v in adjacency}
        sigma[source] = 1
        distance[source] = 0
        queue = deque([source])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in adjacency[v]:
                if distance[w] < 0:
                    distance[w] = distance[v] + 1
                    queue.append(w)
                if distance[w] == distance[v] + 1:
                    sigma[w] += sigma[v]
                    predecessors[w].append(v)
        delta = {v: Fraction(0) for v in adjacency}
        while stack:
            w = stack.pop()
            for v in predecessors[w]:
                delta[v] += Fraction(sigma[v], sigma[w]) * (1 + delta[w])
            if w != source:
                centrality[w] += delta[w]
    # each unordered pair was accumulated from both endpoints
    return {v: c / 2 for v, c in centrality.items()}


@dataclass(frozen=True)
class CentralityReport:
    nodes: tuple[str, ...]
    degree: dict[str, Union[int, float]]
    betweenness_exact: dict[str, Fraction]
    average_degree: float
    convention: DegreeConvention

    @property
    def betweenness(self) -> dict[str, float]:
        return {v: float(b) for v, b in self.betweenness_exact.items()}

    @property
    def betweenness_normalized(self) -> dict[str, float]:
        n = len(self.nodes)
        pairs = (n - 1) * (n - 2) / 2
        if pairs <= 0:
            return {v: 0.0 for v in self.nodes}
        return {v: float(b) / pairs for v, b in self.betweenness_exact.items()}


def centrality(net: Network,
               convention: DegreeConvention = DegreeConvention.MULTIPLICITY
               ) -> CentralityReport:
    """Degree and exact betweenness for every node of a network."""
    if net.node_count == 0:
        raise ValueError("empty network")
    adjacency = net.adjacency()
    return CentralityReport(
        nodes=tuple(sorted(adjacency)),
        degree=net.degrees(convention),
        betweenness_exact=betweenness_exact(adjacency),
        average_degree=net.average_degree(convention),
        convention=convention,
    )


def modularity_exact(nodes: Iterable[str],
                     edges: Iterable[tuple[str, str, int]],
                     assignment: dict[str, int]) -> Fraction:
    """Weighted Newman modularity Q of a community assignment.

    Q = (1/2W) * sum_ij [A_ij - k_i k_j / 2W] * [c_i == c_j], computed
    per community; an edgeless graph has Q = 0 by convention.
    """
    two_w = Fraction(0)
    internal: dict[int, Fraction] = defaultdict(Fraction)
    strength: dict[str, Fraction] = {v: Fraction(0) for v in nodes}
    for u, v, w in edges:
        two_w += 2 * w
        strength[u] += w
        strength[v] += w
        if assignment[u] == assignment[v]:
            internal[assignment[u]] += 2 * w
    if two_w == 0:
        return Fraction(0)
    totals: dict[int, Fraction] = defaultdict(Fraction)
    for v, k in strength.items():
        totals[assignment[v]] += k
    q = Fraction(0)
    for community in set(assignment.values()):
        q += internal[community] / two_w - (totals[community] / two_w) ** 2
    return q


@dataclass(frozen=True)
class Partition:
    assignment: dict[str, int]
    modularity_exact: Fraction

    @property
    def modularity(self) -> float:
        return float(self.modularity_exact)

    @property
    def communities(self) -> list[list[str]]:
        groups: dict[int, list[str]] = defaultdict(list)
        for node, cid in self.assignment.items():
            groups[cid].append(node)
        return [sorted(groups[cid]) for cid in sorted(groups)]


def communities(net: ProjectedNetwork) -> Partition:
    """Agglomerative greedy modularity merging (CNM-style).

    Every node starts in its own community; the connected pair with the
    largest positive modularity gain is merged until no merge improves Q.
    Gain ties break on the lexicographically smallest community-pair
    label, a community's label being its smallest member node.
    """
    if net.node_count == 0:
        raise ValueError("empty network")

    nodes = list(net.nodes)
    edge_list = [(e.u, e.v, e.weight) for e in net.edges]
    two_w = Fraction(2 * sum(w for _, _, w in edge_list))

    comm_of = {v: i for i, v in enumerate(nodes)}
    members: dict[int, set[str]] = {i: {v} for i, v in enumerate(nodes)}
    label: dict[int, str] = {i: v for i, v in enumerate(nodes)}
    if two_w == 0:
        assignment = _renumber(comm_of, label)
        return Partition(assignment, modularity_exact(nodes, edge_list, assignment))

    # between[a][b]: total edge weight between communities a and b
    between: dict[int, dict[int, Fraction]] = {i: {} for i in members}
    totals: dict[int, Fraction] = {i: Fraction(0) for i in members}
    for u, v, w in edge_list:
        a, b = comm_of[u], comm_of[v]
        totals[a] += w
        totals[b] += w
        if a != b:
            between[a][b] = between[a].get(b, Fraction(0)) + w
            between[b][a] = between[b].get(a, Fraction(0)) + w

    while True:
        best: Optional[tuple[Fraction, tuple[str, str], int, int]] = None
        for a in sorted(between, key=lambda c: label[c]):
            for b in sorted(between[a], key=lambda c: label[c]):
                if label[a] >= label[b]:
                    continue
                gain = 2 * (between[a][b] / two_w
                            - (totals[a] / two_w) * (totals[b] / two_w))
                pair = (label[a], label[b])
                if best is None or gain > best[0] or (gain == best[0] and pair < best[1]):
                    best = (gain, pair, a, b)
        if best is None or best[0] <= 0:
            break
        _, _, a, b = best
        members[a] |= members.pop(b)
        totals[a] += totals.pop(b)
        label[a] = min(label[a], label[b])
        row_b = between.pop(b)
        between[a].pop(b, None)
        for c, w in row_b.items():
            if c == a:
                continue
            between[c].pop(b, None)
            between[a][c] = between[a].get(c, Fraction(0)) + w
            between[c][a] = between[a][c]
        for v in members[a]:
            comm_of[v] = a

    assignment = _renumber(comm_of, label)
    return Partition(assignment, modularity_exact(nodes, edge_list, assignment))


def _renumber(comm_of: dict[str, int], label: dict[int, str]) -> dict[str, int]:
    order = {old: i for i, old in enumerate(
        sorted(set(comm_of.values()), key=lambda c: label[c]))}
    return {v: order[c] for v, c in sorted(comm_of.items())}


@dataclass(frozen=True)
class MonthStats:
    year: int
    month: int
    claims: int
    unique_categories: int
    unique_actors: int
    average_degree_simple: float
    average_degree_split: float
    average_degree_multiplicity: float

    @property
    def label(self) -> str:
        return f"{self.year:04d}-{self.month:02d}"

    def average_degree(self, convention: DegreeConvention) -> float:
        return {
            DegreeConvention.SIMPLE: self.average_degree_simple,
            DegreeConvention.SPLIT: self.average_degree_split,
            DegreeConvention.MULTIPLICITY: self.average_degree_multiplicity,
        }[convention]


def monthly_network_stats(dataset: Dataset, m: int = 1) -> list[MonthStats]:
    """Per-month claim counts and average degree of the month's m-slice
    affiliation network, reported under all degree conventions."""
    observations = unstack_all(dataset.records)
    if not observations:
        return []
    first, last = dataset.corpus_range
    rows = []
    for year, month in month_span(first, last):
        start = _month_start(year, month)
        end = _month_end(year, month)
        window = TimeWindow(start, end)
        month_obs = [o for o in observations if o.claim_date in window]
        net = build_affiliation(aggregate_window(month_obs, window, m),
                                window=window, m=m)
        rows.append(MonthStats(
            year=year,
            month=month,
            claims=len(month_obs),
            unique_categories=len({o.category for o in month_obs}),
            unique_actors=len({o.actor for o in month_obs}),
            average_degree_simple=net.average_degree(DegreeConvention.SIMPLE),
            average_degree_split=net.average_degree(DegreeConvention.SPLIT),
            average_degree_multiplicity=net.average_degree(
                DegreeConvention.MULTIPLICITY),
        ))
    return rows


def _month_start(year: int, month: int) -> date:
    return date(year, month, 1)


def _month_end(year: int, month: int) -> date:
    if month == 12:
        return date(year, 12, 31)
    return date(year, month + 1, 1) - timedelta(days=1)


def connected_components(adjacency: dict[str, set[str]]) -> int:
    seen: set[str] = set()
    count = 0
    for start in adjacency:
        if start in seen:
            continue
        count += 1
        queue = deque([start])
        seen.add(start)
        while queue:
            v = queue.popleft()
            for w in adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return count


def _node_keys(net: Network) -> frozenset[str]:
    return frozenset(net.adjacency())


def _edge_keys(net: Network) -> frozenset[tuple]:
    if isinstance(net, AffiliationNetwork):
        return frozenset((e.actor, e.category, e.polarity.value)
                         for e in net.edges)
    return frozenset((e.u, e.v) for e in net.edges)


def _category_nodes(net: Network) -> frozenset[str]:
    if isinstance(net, AffiliationNetwork):
        return frozenset(str(c) for c in net.category_nodes)
    return frozenset(net.nodes)


@dataclass(frozen=True)
class ComparisonReport:
    shared_nodes: frozenset[str]
    exclusive_nodes_a: frozenset[str]
    exclusive_nodes_b: frozenset[str]
    shared_edges: frozenset[tuple]
    exclusive_edges_a: frozenset[tuple]
    exclusive_edges_b: frozenset[tuple]
    category_coverage: float
    components_a: int
    components_b: int


def compare_networks(net_a: Network, net_b: Network) -> ComparisonReport:
    """Shared and exclusive structure of two networks over the same node
    identity space.

    category_coverage is the fraction of net_a's category nodes also
    present in net_b (over all nodes for actor-side projections); an
    empty net_a is vacuously fully covered.
    """
    nodes_a, nodes_b = _node_keys(net_a), _node_keys(net_b)
    edges_a, edges_b = _edge_keys(net_a), _edge_keys(net_b)
    cats_a, cats_b = _category_nodes(net_a), _category_nodes(net_b)
    coverage = len(cats_a & cats_b) / len(cats_a) if cats_a else 1.0
    return ComparisonReport(
        shared_nodes=nodes_a & nodes_b,
        exclusive_nodes_a=nodes_a - nodes_b,
        exclusive_nodes_b=nodes_b - nodes_a,
        shared_edges=edges_a & edges_b,
        exclusive_edges_a=edges_a - edges_b,
        exclusive_edges_b=edges_b - edges_a,
        category_coverage=coverage,
        components_a=connected_components(net_a.adjacency()),
        components_b=connected_components(net_b.adjacency()),
    )
