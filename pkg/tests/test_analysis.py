import random
from datetime import date
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from claimnet import (
    ActorMention,
    ClaimRecord,
    DegreeConvention,
    Polarity,
    ProjectedEdge,
    ProjectedNetwork,
    ProjectionMode,
    Side,
    TimeWindow,
    aggregate_window,
    betweenness_exact,
    build_affiliation,
    centrality,
    communities,
    compare_networks,
    connected_components,
    ego_network,
    modularity_exact,
    monthly_network_stats,
    unstack_all,
)
from claimnet.ingest import Dataset, IngestReport

from oracles import (
    all_partitions,
    exhaustive_betweenness,
    modularity_by_definition,
)

YEAR = TimeWindow(date(2015, 1, 1), date(2015, 12, 31))


def graph(edges, isolates=()):
    """ProjectedNetwork from a plain undirected edge list."""
    nodes = set(isolates)
    rows = []
    for entry in edges:
        u, v = entry[:2]
        w = entry[2] if len(entry) > 2 else 1
        a, b = min(u, v), max(u, v)
        nodes.update((a, b))
        rows.append(ProjectedEdge(a, b, w))
    return ProjectedNetwork(
        side=Side.ACTOR, mode=ProjectionMode.COMBINED,
        nodes=tuple(sorted(nodes)),
        edges=tuple(sorted(rows, key=lambda e: (e.u, e.v))))


def random_adjacency(rng, max_nodes=8):
    n = rng.randint(2, max_nodes)
    names = [f"n{i}" for i in range(n)]
    adjacency = {v: set() for v in names}
    p = rng.uniform(0.2, 0.7)
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                adjacency[names[i]].add(names[j])
                adjacency[names[j]].add(names[i])
    return adjacency


class TestBetweenness:
    def test_path_center(self):
        net = graph([("a", "b"), ("b", "c")])
        report = centrality(net)
        assert report.betweenness_exact == {
            "a": Fraction(0), "b": Fraction(1), "c": Fraction(0)}

    def test_star_center_counts_leaf_pairs(self):
        net = graph([("x", f"l{i}") for i in range(4)])
        report = centrality(net)
        assert report.betweenness_exact["x"] == Fraction(6)  # C(4,2)
        assert all(report.betweenness_exact[f"l{i}"] == 0 for i in range(4))

    def test_equal_length_paths_split_fractionally(self):
        # square a-b-c-d-a: opposite corners route half through each side
        net = graph([("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")])
        report = centrality(net)
        assert report.betweenness_exact["b"] == Fraction(1, 2)
        assert report.betweenness_exact["d"] == Fraction(1, 2)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2 ** 31))
    def test_matches_exhaustive_oracle(self, seed):
        adjacency = random_adjacency(random.Random(seed))
        assert betweenness_exact(adjacency) == exhaustive_betweenness(adjacency)

    def test_disconnected_graph(self):
        net = graph([("a", "b"), ("c", "d")])
        report = centrality(net)
        assert all(b == 0 for b in report.betweenness_exact.values())

    def test_empty_network_is_error(self):
        net = ProjectedNetwork(Side.ACTOR, ProjectionMode.COMBINED, (), ())
        with pytest.raises(ValueError, match="empty network"):
            centrality(net)

    def test_degree_one_tree_leaves_are_zero(self):
        net = graph([("r", "a"), ("r", "b"), ("a", "c"), ("a", "d")])
        report = centrality(net)
        for leaf in ("b", "c", "d"):
            assert report.betweenness_exact[leaf] == 0

    def test_normalized_column(self):
        net = graph([("a", "b"), ("b", "c")])
        report = centrality(net)
        assert report.betweenness_normalized["b"] == 1.0  # 1 / ((3-1)(3-2)/2)


class TestCentralityReport:
    def test_merkel_ego_average_degree(self, merkel_spring_records):
        observations = unstack_all(merkel_spring_records)
        net = build_affiliation(aggregate_window(observations, YEAR, 1),
                                YEAR, 1)
        ego = ego_network(net, "Angela Merkel")
        report = centrality(ego, DegreeConvention.MULTIPLICITY)
        assert report.average_degree == 2.0
        assert sum(report.degree.values()) == \
            2 * ego.edge_tally(DegreeConvention.MULTIPLICITY)

    @pytest.mark.parametrize("convention", list(DegreeConvention))
    def test_degree_sum_convention_consistent(self, figure1_records,
                                              convention):
        observations = unstack_all(figure1_records)
        net = build_affiliation(aggregate_window(observations, YEAR, 1),
                                YEAR, 1)
        report = centrality(net, convention)
        assert sum(report.degree.values()) == 2 * net.edge_tally(convention)
        assert report.average_degree == pytest.approx(
            2 * net.edge_tally(convention) / net.node_count)


class TestCommunities:
    def test_two_disjoint_triangles(self):
        net = graph([("a", "b"), ("b", "c"), ("a", "c"),
                     ("x", "y"), ("y", "z"), ("x", "z")])
        partition = communities(net)
        assert partition.communities == [["a", "b", "c"], ["x", "y", "z"]]
        assert partition.modularity_exact == Fraction(1, 2)

    def test_single_edge_merges(self):
        # oracle, by hand: Q(singletons) = -(1/2)^2 * 2 = -1/2;
        # Q({u,v}) = (2/2 - (2/2)^2) = 0; merging wins.
        net = graph([("u", "v")])
        assert modularity_exact(("u", "v"), [("u", "v", 1)],
                                {"u": 0, "v": 1}) == Fraction(-1, 2)
        assert modularity_exact(("u", "v"), [("u", "v", 1)],
                                {"u": 0, "v": 0}) == Fraction(0)
        partition = communities(net)
        assert partition.communities == [["u", "v"]]
        assert partition.modularity_exact == Fraction(0)

    def test_modularity_matches_definition_oracle(self):
        rng = random.Random(7)
        for _ in range(20):
            adjacency = random_adjacency(rng, max_nodes=7)
            edges = sorted({(min(u, v), max(u, v))
                            for u, nb in adjacency.items() for v in nb})
            net = graph([(u, v, rng.randint(1, 3)) for u, v in edges],
                        isolates=adjacency)
            partition = communities(net)
            oracle = modularity_by_definition(
                net.nodes, [(e.u, e.v, e.weight) for e in net.edges],
                partition.assignment)
            assert partition.modularity_exact == oracle

    def test_greedy_bounds_against_exhaustive_partitions(self):
        rng = random.Random(11)
        for _ in range(6):
            adjacency = random_adjacency(rng, max_nodes=6)
            edges = sorted({(min(u, v), max(u, v))
                            for u, nb in adjacency.items() for v in nb})
            if not edges:
                continue
            net = graph(edges, isolates=adjacency)
            nodes = list(net.nodes)
            weighted = [(e.u, e.v, e.weight) for e in net.edges]
            partition = communities(net)
            singletons = {v: i for i, v in enumerate(nodes)}
            one_block = {v: 0 for v in nodes}
            q = partition.modularity_exact
            assert q >= modularity_by_definition(nodes, weighted, singletons)
            assert q >= modularity_by_definition(nodes, weighted, one_block)
            best = max(
                modularity_by_definition(
                    nodes, weighted,
                    {v: i for i, block in enumerate(part) for v in block})
                for part in all_partitions(nodes))
            assert q <= best

    def test_every_node_assigned_exactly_once(self, figure1_records):
        from claimnet import project

        observations = unstack_all(figure1_records)
        net = build_affiliation(aggregate_window(observations, YEAR, 1),
                                YEAR, 1)
        proj = project(net, Side.CATEGORY, ProjectionMode.COMBINED)
        partition = communities(proj)
        assert sorted(partition.assignment) == sorted(proj.nodes)
        flattened = [n for block in partition.communities for n in block]
        assert sorted(flattened) == sorted(proj.nodes)

    def test_deterministic_under_tie(self):
        # two identical disconnected edges: merge order is tie-broken
        net = graph([("a", "b"), ("c", "d")])
        first = communities(net)
        second = communities(net)
        assert first.assignment == second.assignment
        assert first.communities == [["a", "b"], ["c", "d"]]

    def test_edgeless_network_all_singletons(self):
        net = ProjectedNetwork(Side.ACTOR, ProjectionMode.COMBINED,
                               ("a", "b"), ())
        partition = communities(net)
        assert partition.communities == [["a"], ["b"]]
        assert partition.modularity_exact == Fraction(0)

    def test_empty_network_is_error(self):
        net = ProjectedNetwork(Side.ACTOR, ProjectionMode.COMBINED, (), ())
        with pytest.raises(ValueError, match="empty network"):
            communities(net)


def _dataset(records, codebook, registry, year_range=True):
    records = sorted(records, key=lambda r: (r.claim_date, r.record_id))
    if year_range:
        span = (date(2015, 1, 1), date(2015, 12, 31))
    else:
        span = (records[0].claim_date, records[-1].claim_date)
    return Dataset(tuple(records), codebook, registry, span,
                   IngestReport(len(records), 0))


class TestMonthlyStats:
    def test_matching_graph_average_degree_one(self, codebook, registry):
        # k actors each make one distinct claim: perfect matching
        codes = [102, 105, 106, 109]
        records = [
            ClaimRecord(f"r{i}", "d", "t", date(2015, 6, 2 + i),
                        frozenset({code}),
                        (ActorMention(f"A{i}", f"A{i}"),), Polarity.SUPPORT)
            for i, code in enumerate(codes)
        ]
        rows = monthly_network_stats(
            _dataset(records, codebook, registry, year_range=False), m=1)
        assert len(rows) == 1
        row = rows[0]
        assert row.label == "2015-06"
        assert (row.claims, row.unique_categories, row.unique_actors) == \
            (4, 4, 4)
        for convention in DegreeConvention:
            assert row.average_degree(convention) == 1.0

    def test_month_rows_cover_corpus_range(self, figure1_records, codebook,
                                           registry):
        rows = monthly_network_stats(
            _dataset(figure1_records, codebook, registry), m=1)
        assert [r.label for r in rows] == \
            [f"2015-{m:02d}" for m in range(1, 13)]
        october = next(r for r in rows if r.label == "2015-10")
        assert october.claims == 4
        empty = next(r for r in rows if r.label == "2015-03")
        assert empty.claims == 0
        assert empty.average_degree_simple == 0.0


class TestCompareNetworks:
    def build(self, records, m=1):
        observations = unstack_all(records)
        return build_affiliation(aggregate_window(observations, YEAR, m),
                                 YEAR, m)

    def test_identity(self, figure1_records):
        net = self.build(figure1_records)
        report = compare_networks(net, net)
        assert report.category_coverage == 1.0
        assert report.exclusive_nodes_a == frozenset()
        assert report.exclusive_edges_b == frozenset()
        assert report.components_a == report.components_b

    def test_disjoint(self, figure1_records):
        other = [
            ClaimRecord("z1", "d", "t", date(2015, 7, 1), frozenset({504}),
                        (ActorMention("EU", "EU"),), Polarity.SUPPORT),
        ]
        report = compare_networks(self.build(figure1_records),
                                  self.build(other))
        assert report.category_coverage == 0.0
        assert report.shared_nodes == frozenset()
        assert report.shared_edges == frozenset()

    def test_antisymmetric_exclusives(self, figure1_records,
                                      merkel_spring_records):
        net_a = self.build(figure1_records + merkel_spring_records[:2])
        net_b = self.build(merkel_spring_records)
        forward = compare_networks(net_a, net_b)
        backward = compare_networks(net_b, net_a)
        assert forward.exclusive_nodes_a == backward.exclusive_nodes_b
        assert forward.exclusive_edges_a == backward.exclusive_edges_b
        assert forward.shared_nodes == backward.shared_nodes

    def test_paper_style_coverage_direction(self):
        # coverage of net_a's categories by net_b: 74-of-95 style ratio
        recs_a = [
            ClaimRecord(f"a{i}", "d", "t", date(2015, 3, 1 + i),
                        frozenset({101 + i}),
                        (ActorMention("A", "A"),), Polarity.SUPPORT)
            for i in range(4)
        ]
        recs_b = recs_a[:3]
        report = compare_networks(self.build(recs_a), self.build(recs_b))
        assert report.category_coverage == pytest.approx(3 / 4)

    def test_subsample_monte_carlo(self):
        # chain corpus: actor i links categories i and i+1, so the full
        # m=1 network is one connected component
        chain = []
        for i in range(40):
            code = 101 + i
            chain.append(ClaimRecord(
                f"c{i}", "d", "t", date(2015, 1, 1 + i % 28),
                frozenset({code, code + 1}),
                (ActorMention(f"A{i:02d}", f"A{i:02d}"),), Polarity.SUPPORT))
        full = self.build(chain)
        assert connected_components(full.adjacency()) == 1
        ok = 0
        trials = 20
        for seed in range(trials):
            rng = random.Random(seed)
            sample = [r for r in chain if rng.random() < 0.5]
            sub = self.build(sample)
            report = compare_networks(full, sub)
            assert 0.0 <= report.category_coverage <= 1.0
            if report.components_b >= report.components_a:
                ok += 1
        assert ok >= 0.9 * trials
