"""Independent oracles used to freeze expected values.

Everything here is deliberately naive: exhaustive path enumeration,
definition-level modularity, brute-force set partitions and a double-loop
projection. None of it shares code with the implementation under test.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction


def enumerate_shortest_paths(adjacency: dict[str, set[str]], s: str,
                             t: str) -> list[list[str]]:
    """All shortest simple paths from s to t by iterative deepening."""
    for length in range(1, len(adjacency)):
        found: list[list[str]] = []

        def extend(path: list[str]) -> None:
            v = path[-1]
            if len(path) - 1 == length:
                if v == t:
                    found.append(list(path))
                return
            for w in adjacency[v]:
                if w not in path:
                    path.append(w)
                    extend(path)
                    path.pop()

        extend([s])
        if found:
            return found
    return []


def exhaustive_betweenness(adjacency: dict[str, set[str]]) -> dict[str, Fraction]:
    """Betweenness by enumerating every shortest path of every pair."""
    nodes = sorted(adjacency)
    scores = {v: Fraction(0) for v in nodes}
    for i, s in enumerate(nodes):
        for t in nodes[i + 1:]:
            paths = enumerate_shortest_paths(adjacency, s, t)
            if not paths:
                continue
            share = Fraction(1, len(paths))
            for path in paths:
                for v in path[1:-1]:
                    scores[v] += share
    return scores


def modularity_by_definition(nodes, edges, assignment) -> Fraction:
    """Q = (1/2W) sum_ij [A_ij - k_i k_j / 2W] delta(c_i, c_j)."""
    weight: dict[tuple, Fraction] = defaultdict(Fraction)
    strength = {v: Fraction(0) for v in nodes}
    two_w = Fraction(0)
    for u, v, w in edges:
        weight[(u, v)] += w
        weight[(v, u)] += w
        strength[u] += w
        strength[v] += w
        two_w += 2 * w
    if two_w == 0:
        return Fraction(0)
    q = Fraction(0)
    for u in nodes:
        for v in nodes:
            if assignment[u] == assignment[v]:
                q += weight[(u, v)] - strength[u] * strength[v] / two_w
    return q / two_w


def all_partitions(items: list):
    """Every set partition of the items (Bell-number many)."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in all_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [part[i] + [first]] + part[i + 1:]
        yield part + [[first]]


def naive_actor_projection(edges, mode: str) -> dict[tuple[str, str], int]:
    """Double-loop actor projection over (actor, category, polarity) edges.

    mode is one of pos/neg/conflict/combined; returns weights per sorted
    actor pair.
    """
    stance: dict[str, dict[int, set[str]]] = defaultdict(lambda: defaultdict(set))
    for actor, category, polarity in edges:
        stance[actor][category].add(polarity)
    actors = sorted(stance)
    weights: dict[tuple[str, str], int] = {}
    for i, u in enumerate(actors):
        for v in actors[i + 1:]:
            shared = 0
            for category in set(stance[u]) & set(stance[v]):
                pu, pv = stance[u][category], stance[v][category]
                if mode == "combined":
                    ok = True
                elif mode == "pos":
                    ok = "+" in pu and "+" in pv
                elif mode == "neg":
                    ok = "-" in pu and "-" in pv
                else:
                    ok = ("+" in pu and "-" in pv) or ("-" in pu and "+" in pv)
                if ok:
                    shared += 1
            if shared:
                weights[(u, v)] = shared
    return weights
