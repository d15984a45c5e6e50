"""Shared brute-force oracles and exhaustive generators for the test suite.

Everything here is deliberately independent of the package internals it
checks: articulation points by vertex deletion, distance-hereditariness by
the literal distance-preservation definition, trees by Prufer sequences,
cographs by union/join composition.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product

from stablespan.graphs import WeightedGraph


def bfs_distances(adj: dict[int, set[int]], start: int) -> dict[int, int]:
    dist = {start: 0}
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for u in adj[v]:
                if u not in dist:
                    dist[u] = dist[v] + 1
                    nxt.append(u)
        frontier = nxt
    return dist


def unweighted_adj(g: WeightedGraph, vertices: set[int] | None = None) -> dict[int, set[int]]:
    vertices = set(range(g.n)) if vertices is None else vertices
    adj: dict[int, set[int]] = {v: set() for v in vertices}
    for (u, v) in g.edges:
        if u in vertices and v in vertices:
            adj[u].add(v)
            adj[v].add(u)
    return adj


def is_connected_set(g: WeightedGraph, vertices: set[int]) -> bool:
    adj = unweighted_adj(g, vertices)
    start = next(iter(vertices))
    return len(bfs_distances(adj, start)) == len(vertices)


def brute_articulation_points(g: WeightedGraph) -> set[int]:
    """v is an articulation point iff deleting it disconnects the graph."""
    if g.n <= 2:
        return set()
    out = set()
    for v in range(g.n):
        rest = set(range(g.n)) - {v}
        if not is_connected_set(g, rest):
            out.add(v)
    return out


def brute_distance_hereditary(g: WeightedGraph) -> bool:
    """Definition-level check: every connected induced subgraph preserves
    all pairwise distances of the full graph."""
    full = unweighted_adj(g)
    base = {v: bfs_distances(full, v) for v in range(g.n)}
    for size in range(2, g.n + 1):
        for subset in combinations(range(g.n), size):
            vertices = set(subset)
            if not is_connected_set(g, vertices):
                continue
            adj = unweighted_adj(g, vertices)
            for v in subset:
                dist = bfs_distances(adj, v)
                for u in subset:
                    if dist[u] != base[v][u]:
                        return False
    return True


def prufer_to_edges(seq: tuple[int, ...], n: int) -> list[tuple[int, int]]:
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    leaves = sorted(v for v in range(n) if degree[v] == 1)
    for v in seq:
        leaf = leaves.pop(0)
        edges.append((min(leaf, v), max(leaf, v)))
        degree[v] -= 1
        if degree[v] == 1:
            # insert keeping the leaf list sorted
            lo = 0
            while lo < len(leaves) and leaves[lo] < v:
                lo += 1
            leaves.insert(lo, v)
    a, b = leaves
    edges.append((min(a, b), max(a, b)))
    return edges


def all_labeled_trees(n: int):
    """Every labeled tree on n vertices, via Prufer sequences."""
    if n == 1:
        yield WeightedGraph(1, {})
        return
    if n == 2:
        yield WeightedGraph.from_edges(2, [(0, 1, 1)])
        return
    for seq in product(range(n), repeat=n - 2):
        edges = prufer_to_edges(seq, n)
        yield WeightedGraph(n, {e: Fraction(1) for e in edges})


def _canonical_edges(n: int, edges: frozenset[tuple[int, int]]) -> tuple:
    best = None
    for perm in permutations(range(n)):
        mapped = tuple(
            sorted((min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in edges)
        )
        if best is None or mapped < best:
            best = mapped
    return best


def connected_cographs(n: int) -> list[WeightedGraph]:
    """One representative per isomorphism class of connected cographs."""

    def dedupe(items: list[frozenset]) -> list[frozenset]:
        seen = {}
        for edges in items:
            seen.setdefault(_canonical_edges_size(edges), edges)
        return list(seen.values())

    size_of = {}

    def _canonical_edges_size(edges: frozenset) -> tuple:
        return _canonical_edges(size_of[edges], edges)

    def partitions(total: int, max_part: int):
        if total == 0:
            yield ()
            return
        for part in range(min(total, max_part), 0, -1):
            for rest in partitions(total - part, part):
                yield (part,) + rest

    def offset(edges: frozenset, delta: int) -> frozenset:
        return frozenset((u + delta, v + delta) for u, v in edges)

    connected_memo: dict[int, list[frozenset]] = {}
    part_memo: dict[int, list[frozenset]] = {}

    def connected_sets(k: int) -> list[frozenset]:
        if k in connected_memo:
            return connected_memo[k]
        if k == 1:
            e = frozenset()
            size_of[e] = 1
            connected_memo[1] = [e]
            return connected_memo[1]
        out = []
        for parts in partitions(k, k - 1):
            if len(parts) < 2:
                continue
            for choice in product(*(join_children(p) for p in parts)):
                edges = set()
                shift = 0
                spans = []
                for part, child in zip(parts, choice):
                    edges |= offset(child, shift)
                    spans.append((shift, shift + part))
                    shift += part
                for (a0, a1), (b0, b1) in combinations(spans, 2):
                    for u in range(a0, a1):
                        for v in range(b0, b1):
                            edges.add((min(u, v), max(u, v)))
                e = frozenset(edges)
                size_of[e] = k
                out.append(e)
        connected_memo[k] = dedupe(out)
        return connected_memo[k]

    def join_children(k: int) -> list[frozenset]:
        # children of a join: single vertices or disconnected cographs
        if k in part_memo:
            return part_memo[k]
        if k == 1:
            part_memo[1] = connected_sets(1)
            return part_memo[1]
        out = []
        for parts in partitions(k, k - 1):
            if len(parts) < 2:
                continue
            for choice in product(*(connected_sets(p) for p in parts)):
                edges = set()
                shift = 0
                for part, child in zip(parts, choice):
                    edges |= offset(child, shift)
                    shift += part
                e = frozenset(edges)
                size_of[e] = k
                out.append(e)
        part_memo[k] = dedupe(out)
        return part_memo[k]

    return [
        WeightedGraph(n, {e: Fraction(1) for e in edges})
        for edges in connected_sets(n)
    ]
