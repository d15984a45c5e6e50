"""Cut-rank over the rationals and rank-width-1 decompositions.

The cut-rank of a vertex set A is the rank of the weighted adjacency
submatrix between A and its complement, computed exactly over Q.  Accepted
graphs admit a decomposition tree all of whose edge cuts have rank 1; the
tree is built by structural induction along the construction trace (each
added vertex becomes a cherry beside the vertex it came from).  For small n
an exhaustive enumerator of all cubic trees provides the converse oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import InvalidSubset, LeafMismatch, SizeCapExceeded
from .graphs import WeightedGraph
from .recognition import (
    ReductionTrace,
    RemovePendant,
    RemoveTwin,
    apply_construction_step,
    new_construction_state,
)

TreeEdge = tuple[int, int]


@dataclass(frozen=True)
class DecompositionTree:
    """Unrooted tree whose leaves are the graph vertices; internal degree 3.

    `leaves` maps leaf node id -> graph vertex.  A 1-vertex graph gets the
    degenerate single-node tree; a 2-vertex graph two leaves and one edge.
    """

    leaves: dict[int, int]
    edges: tuple[TreeEdge, ...]

    def nodes(self) -> set[int]:
        out = set(self.leaves)
        for a, b in self.edges:
            out.add(a)
            out.add(b)
        return out

    def neighbors(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.nodes()}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def validate(self) -> None:
        adj = self.neighbors()
        for node in self.nodes():
            deg = len(adj[node])
            if node in self.leaves:
                expected = 0 if len(self.leaves) == 1 else 1
                if deg != expected:
                    raise LeafMismatch(f"leaf node {node} has tree degree {deg}")
            elif deg != 3:
                raise LeafMismatch(f"internal node {node} has degree {deg}, want 3")

    def side(self, edge: TreeEdge) -> frozenset[int]:
        """Graph vertices whose leaves land on the first-endpoint side of edge."""
        a, b = edge
        adj = self.neighbors()
        seen = {a}
        stack = [a]
        while stack:
            node = stack.pop()
            for u in adj[node]:
                if (node, u) in ((a, b), (b, a)):
                    continue
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return frozenset(self.leaves[x] for x in seen if x in self.leaves)


@dataclass(frozen=True)
class CutRankResult:
    edge: TreeEdge
    side: frozenset[int]
    rank: int


def cut_rank(g: WeightedGraph, a: set[int] | frozenset[int]) -> int:
    """Rank over Q of the weighted adjacency block rows(A) x columns(V-A)."""
    a = set(a)
    if not a or not a <= set(range(g.n)) or len(a) == g.n:
        raise InvalidSubset("cut rank needs a proper nonempty vertex subset")
    rows = sorted(a)
    cols = sorted(set(range(g.n)) - a)
    matrix = [
        [g.edges.get((min(u, v), max(u, v)), Fraction(0)) for v in cols]
        for u in rows
    ]
    return _rank(matrix)


def _rank(matrix: list[list[Fraction]]) -> int:
    if not matrix or not matrix[0]:
        return 0
    rows = [row[:] for row in matrix]
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = 1 / rows[rank][col]
        for r in range(rank + 1, len(rows)):
            if rows[r][col] != 0:
                factor = rows[r][col] * inv
                for j in range(col, ncols):
                    rows[r][j] -= factor * rows[rank][j]
        rank += 1
        if rank == len(rows):
            break
    return rank


def tree_width(g: WeightedGraph, t: DecompositionTree) -> int:
    """Maximum cut rank over the tree's edges."""
    t.validate()
    if sorted(t.leaves.values()) != list(range(g.n)):
        raise LeafMismatch("tree leaves must biject to the graph vertices")
    width = 0
    for edge in t.edges:
        side = t.side(edge)
        width = max(width, cut_rank(g, side))
    return width


def cut_ranks(g: WeightedGraph, t: DecompositionTree) -> list[CutRankResult]:
    t.validate()
    out = []
    for edge in t.edges:
        side = t.side(edge)
        out.append(CutRankResult(edge, side, cut_rank(g, side)))
    return out


def build_rank_decomposition(trace: ReductionTrace) -> DecompositionTree:
    """Width-1 decomposition tree for the graph a trace constructs.

    Each construction step that adds a vertex replaces the leaf of its
    source vertex by an internal node holding both as a cherry; pendant
    attachments hang beside the attachment vertex the same way.  Scalings
    and sign flips change no cut rank, hence no tree structure.
    """
    adj = new_construction_state(trace.final_vertex)
    leaf_node: dict[int, int] = {trace.final_vertex: 0}
    edges: list[TreeEdge] = []
    neighbors: dict[int, set[int]] = {0: set()}
    next_id = 1

    def add_edge(a: int, b: int) -> None:
        edges.append((a, b))
        neighbors.setdefault(a, set()).add(b)
        neighbors.setdefault(b, set()).add(a)

    def drop_edge(a: int, b: int) -> None:
        edges.remove((a, b) if (a, b) in edges else (b, a))
        neighbors[a].discard(b)
        neighbors[b].discard(a)

    for step in reversed(trace.steps):
        if isinstance(step, (RemovePendant, RemoveTwin)):
            new_vertex = step.u if isinstance(step, RemovePendant) else step.removed
            anchor = step.attach if isinstance(step, RemovePendant) else step.kept
            apply_construction_step(adj, step)
            new_leaf = next_id
            next_id += 1
            if len(leaf_node) == 1:
                add_edge(leaf_node[anchor], new_leaf)
            else:
                anchor_leaf = leaf_node[anchor]
                (z,) = neighbors[anchor_leaf]
                internal = next_id
                next_id += 1
                drop_edge(anchor_leaf, z)
                add_edge(z, internal)
                add_edge(internal, anchor_leaf)
                add_edge(internal, new_leaf)
            leaf_node[new_vertex] = new_leaf
        else:
            apply_construction_step(adj, step)

    return DecompositionTree(
        leaves={node: vertex for vertex, node in leaf_node.items()},
        edges=tuple(edges),
    )


def enumerate_cubic_trees(n: int) -> Iterator[DecompositionTree]:
    """All (2n-5)!! unrooted trees with leaves 0..n-1 and internal degree 3.

    Generated by inserting leaf k into every edge of every tree on k leaves;
    each tree arises exactly once.  Internal node ids start at n.
    """
    if n == 1:
        yield DecompositionTree(leaves={0: 0}, edges=())
        return
    if n == 2:
        yield DecompositionTree(leaves={0: 0, 1: 1}, edges=((0, 1),))
        return

    def insert(edge_list: list[TreeEdge], leaf: int, next_internal: int) -> Iterator[tuple[list[TreeEdge], int]]:
        for i, (a, b) in enumerate(edge_list):
            m = next_internal
            yield (
                edge_list[:i] + edge_list[i + 1 :] + [(a, m), (m, b), (m, leaf)],
                next_internal + 1,
            )

    def grow(edge_list: list[TreeEdge], k: int, next_internal: int) -> Iterator[list[TreeEdge]]:
        if k == n:
            yield edge_list
            return
        for bigger, nxt in insert(edge_list, k, next_internal):
            yield from grow(bigger, k + 1, nxt)

    leaves = {v: v for v in range(n)}
    for edge_list in grow([(0, 1)], 2, n):
        yield DecompositionTree(leaves=leaves, edges=tuple(edge_list))


def exhaustive_min_rankwidth(g: WeightedGraph, cap: int = 7) -> int:
    """Minimum width over every cubic tree; exhaustive, so capped at small n."""
    if g.n < 2:
        raise InvalidSubset("rank-width needs at least two vertices")
    if g.n > cap:
        raise SizeCapExceeded(f"exhaustive rank-width capped at {cap} vertices, got {g.n}")
    return min(tree_width(g, t) for t in enumerate_cubic_trees(g.n))


def decomposition_for(g: WeightedGraph) -> DecompositionTree | None:
    """Convenience: recognize, then build the width-1 tree (None if rejected)."""
    from .recognition import recognize

    result = recognize(g)
    if not result.accepted:
        return None
    return build_rank_decomposition(result.trace)
