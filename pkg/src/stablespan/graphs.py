"""Weighted graph core: representation, blocks, sign normalization, twins.

Graphs are simple, undirected, with nonzero rational edge weights.  All the
recognition machinery rests on exact equality of weight ratios, so weights
are `fractions.Fraction` end to end.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DisconnectedGraph, EmptySet, InvalidGraph, ZeroWeightEdge
from .polynomials import GaussianRational, Polynomial

Edge = tuple[int, int]
Adjacency = dict[int, dict[int, Fraction]]


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class WeightedGraph:
    """Simple undirected graph on vertices 0..n-1 with nonzero rational weights.

    Immutable after construction; safe to share for read-only analysis.
    Equality compares structure (n and the weighted edge set); the optional
    display labels are presentation metadata and do not affect equality.
    """

    __slots__ = ("n", "edges", "labels")

    def __init__(
        self,
        n: int,
        edges: dict[Edge, Fraction],
        labels: tuple[str, ...] | None = None,
    ):
        if n < 1:
            raise InvalidGraph("graph needs at least one vertex")
        clean: dict[Edge, Fraction] = {}
        for (u, v), w in edges.items():
            if u == v:
                raise InvalidGraph(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidGraph(f"edge ({u},{v}) out of range for n={n}")
            key = edge_key(u, v)
            if key in clean:
                raise InvalidGraph(f"parallel edge {key}")
            w = Fraction(w)
            if w == 0:
                raise ZeroWeightEdge(f"edge {key} has weight 0")
            clean[key] = w
        if labels is not None and len(labels) != n:
            raise InvalidGraph("labels must have one entry per vertex")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", clean)
        object.__setattr__(self, "labels", labels)

    def __setattr__(self, name, value):
        raise AttributeError("WeightedGraph is immutable")

    @staticmethod
    def from_edges(n: int, edges: list[tuple[int, int, Fraction | int | str]], labels=None) -> "WeightedGraph":
        return WeightedGraph(n, {(u, v): Fraction(w) for u, v, w in edges}, labels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.edges.items())))

    def __repr__(self) -> str:
        es = ", ".join(f"{u}-{v}:{w}" for (u, v), w in sorted(self.edges.items()))
        return f"WeightedGraph(n={self.n}, {es})"

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self.edges

    def weight(self, u: int, v: int) -> Fraction:
        return self.edges[edge_key(u, v)]

    def neighbors(self, v: int) -> set[int]:
        return {u if w == v else w for u, w in self.edges if v in (u, w)}

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def adjacency(self) -> Adjacency:
        adj: Adjacency = {v: {} for v in range(self.n)}
        for (u, v), w in self.edges.items():
            adj[u][v] = w
            adj[v][u] = w
        return adj

    def is_connected(self) -> bool:
        return _is_connected(self.adjacency())

    def vertex_name(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)


# -- adjacency-dict helpers (shared with the reduction loop) ----------------


def _is_connected(adj: Adjacency) -> bool:
    if not adj:
        return False
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        for u in adj[stack.pop()]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(adj)


def _blocks_and_articulation(adj: Adjacency) -> tuple[list[frozenset[int]], set[int]]:
    """Biconnected components (as vertex sets) and articulation vertices.

    Iterative Hopcroft-Tarjan over an adjacency dict with arbitrary vertex ids.
    Isolated vertices (possible only for a 1-vertex graph here) yield no block.
    """
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    articulation: set[int] = set()
    blocks: list[frozenset[int]] = []
    edge_stack: list[Edge] = []
    counter = 0

    for root in adj:
        if root in disc:
            continue
        parent[root] = None
        root_children = 0
        stack = [(root, iter(adj[root]))]
        disc[root] = low[root] = counter
        counter += 1
        while stack:
            v, it = stack[-1]
            advanced = False
            for u in it:
                if u not in disc:
                    parent[u] = v
                    if v == root:
                        root_children += 1
                    edge_stack.append(edge_key(v, u))
                    disc[u] = low[u] = counter
                    counter += 1
                    stack.append((u, iter(adj[u])))
                    advanced = True
                    break
                if u != parent[v] and disc[u] < disc[v]:
                    edge_stack.append(edge_key(v, u))
                    low[v] = min(low[v], disc[u])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[v])
                if low[v] >= disc[p]:
                    # p closes off a block; pop its edges.
                    members: set[int] = set()
                    while edge_stack:
                        e = edge_stack.pop()
                        members.update(e)
                        if e == edge_key(p, v):
                            break
                    blocks.append(frozenset(members))
                    if parent[p] is not None or root_children > 1:
                        articulation.add(p)
    return blocks, articulation


def _articulation_points(adj: Adjacency) -> set[int]:
    return _blocks_and_articulation(adj)[1]


def _contractible_pairs_adj(adj: Adjacency) -> list["ContractiblePair"]:
    pairs = []
    ids = sorted(adj)
    for i, u in enumerate(ids):
        for v in ids[i + 1 :]:
            nu = set(adj[u]) - {v}
            nv = set(adj[v]) - {u}
            if nu != nv:
                continue
            ratio = None
            ok = True
            for x in nu:
                r = adj[x][u] / adj[x][v]
                if ratio is None:
                    ratio = r
                elif r != ratio:
                    ok = False
                    break
            if not ok:
                continue
            if ratio is None:
                ratio = Fraction(1)  # vacuous condition (K2 endpoints)
            if ratio <= 0:
                continue
            bridge = adj[u].get(v, Fraction(0))
            pairs.append(ContractiblePair(u, v, ratio, bridge))
    return pairs


# -- domain types -----------------------------------------------------------


@dataclass(frozen=True)
class BlockDecomposition:
    """Biconnected components, articulation vertices, and their incidences.

    Every edge lies in exactly one block; two blocks meet in at most one
    vertex, necessarily an articulation vertex.  `block_tree` maps each
    articulation vertex to the indices of the blocks containing it.
    """

    blocks: tuple[frozenset[int], ...]
    articulation_vertices: frozenset[int]
    block_tree: dict[int, tuple[int, ...]]

    def block_of_edge(self, u: int, v: int) -> int:
        for i, b in enumerate(self.blocks):
            if u in b and v in b:
                return i
        raise KeyError((u, v))


@dataclass(frozen=True)
class ContractiblePair:
    """Two vertices with equal neighborhoods (mod themselves) and constant
    weight ratio w(x,u)/w(x,v) over all common neighbors x.

    `bridge` is the weight of the edge uv, 0 when absent (open twins).
    """

    u: int
    v: int
    ratio: Fraction
    bridge: Fraction

    @property
    def twin_kind(self) -> str:
        return "closed" if self.bridge != 0 else "open"

    def as_pair(self) -> tuple[int, int]:
        return (self.u, self.v)


@dataclass(frozen=True)
class MixedSignCertificate:
    """Two edges of opposite sign sharing an endpoint inside one block.

    The zero point kills the star polynomial of the shared vertex: with
    x_{u_pos} = -i*w(center,u_neg) and x_{u_neg} = i*w(center,u_pos) (both in
    the upper half-plane because the weights have opposite signs) the sum
    w(center,u_pos)*x_{u_pos} + w(center,u_neg)*x_{u_neg} cancels exactly.
    """

    center: int
    pos_neighbor: int
    pos_weight: Fraction
    neg_neighbor: int
    neg_weight: Fraction

    def zero_point(self, n: int) -> dict[int, GaussianRational]:
        point = {v: GaussianRational() for v in range(n)}
        point[self.pos_neighbor] = GaussianRational(Fraction(0), -self.neg_weight)
        point[self.neg_neighbor] = GaussianRational(Fraction(0), self.pos_weight)
        return point

    def hpoint_vertices(self) -> tuple[int, int]:
        return (self.pos_neighbor, self.neg_neighbor)


# -- operations --------------------------------------------------------------


def biconnected_components(g: WeightedGraph) -> BlockDecomposition:
    """Blocks and articulation vertices of a connected graph."""
    adj = g.adjacency()
    if not _is_connected(adj):
        raise DisconnectedGraph("biconnected_components requires a connected graph")
    blocks, articulation = _blocks_and_articulation(adj)
    tree: dict[int, list[int]] = {a: [] for a in articulation}
    for i, b in enumerate(blocks):
        for a in articulation:
            if a in b:
                tree[a].append(i)
    return BlockDecomposition(
        blocks=tuple(blocks),
        articulation_vertices=frozenset(articulation),
        block_tree={a: tuple(sorted(ix)) for a, ix in tree.items()},
    )


def normalize_signs(
    g: WeightedGraph,
) -> tuple[WeightedGraph, tuple[frozenset[int], ...]] | MixedSignCertificate:
    """Flip whole blocks so that every weight becomes positive.

    Sign flips on a biconnected component leave the zero set of the spanning
    polynomial unchanged, so they are free normalizations.  If some block
    carries both signs, no normalization exists and a MixedSignCertificate
    locating two adjacent opposite-sign edges in that block is returned.
    """
    dec = biconnected_components(g)
    flipped: list[frozenset[int]] = []
    new_edges = dict(g.edges)
    for block in dec.blocks:
        block_edges = [e for e in g.edges if e[0] in block and e[1] in block]
        signs = {g.edges[e] > 0 for e in block_edges}
        if len(signs) == 2:
            # Two opposite-sign edges sharing an endpoint exist inside any
            # connected mixed-sign edge set; find one such vertex.
            for v in sorted(block):
                pos = neg = None
                for e in block_edges:
                    if v in e:
                        u = e[0] if e[1] == v else e[1]
                        if g.edges[e] > 0:
                            pos = (u, g.edges[e])
                        else:
                            neg = (u, g.edges[e])
                if pos and neg:
                    return MixedSignCertificate(
                        center=v,
                        pos_neighbor=pos[0],
                        pos_weight=pos[1],
                        neg_neighbor=neg[0],
                        neg_weight=neg[1],
                    )
            raise AssertionError("mixed-sign block without a mixed-sign vertex")
        if signs == {False}:
            flipped.append(block)
            for e in block_edges:
                new_edges[e] = -new_edges[e]
    return WeightedGraph(g.n, new_edges, g.labels), tuple(flipped)


def flip_blocks(g: WeightedGraph, blocks: tuple[frozenset[int], ...]) -> WeightedGraph:
    """Negate the edges inside each listed block (its own inverse)."""
    edges = dict(g.edges)
    for block in blocks:
        for e in edges:
            if e[0] in block and e[1] in block:
                edges[e] = -edges[e]
    return WeightedGraph(g.n, edges, g.labels)


def find_contractible_pairs(g: WeightedGraph) -> list[ContractiblePair]:
    """All contractible pairs, ordered lexicographically by (min, max) vertex.

    Requires all weights positive: contractibility is defined only after
    sign normalization.  Adjacent endpoints with no further neighbors (the
    K2 case) count as a closed pair with ratio fixed to 1 by convention.
    """
    if any(w <= 0 for w in g.edges.values()):
        raise InvalidGraph("contractible pairs are defined for positive weights; normalize signs first")
    return _contractible_pairs_adj(g.adjacency())


def induced_subgraph(g: WeightedGraph, s: set[int]) -> tuple[WeightedGraph, tuple[int, ...]]:
    """Subgraph induced by `s`, vertices remapped in sorted order.

    Returns the new graph and the tuple mapping new index -> old vertex.
    """
    if not s:
        raise EmptySet("induced subgraph of the empty set")
    if not all(0 <= v < g.n for v in s):
        raise InvalidGraph("subset contains out-of-range vertices")
    order = tuple(sorted(s))
    index = {old: new for new, old in enumerate(order)}
    edges = {
        (index[u], index[v]): w
        for (u, v), w in g.edges.items()
        if u in index and v in index
    }
    labels = tuple(g.labels[v] for v in order) if g.labels else None
    return WeightedGraph(len(order), edges, labels), order


def scale_vertex(g: WeightedGraph, v: int, c: Fraction) -> WeightedGraph:
    """Multiply every edge incident to v by c > 0."""
    if c <= 0:
        raise InvalidGraph("vertex scaling needs a positive constant")
    edges = {e: (w * c if v in e else w) for e, w in g.edges.items()}
    return WeightedGraph(g.n, edges, g.labels)


def star_polynomial(g: WeightedGraph, v: int) -> Polynomial:
    """Sum of w(v,t)*x_t over neighbors t of v, in the graph's variables."""
    terms = {}
    for t in sorted(g.neighbors(v)):
        terms[((t, 1),)] = g.weight(v, t)
    return Polynomial(terms, g.n)
