"""Built-in fixture graphs and seeded random graph generators.

Every named example from the problem family lives here so the CLI, the
self-check suite, and the tests all exercise identical objects.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .graphs import WeightedGraph
from .polynomials import GaussianRational, Polynomial
from .probe import ZeroCertificate

Weight = Fraction | int | str


def cycle_graph(weights: list[Weight]) -> WeightedGraph:
    """Cycle v0-v1-...-v_{k-1}-v0; weights[i] sits on edge (i, i+1 mod k)."""
    k = len(weights)
    edges = [(i, (i + 1) % k, Fraction(weights[i])) for i in range(k)]
    return WeightedGraph.from_edges(k, edges)


def path_graph(weights: list[Weight]) -> WeightedGraph:
    edges = [(i, i + 1, Fraction(w)) for i, w in enumerate(weights)]
    return WeightedGraph.from_edges(len(weights) + 1, edges)


def star_graph(leaves: int, weight: Weight = 1) -> WeightedGraph:
    """Center is vertex 0."""
    edges = [(0, i, Fraction(weight)) for i in range(1, leaves + 1)]
    return WeightedGraph.from_edges(leaves + 1, edges)


def complete_graph(n: int, default: Weight = 1, overrides: dict[tuple[int, int], Weight] | None = None) -> WeightedGraph:
    overrides = overrides or {}
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            w = overrides.get((u, v), default)
            edges.append((u, v, Fraction(w)))
    return WeightedGraph.from_edges(n, edges)


def house_graph() -> WeightedGraph:
    """C5 plus one chord: a square 0,1,2,4 with the roof triangle 2,3,4."""
    return WeightedGraph.from_edges(
        5, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (0, 4, 1), (2, 4, 1)]
    )


def gem_graph() -> WeightedGraph:
    """Path 0-1-2-3 plus apex 4 adjacent to all of it."""
    return WeightedGraph.from_edges(
        5, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 4, 1), (1, 4, 1), (2, 4, 1), (3, 4, 1)]
    )


def domino_graph() -> WeightedGraph:
    """C6 plus the long chord 1-4: two squares sharing an edge."""
    return WeightedGraph.from_edges(
        6, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 5, 1), (0, 5, 1), (1, 4, 1)]
    )


def bowtie_graph() -> WeightedGraph:
    """Two unit triangles sharing vertex 2."""
    return WeightedGraph.from_edges(
        5, [(0, 1, 1), (0, 2, 1), (1, 2, 1), (2, 3, 1), (2, 4, 1), (3, 4, 1)]
    )


def k4_one_heavy() -> WeightedGraph:
    """K4 with five unit edges and w(0,1) = 2: weighted-stable but not a
    rescaling of the unit K4."""
    return complete_graph(4, 1, {(0, 1): 2})


def k4_distinct() -> WeightedGraph:
    """Apex-normalized K4 with opposite weights (1, 2, 3): rejected."""
    return complete_graph(4, 1, {(1, 2): 1, (0, 2): 2, (0, 1): 3})


def c4_graph(a: Weight, b: Weight, c: Weight, d: Weight) -> WeightedGraph:
    """C4 with weights a=w(0,1), b=w(1,2), c=w(2,3), d=w(0,3)."""
    return cycle_graph([a, b, c, d])


def mixed_sign_triangle() -> WeightedGraph:
    return WeightedGraph.from_edges(3, [(0, 1, 1), (1, 2, 1), (0, 2, -1)])


def mixed_sign_bowtie() -> WeightedGraph:
    """Negative weights confined to whole blocks: normalizable."""
    return WeightedGraph.from_edges(
        5, [(0, 1, -1), (0, 2, -2), (1, 2, -1), (2, 3, 1), (2, 4, 2), (3, 4, 1)]
    )


FIXTURES: dict[str, "WeightedGraph"] = {}


def _register() -> None:
    FIXTURES.update(
        {
            "c4_unit": c4_graph(1, 1, 1, 1),
            "c4_accept": c4_graph(2, 3, 3, 2),
            "c4_reject": c4_graph(1, 1, 1, 2),
            "c5": cycle_graph([1] * 5),
            "c6": cycle_graph([1] * 6),
            "house": house_graph(),
            "gem": gem_graph(),
            "domino": domino_graph(),
            "bowtie": bowtie_graph(),
            "k4_unit": complete_graph(4),
            "k4_one_heavy": k4_one_heavy(),
            "k4_distinct": k4_distinct(),
            "path3": path_graph([1, 1]),
            "star_k13": star_graph(3),
            "mixed_sign_triangle": mixed_sign_triangle(),
            "mixed_sign_bowtie": mixed_sign_bowtie(),
        }
    )


_register()

FORBIDDEN_FIXTURES = ("c5", "house", "gem", "domino")
ACCEPTED_FIXTURES = (
    "c4_unit",
    "c4_accept",
    "k4_unit",
    "k4_one_heavy",
    "path3",
    "star_k13",
    "bowtie",
    "mixed_sign_bowtie",
)
REJECTED_FIXTURES = ("c4_reject", "c5", "c6", "house", "gem", "domino", "k4_distinct", "mixed_sign_triangle")


def house_case_polynomial(t: Weight) -> Polynomial:
    """x2*(t*x1 + 1) + x1 + 1 viewed in four variables (x3, x4 already fixed).

    This is the documented quadratic-case restriction of the normalized C4
    analysis; for t > 1 it vanishes at an explicit upper-half-plane point.
    """
    t = Fraction(t)
    return Polynomial(
        {
            ((0, 1), (1, 1)): t,
            ((1, 1),): Fraction(1),
            ((0, 1),): Fraction(1),
            (): Fraction(1),
        },
        4,
    )


def house_case_certificate(t: Weight) -> ZeroCertificate:
    """The explicit zero x1 = i, x2 = -(1+i)(1-ti)/(t^2+1), with x3 = x4 = 1.

    The imaginary part of x2 is (t-1)/(t^2+1), positive exactly when t > 1.
    """
    t = Fraction(t)
    denom = t * t + 1
    return ZeroCertificate(
        real_substitutions={2: Fraction(1), 3: Fraction(1)},
        hpoint={
            0: GaussianRational(Fraction(0), Fraction(1)),
            1: GaussianRational(-(1 + t) / denom, (t - 1) / denom),
        },
    )


def random_fraction(rng: random.Random, max_num: int = 6, max_den: int = 3) -> Fraction:
    return Fraction(rng.randint(1, max_num), rng.randint(1, max_den))


def random_constructed(rng: random.Random, n: int, scaling: bool = True) -> WeightedGraph:
    """Random weighted-stable graph built by n-1 random construction steps.

    Operations: pendant attachment, open twin copy, closed twin copy (random
    positive bridge), with optional random vertex scalings in between.  The
    result is stable by construction.
    """
    adj: dict[int, dict[int, Fraction]] = {0: {}}
    for new in range(1, n):
        op = rng.random()
        anchor = rng.randrange(new)
        if op < 0.45 or not adj[anchor]:
            weight = random_fraction(rng)
            adj[new] = {anchor: weight}
            adj[anchor][new] = weight
        else:
            copied = dict(adj[anchor])
            adj[new] = copied
            for x, w in copied.items():
                adj[x][new] = w
            if op < 0.75:
                bridge = random_fraction(rng)
                adj[new][anchor] = bridge
                adj[anchor][new] = bridge
        if scaling and rng.random() < 0.3:
            v = rng.randrange(new + 1)
            c = random_fraction(rng)
            for x in list(adj[v]):
                adj[v][x] *= c
                adj[x][v] *= c
    edges = {(u, v): w for u in adj for v, w in adj[u].items() if u < v}
    return WeightedGraph(n, edges)


def random_connected(rng: random.Random, n: int, extra_edge_prob: float = 0.3, signed: bool = False) -> WeightedGraph:
    """Random connected weighted graph: a random spanning tree plus extras."""
    edges: dict[tuple[int, int], Fraction] = {}
    order = list(range(1, n))
    rng.shuffle(order)
    placed = [0]
    for v in order:
        u = rng.choice(placed)
        edges[(min(u, v), max(u, v))] = _signed_weight(rng, signed)
        placed.append(v)
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < extra_edge_prob:
                edges[(u, v)] = _signed_weight(rng, signed)
    return WeightedGraph(n, edges)


def _signed_weight(rng: random.Random, signed: bool) -> Fraction:
    w = random_fraction(rng)
    if signed and rng.random() < 0.5:
        return -w
    return w
