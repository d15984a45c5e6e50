import random
from fractions import Fraction
from itertools import combinations

import pytest

from stablespan.corpus import (
    FIXTURES,
    cycle_graph,
    house_graph,
    k4_one_heavy,
    random_connected,
    random_constructed,
    star_graph,
)
from stablespan.errors import InvalidSubset, LeafMismatch, SizeCapExceeded
from stablespan.graphs import WeightedGraph, find_contractible_pairs
from stablespan.rankwidth import (
    DecompositionTree,
    build_rank_decomposition,
    cut_rank,
    cut_ranks,
    enumerate_cubic_trees,
    exhaustive_min_rankwidth,
    tree_width,
)
from stablespan.recognition import recognize

F = Fraction


class TestCutRank:
    def test_singleton(self):
        g = FIXTURES["c4_unit"]
        for v in range(4):
            assert cut_rank(g, {v}) == 1

    def test_c4_adjacent_pair_has_rank_two(self):
        assert cut_rank(FIXTURES["c4_unit"], {0, 1}) == 2

    def test_c4_opposite_pair_has_rank_one(self):
        assert cut_rank(FIXTURES["c4_unit"], {0, 2}) == 1

    def test_k4_heavy_twin_side(self):
        assert cut_rank(k4_one_heavy(), {2, 3}) == 1

    def test_symmetry(self):
        rng = random.Random(15)
        for _ in range(50):
            g = random_connected(rng, rng.randint(3, 7), signed=rng.random() < 0.3)
            for size in range(1, g.n):
                for subset in combinations(range(g.n), size):
                    a = set(subset)
                    assert cut_rank(g, a) == cut_rank(g, set(range(g.n)) - a)
                    break  # one subset per size keeps this quick

    def test_contractible_pair_rows_proportional(self):
        rng = random.Random(16)
        for _ in range(60):
            g = random_constructed(rng, rng.randint(3, 8))
            for pair in find_contractible_pairs(g):
                if g.n - 2 >= 1:
                    assert cut_rank(g, {pair.u, pair.v}) <= 1

    def test_invalid_subsets(self):
        g = FIXTURES["c4_unit"]
        with pytest.raises(InvalidSubset):
            cut_rank(g, set())
        with pytest.raises(InvalidSubset):
            cut_rank(g, {0, 1, 2, 3})
        with pytest.raises(InvalidSubset):
            cut_rank(g, {7})


class TestBuildDecomposition:
    def test_unit_c4_pairs_opposite_cherries(self):
        g = FIXTURES["c4_unit"]
        tree = build_rank_decomposition(recognize(g).trace)
        tree.validate()
        cherries = self._cherries(tree)
        assert {frozenset({0, 2}), frozenset({1, 3})} == cherries
        assert tree_width(g, tree) == 1

    def test_k4_heavy_cherry(self):
        g = k4_one_heavy()
        tree = build_rank_decomposition(recognize(g).trace)
        assert frozenset({2, 3}) in self._cherries(tree)
        assert tree_width(g, tree) == 1

    def test_star_width_one(self):
        g = star_graph(3)
        tree = build_rank_decomposition(recognize(g).trace)
        assert tree_width(g, tree) == 1

    def test_all_accepted_fixtures_width_one(self):
        for name, g in FIXTURES.items():
            result = recognize(g)
            if not result.accepted:
                continue
            tree = build_rank_decomposition(result.trace)
            assert tree_width(g, tree) == 1, name

    def test_ranks_reported_per_edge(self):
        g = FIXTURES["c4_unit"]
        tree = build_rank_decomposition(recognize(g).trace)
        results = cut_ranks(g, tree)
        assert len(results) == len(tree.edges)
        assert all(r.rank == 1 for r in results)

    @staticmethod
    def _cherries(tree: DecompositionTree) -> set[frozenset[int]]:
        adj = tree.neighbors()
        out = set()
        for node in adj:
            if node not in tree.leaves:
                leaf_nbrs = [tree.leaves[u] for u in adj[node] if u in tree.leaves]
                if len(leaf_nbrs) == 2:
                    out.add(frozenset(leaf_nbrs))
        return out


class TestEnumeration:
    def test_double_factorial_counts(self):
        assert sum(1 for _ in enumerate_cubic_trees(2)) == 1
        assert sum(1 for _ in enumerate_cubic_trees(3)) == 1
        assert sum(1 for _ in enumerate_cubic_trees(4)) == 3
        assert sum(1 for _ in enumerate_cubic_trees(5)) == 15
        assert sum(1 for _ in enumerate_cubic_trees(6)) == 105
        assert sum(1 for _ in enumerate_cubic_trees(7)) == 945

    def test_trees_are_valid_and_distinct(self):
        seen = set()
        for tree in enumerate_cubic_trees(5):
            tree.validate()
            key = frozenset(frozenset(e) for e in tree.edges)
            assert key not in seen
            seen.add(key)


class TestMinRankwidth:
    def test_known_values(self):
        assert exhaustive_min_rankwidth(FIXTURES["c4_unit"]) == 1
        assert exhaustive_min_rankwidth(house_graph()) == 2
        assert exhaustive_min_rankwidth(cycle_graph([1] * 5)) == 2
        assert exhaustive_min_rankwidth(WeightedGraph(2, {(0, 1): F(1)})) == 1

    def test_c5_every_tree_at_least_two(self):
        g = cycle_graph([1] * 5)
        assert all(tree_width(g, t) >= 2 for t in enumerate_cubic_trees(5))

    def test_cap(self):
        with pytest.raises(SizeCapExceeded):
            exhaustive_min_rankwidth(cycle_graph([1] * 8))

    def test_leaf_mismatch(self):
        g = FIXTURES["c4_unit"]
        tree = next(enumerate_cubic_trees(5))
        with pytest.raises(LeafMismatch):
            tree_width(g, tree)
