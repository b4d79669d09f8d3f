import networkx as nx
import pytest
from hypothesis import given, strategies as st

from conftest import hypergraphs
from hypercore import (
    BipartiteGraph,
    Hypergraph,
    WeightedGraph,
    alpha_beta_core,
    clique_expansion,
    kl_hypercore,
    kt_hypercore,
    l_hypercoreness,
    nd_hypercore,
    nd_hypercoreness,
    neighbor_hypercore,
    neighbor_hypercoreness,
    pairwise_coreness,
    star_expansion,
)
from oracles import naive_complete_coreness, naive_nd_core, naive_neighbor_core, naive_weighted_coreness


class TestKL:
    def test_golden_first(self, golden_first):
        assert kl_hypercore(golden_first, 2, 2).edge_label_sets() == [
            ("1", "2"), ("1", "3"), ("1", "2", "3", "4"), ("1", "3", "4"),
        ]
        assert kl_hypercore(golden_first, 2, 3).edge_label_sets() == [("1", "3", "4"), ("1", "3", "4")]

    @pytest.mark.parametrize("l", [4, 5, 6, 9])
    def test_golden_first_empty(self, golden_first, l):
        assert not kl_hypercore(golden_first, 2, l).nodes

    def test_golden_second(self, golden_second):
        assert kl_hypercore(golden_second, 3, 2).edge_label_sets() == [
            ("1", "2", "3", "4"), ("1", "2", "5", "6"), ("5", "6"), ("3", "4"), ("1", "2", "3", "4", "5", "6"),
        ]
        assert not kl_hypercore(golden_second, 3, 3).nodes

    def test_no_l_reproduces_the_kt_core(self, golden_first):
        target = kt_hypercore(golden_first, 2, "3/4")
        for l in range(2, 7):
            core = kl_hypercore(golden_first, 2, l)
            assert (core.nodes, core.edges) != (target.nodes, target.edges)

    def test_l_below_two(self, golden_first):
        with pytest.raises(ValueError):
            kl_hypercore(golden_first, 1, 1)

    @given(hypergraphs(), st.integers(1, 3))
    def test_l_two_is_t_zero(self, hg, k):
        a, b = kl_hypercore(hg, k, 2), kt_hypercore(hg, k, 0)
        assert (a.nodes, a.edges) == (b.nodes, b.edges)

    @given(hypergraphs(), st.integers(1, 3), st.integers(2, 5))
    def test_equals_bipartite_core_of_star_expansion(self, hg, k, l):
        core = kl_hypercore(hg, k, l)
        assert alpha_beta_core(star_expansion(hg), k, l) == (core.nodes, core.edges)

    @given(hypergraphs(), st.integers(2, 4))
    def test_l_coreness_matches_repeated_cores(self, hg, l):
        values = l_hypercoreness(hg, l)
        for k in range(1, max(values) + 2):
            assert {v for v, c in enumerate(values) if c >= k} == kl_hypercore(hg, k, l).nodes


class TestAlphaBeta:
    def test_complete_bipartite(self):
        bg = BipartiteGraph.from_pairs(3, 3, [(a, b) for a in range(3) for b in range(3)])
        assert alpha_beta_core(bg, 3, 3) == (frozenset(range(3)), frozenset(range(3)))

    def test_path_vanishes(self):
        bg = BipartiteGraph.from_pairs(3, 2, [(0, 0), (1, 0), (1, 1), (2, 1)])
        assert alpha_beta_core(bg, 2, 2) == (frozenset(), frozenset())


class TestNeighborCores:
    def test_triangle_edge(self):
        hg = Hypergraph.from_edges([[0, 1, 2]])
        assert neighbor_hypercore(hg, 2).nodes == frozenset(range(3))

    def test_pair_edge(self):
        hg = Hypergraph.from_edges([[0, 1]])
        assert not neighbor_hypercore(hg, 2).nodes

    @given(hypergraphs(), st.integers(1, 4))
    def test_neighbor_core_matches_naive(self, hg, k):
        assert neighbor_hypercore(hg, k).nodes == naive_neighbor_core(hg, k)

    @given(hypergraphs(), st.integers(1, 4), st.integers(1, 3))
    def test_nd_core_matches_naive(self, hg, k, d):
        assert nd_hypercore(hg, k, d).nodes == naive_nd_core(hg, k, d)

    @given(hypergraphs(), st.integers(1, 4))
    def test_nd_with_degree_one_is_neighbor_core(self, hg, k):
        assert nd_hypercore(hg, k, 1).nodes == neighbor_hypercore(hg, k).nodes

    @given(hypergraphs(), st.integers(1, 4))
    def test_cores_are_complete(self, hg, k):
        core = nd_hypercore(hg, k, 1)
        for i in core.edges:
            assert set(hg.edges[i]) <= core.nodes

    @given(hypergraphs())
    def test_coreness_matches_naive(self, hg):
        assert neighbor_hypercoreness(hg) == naive_complete_coreness(hg, with_degree=False)
        assert nd_hypercoreness(hg) == naive_complete_coreness(hg, with_degree=True)


class TestPairwise:
    def test_triangle(self):
        g = WeightedGraph(3, {(0, 1): 1, (0, 2): 1, (1, 2): 1}, weighted=False)
        assert pairwise_coreness(g) == [2, 2, 2]

    def test_star(self):
        g = WeightedGraph(4, {(0, 1): 1, (0, 2): 1, (0, 3): 1}, weighted=False)
        assert pairwise_coreness(g) == [1, 1, 1, 1]

    @given(hypergraphs(max_nodes=12, max_edges=12))
    def test_unweighted_matches_networkx(self, hg):
        g = clique_expansion(hg)
        ref = nx.Graph()
        ref.add_nodes_from(range(hg.n_nodes))
        ref.add_edges_from(g.pairs)
        expected = nx.core_number(ref)
        assert pairwise_coreness(g) == [expected[v] for v in range(hg.n_nodes)]

    @given(hypergraphs(max_nodes=10, max_edges=10))
    def test_weighted_matches_naive(self, hg):
        g = clique_expansion(hg, weighted=True)
        assert pairwise_coreness(g, weighted=True) == naive_weighted_coreness(hg.n_nodes, g.weights)
