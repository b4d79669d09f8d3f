import math
import random

import pytest
from hypothesis import given, strategies as st

from conftest import fractions_01, hypergraphs, random_suite
from hypercore import Hypergraph
from hypercore.cover import COVER_METHODS, GreedyCover, cover_need, cover_select, cover_sweep, covered_count
from oracles import best_cover, covered_by_loops
from synth import random_small


def test_need_uses_exact_ceiling():
    hg = Hypergraph.from_edges([list(range(5)), [0, 1], list(range(3))])
    assert cover_need(hg, "3/5") == [3, 2, 2]
    assert cover_need(hg, 0) == [0, 0, 0]


@pytest.mark.parametrize("method", COVER_METHODS)
def test_all_nodes_cover_everything(worked, method):
    picked = cover_select(worked, worked.n_nodes, "7/10", method)
    assert sorted(picked) == list(range(worked.n_nodes))
    assert covered_count(worked, picked, "7/10") == worked.n_edges


def test_empty_set_covers_nothing(worked):
    assert covered_count(worked, [], "1/2") == 0
    assert cover_select(worked, 0, "1/2", "greedy") == []


def test_degree_order_breaks_ties_by_id():
    hg = Hypergraph.from_edges([["a", "b"], ["c", "d"], ["a", "c"]])
    assert cover_select(hg, 4, "1/2", "degree") == [0, 2, 1, 3]


@given(hypergraphs(), fractions_01, st.data())
def test_covered_count_matches_loops(hg, t_c, data):
    nodes = data.draw(st.sets(st.integers(0, hg.n_nodes - 1)))
    assert covered_count(hg, nodes, t_c) == covered_by_loops(hg, nodes, t_c)


@given(hypergraphs(max_nodes=10), st.sampled_from(["1/2", "3/5", "7/10", "4/5", "1"]))
def test_incremental_gains_match_recount(hg, t_c):
    g = GreedyCover(hg, t_c)
    while len(g.chosen) < hg.n_nodes:
        base = covered_count(hg, g.chosen, t_c)
        for v in range(hg.n_nodes):
            if not g.in_set[v]:
                assert g.gain[v] == covered_count(hg, g.chosen + [v], t_c) - base
        v = g.best()
        assert g.add(v) == covered_count(hg, g.chosen, t_c) - base
        assert g.n_covered == covered_count(hg, g.chosen, t_c)


@given(hypergraphs(max_nodes=8), st.integers(1, 3), st.sampled_from(["3/5", "7/10", "4/5"]))
def test_exhaustive_optimum_bounds_heuristics(hg, k_c, t_c):
    k_c = min(k_c, hg.n_nodes)
    opt = best_cover(hg, k_c, t_c)
    for m in COVER_METHODS:
        assert covered_count(hg, cover_select(hg, k_c, t_c, m), t_c) <= opt


def test_greedy_prefixes_are_nested():
    hg = random_suite(5, 1, max_nodes=12, max_edges=12)[0]
    full = cover_select(hg, hg.n_nodes, "2/3", "greedy")
    for k in range(hg.n_nodes):
        assert cover_select(hg, k, "2/3", "greedy") == full[:k]


def test_greedy_covered_is_monotone_in_budget():
    rng = random.Random(3)
    for _ in range(20):
        hg = random_small(rng, max_nodes=10, max_edges=10)
        counts = [covered_count(hg, cover_select(hg, k, "7/10", "greedy"), "7/10") for k in range(hg.n_nodes + 1)]
        assert counts == sorted(counts)


def test_budget_too_large(worked):
    with pytest.raises(ValueError):
        cover_select(worked, worked.n_nodes + 1, "1/2")


def test_unknown_method(worked):
    with pytest.raises(ValueError):
        cover_select(worked, 2, "1/2", "random")


def test_sweep_rows(worked):
    rows = cover_sweep(worked, "7/10", k_values=[2, 4, 100])
    assert {r[0] for r in rows} == {2, 4}
    for k, m, c, rel in rows:
        assert c == covered_count(worked, cover_select(worked, k, "7/10", m), "7/10")
        if m == "degree":
            # a zero baseline has no meaningful ratio
            assert rel == 1.0 if c else math.isnan(rel)
