import random

import pytest

from oracles import (
    complete_graph,
    cycle_graph,
    grid_graph,
    oracle_is_chordal,
    oracle_max_cliques,
    oracle_tw,
    path_graph,
    random_connected_graph,
    random_graph,
)
from twbounds.bitset import bit, mask_of
from twbounds.graph import Graph, add_fill
from twbounds.separators import is_pmc
from twbounds.triangulate import is_chordal, maximal_cliques_of_chordal, mmaf


def test_chordal_inputs_get_no_fills():
    for g in (complete_graph(4), path_graph(6), grid_graph(1, 5)):
        t = mmaf(g)
        assert t.fill_edges == frozenset()
        assert t.chordal == g


def test_c5_needs_two_fills():
    t = mmaf(cycle_graph(5))
    assert len(t.fill_edges) == 2
    assert t.width == 2


def test_grid_width_lower_bounded_by_treewidth():
    g = grid_graph(3, 3)
    widths = [mmaf(g, random.Random(seed)).width for seed in range(10)]
    assert all(w >= 3 for w in widths)
    assert min(widths) == 3


def test_is_chordal_examples():
    assert not is_chordal(cycle_graph(4))
    assert is_chordal(path_graph(5))
    assert is_chordal(Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)]))


def test_is_chordal_matches_induced_cycle_search():
    rng = random.Random(23)
    for _ in range(250):
        g = random_graph(rng.randint(1, 8), rng.choice([0.2, 0.4, 0.6, 0.8]), rng)
        assert is_chordal(g) == oracle_is_chordal(g)


def test_maximal_cliques_of_tree():
    g = path_graph(5)
    cliques = maximal_cliques_of_chordal(g)
    assert sorted(cliques) == sorted(mask_of([i, i + 1]) for i in range(4))


def test_maximal_cliques_complete_and_chorded_cycle():
    assert maximal_cliques_of_chordal(complete_graph(6)) == [complete_graph(6).full]
    g = add_fill(cycle_graph(4), (0, 2))
    assert sorted(maximal_cliques_of_chordal(g)) == sorted(
        [mask_of([0, 1, 2]), mask_of([0, 2, 3])]
    )


def test_maximal_cliques_rejects_non_chordal():
    with pytest.raises(ValueError):
        maximal_cliques_of_chordal(cycle_graph(4))


def test_maximal_cliques_match_oracle():
    rng = random.Random(29)
    for _ in range(120):
        g = random_graph(rng.randint(1, 8), rng.choice([0.3, 0.5, 0.7]), rng)
        if not is_chordal(g):
            continue
        assert sorted(maximal_cliques_of_chordal(g)) == sorted(oracle_max_cliques(g))


def test_mmaf_output_is_minimal_triangulation():
    rng = random.Random(31)
    graphs = [random_connected_graph(rng.randint(4, 12), 0.3, rng) for _ in range(25)]
    graphs.append(grid_graph(4, 5))
    graphs.append(cycle_graph(12))
    for g in graphs:
        t = mmaf(g, random.Random(5))
        assert is_chordal(t.chordal)
        for u in range(g.n):
            assert g.adj[u] & ~t.chordal.adj[u] == 0, "base edge missing"
        for u, v in t.fill_edges:
            adj = list(t.chordal.adj)
            adj[u] &= ~bit(v)
            adj[v] &= ~bit(u)
            assert not is_chordal(Graph(g.n, adj)), "removable fill edge"


def test_mmaf_width_bounds():
    rng = random.Random(37)
    for _ in range(40):
        g = random_connected_graph(rng.randint(3, 8), 0.35, rng)
        t = mmaf(g, random.Random(1))
        tw = oracle_tw(g)
        assert t.width >= tw
        if is_chordal(g):
            assert t.width == tw


def test_mmaf_deterministic_for_fixed_seed():
    g = grid_graph(3, 4)
    a = mmaf(g, random.Random(42))
    b = mmaf(g, random.Random(42))
    assert a.fill_edges == b.fill_edges and a.cliques == b.cliques


def test_mmaf_cliques_are_pmcs_of_base():
    rng = random.Random(41)
    for _ in range(30):
        g = random_connected_graph(rng.randint(4, 12), 0.3, rng)
        t = mmaf(g, random.Random(3))
        for c in t.cliques:
            assert is_pmc(g, c)
