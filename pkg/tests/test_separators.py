import random

import pytest

from oracles import (
    complete_graph,
    cycle_graph,
    grid_graph,
    oracle_min_seps,
    oracle_pmcs_definitional,
    oracle_tw,
    path_graph,
    random_connected_graph,
    random_graph,
)
from twbounds.bitset import bit, iter_bits, mask_of
from twbounds.btdp import decide_tw_leq
from twbounds.control import Cancelled, CancelToken
from twbounds.graph import Graph
from twbounds.separators import (
    blocks_of,
    crosses,
    enumerate_min_seps,
    is_almost_clique,
    is_clique,
    is_minimal_separator,
    is_pmc,
    is_safe_for_width,
)


def _decider(h, k, cancel):
    return decide_tw_leq(h, k, cancel)[0]


def test_min_seps_examples():
    assert enumerate_min_seps(path_graph(3), 2) == [bit(1)]
    assert sorted(enumerate_min_seps(cycle_graph(4), 2)) == sorted(
        [mask_of([0, 2]), mask_of([1, 3])]
    )
    assert enumerate_min_seps(complete_graph(5), 4) == []


def test_min_seps_match_brute_force():
    rng = random.Random(101)
    for _ in range(220):
        g = random_graph(rng.randint(2, 8), rng.choice([0.2, 0.35, 0.5, 0.7]), rng)
        truth = oracle_min_seps(g)
        for k in (1, 2, g.n):
            want = {s for s in truth if s.bit_count() <= k}
            assert set(enumerate_min_seps(g, k)) == want


def test_min_seps_cancellation():
    g = grid_graph(4, 4)
    tok = CancelToken()
    tok.cancel()
    with pytest.raises(Cancelled):
        enumerate_min_seps(g, 6, tok)


def test_is_pmc_examples():
    assert is_pmc(complete_graph(4), complete_graph(4).full)
    c4 = cycle_graph(4)
    assert is_pmc(c4, mask_of([0, 1, 2]))
    assert not is_pmc(c4, mask_of([0, 2]))


def test_is_pmc_matches_definitional_oracle():
    rng = random.Random(103)
    count = 0
    while count < 40:
        n = rng.randint(2, 6)
        g = random_graph(n, rng.choice([0.3, 0.5, 0.7]), rng)
        truth = oracle_pmcs_definitional(g)
        for size in range(1, n + 1):
            for x in range(1 << n):
                if x.bit_count() == size:
                    assert is_pmc(g, x) == (x in truth)
        count += 1
    # a couple of sparse 7-vertex instances to push past the toy sizes
    for seed in (1, 2):
        g = random_connected_graph(7, 0.12, rng)
        truth = oracle_pmcs_definitional(g)
        for x in range(1, 1 << 7):
            assert is_pmc(g, x) == (x in truth)


def test_blocks_of_star_and_path():
    star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    blocks = blocks_of(star, bit(0))
    assert len(blocks) == 3
    assert all(b.separator == bit(0) and b.component.bit_count() == 1 for b in blocks)
    assert len(blocks_of(path_graph(3), bit(1))) == 2


def test_blocks_of_grid_middle_row():
    g = grid_graph(3, 3)
    mid = mask_of([3, 4, 5])
    blocks = blocks_of(g, mid)
    assert len(blocks) == 2
    assert sorted(b.component for b in blocks) == sorted([mask_of([0, 1, 2]), mask_of([6, 7, 8])])


def test_blocks_realization_completes_separator():
    g = grid_graph(3, 3)
    for b in blocks_of(g, mask_of([3, 4, 5])):
        h, verts = b.realization(g)
        sep_local = mask_of(verts.index(v) for v in iter_bits(b.separator))
        assert is_clique(h, sep_local)
        assert sep_local.bit_count() == 3  # contains a triangle


def test_is_almost_clique():
    c4 = cycle_graph(4)
    assert is_almost_clique(complete_graph(5), complete_graph(5).full)
    assert not is_almost_clique(c4, c4.full)
    assert is_almost_clique(c4, mask_of([0, 1, 3]))


def test_safe_for_width_examples():
    p3 = path_graph(3)
    assert is_safe_for_width(p3, bit(1), 1, _decider)
    c5 = cycle_graph(5)
    s = mask_of([1, 4])
    assert is_minimal_separator(c5, s)
    assert not is_safe_for_width(c5, s, 1, _decider)
    assert is_safe_for_width(c5, s, 2, _decider)


def test_min_seps_safe_at_treewidth():
    rng = random.Random(107)
    for _ in range(40):
        g = random_connected_graph(rng.randint(4, 10), 0.3, rng)
        tw = oracle_tw(g)
        for s in enumerate_min_seps(g, g.n - 1):
            for k in (tw, tw + 1):
                assert is_safe_for_width(g, s, k, _decider) == (s.bit_count() <= k)


def test_crosses():
    p3 = path_graph(3)
    assert crosses(p3, bit(1), 0, 2)
    assert not crosses(p3, 0, 0, 2)
    c4 = cycle_graph(4)
    assert crosses(c4, mask_of([0, 2]), 1, 3)
    assert not crosses(c4, mask_of([0, 1]), 2, 3)
    # endpoint inside the separator never crosses
    assert not crosses(p3, bit(1), 1, 2)
