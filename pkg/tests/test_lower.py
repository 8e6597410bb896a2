import random

import pytest

from oracles import (
    complete_graph,
    cycle_graph,
    grid_graph,
    oracle_tw,
    path_graph,
    petersen_graph,
    random_connected_graph,
)
from twbounds.bitset import bit, mask_of
from twbounds.btdp import exact_tw
from twbounds.control import Exhausted, NoFill, SharedBounds
from twbounds.graph import ContractionForest, Graph, contract
from twbounds.lower import (
    DecideMemo,
    LbParams,
    break_fill,
    choose_fill,
    d_f,
    extend_to_maximal,
    greedy_initial_contraction,
    is_critical,
    lb_main_loop,
    lift,
    ncs,
)

PARAMS = LbParams()
SMALL = LbParams(unc_chunk=2, n_try=8, lb_base_size=12)


def test_greedy_initial_small_graph_is_identity():
    g = grid_graph(3, 3)
    st = greedy_initial_contraction(g, PARAMS, random.Random(1))
    assert st.minor == g
    assert st.k == 3


def test_greedy_initial_complete_graph():
    g = complete_graph(12)
    st = greedy_initial_contraction(g, LbParams(lb_base_size=8), random.Random(1))
    assert st.minor.n == 8
    assert st.k == 7  # contractions of a complete graph stay complete


def test_greedy_initial_10x10_grid():
    g = grid_graph(10, 10)
    st = greedy_initial_contraction(g, PARAMS, random.Random(1))
    assert st.minor.n <= 40
    assert st.k >= 4


def test_d_f_and_choose_fill():
    star = Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    f = ContractionForest(star, [])
    assert d_f(star, f, 0) == 4
    assert d_f(star, f, 2) == 1
    assert choose_fill(star, f) == (1, 2)

    p3 = path_graph(3)
    assert choose_fill(p3, ContractionForest(p3, [])) == (0, 2)

    c4 = cycle_graph(4)
    assert choose_fill(c4, ContractionForest(c4, [])) == (0, 2)

    with pytest.raises(NoFill):
        choose_fill(complete_graph(4), ContractionForest(complete_graph(4), []))


def test_is_critical_examples():
    p3 = path_graph(3)
    assert is_critical(p3, ContractionForest(p3, []), (0, 2))
    c4 = cycle_graph(4)
    assert not is_critical(c4, ContractionForest(c4, []), (0, 2))
    k4_minus = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    assert is_critical(k4_minus, ContractionForest(k4_minus, []), (2, 3))


def test_ncs_path_single_separator():
    p3 = path_graph(3)
    f = ContractionForest(p3, [])
    assert ncs(p3, f, frozenset(), (0, 2), 1) == 1


def test_ncs_zero_iff_lifted_for_critical_fill():
    rng = random.Random(83)
    checked = 0
    while checked < 25:
        g = random_connected_graph(rng.randint(4, 9), 0.3, rng)
        f = ContractionForest(g, [])
        from twbounds.graph import enumerate_fills

        fills = enumerate_fills(g)
        if not fills:
            continue
        k = oracle_tw(g)
        e = fills[rng.randrange(len(fills))]
        if not is_critical(g, f, e, k=k):
            continue
        checked += 1
        # unlifted (tw = k) and e critical => at least one safe crossing separator
        assert ncs(g, f, frozenset(), e, k) >= 1
        # lifted minors have no safe separators at width k
        assert ncs(g, f, frozenset(), e, k - 1) == 0


def test_break_fill_single_edge_forest():
    # diamond contracted along its spine is a path; the missing edge is
    # critical and the forest's only edge is the only possible uncontraction
    g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    f = ContractionForest(g, [(0, 1)])
    minor, _ = contract(g, f)
    assert exact_tw(minor)[0] == 1
    assert is_critical(g, f, (2, 3), k=1)
    a = break_fill(g, f, (2, 3), 1, SMALL, random.Random(3))
    assert a == f.edges


def test_break_fill_exhausted_proves_treewidth():
    # C5 contracted to a triangle already has the host's treewidth, so no
    # uncontraction can lift it
    c5 = cycle_graph(5)
    f5 = ContractionForest(c5, [(0, 1), (2, 3)])
    minor, _ = contract(c5, f5)
    assert exact_tw(minor)[0] == 2 == oracle_tw(c5)
    with pytest.raises(Exhausted):
        break_fill(c5, f5, choose_fill(c5, f5), 2, SMALL, random.Random(3))


def test_break_fill_postcondition_on_grid():
    # contract every row of a 4x4 grid to one vertex: the minor is a path
    g = grid_graph(4, 4)
    rng = random.Random(11)
    row_edges = [(4 * r + c, 4 * r + c + 1) for r in range(4) for c in range(3)]
    f = ContractionForest(g, row_edges)
    minor, _ = contract(g, f)
    k = exact_tw(minor)[0]
    assert k == 1 < oracle_tw(g)
    e = choose_fill(g, f)
    if is_critical(g, f, e, k=k):
        a = break_fill(g, f, e, k, SMALL, rng)
        lifted, _ = contract(g, f.minus(g, a))
        assert exact_tw(lifted)[0] > k
    else:
        f2 = lift(g, f, SMALL, rng)
        lifted, _ = contract(g, f2)
        assert exact_tw(lifted)[0] > k


def test_break_fill_deterministic_given_seed():
    g = grid_graph(4, 4)
    row_edges = [(4 * r + c, 4 * r + c + 1) for r in range(4) for c in range(3)]
    f = ContractionForest(g, row_edges)
    e = choose_fill(g, f)
    k = exact_tw(contract(g, f)[0])[0]
    if not is_critical(g, f, e, k=k):
        e = (0, 15)  # opposite corners; adding this raises the path minor's width
        assert is_critical(g, f, e, k=k)
    a1 = break_fill(g, f, e, k, SMALL, random.Random(9))
    a2 = break_fill(g, f, e, k, SMALL, random.Random(9))
    assert a1 == a2
    lifted, _ = contract(g, f.minus(g, a1))
    assert exact_tw(lifted)[0] > k


def test_extend_to_maximal():
    kn = complete_graph(6)
    f = extend_to_maximal(kn, ContractionForest(kn, []), 5, random.Random(1))
    assert f.edges == frozenset()

    c6 = cycle_graph(6)
    f = extend_to_maximal(c6, ContractionForest(c6, []), 2, random.Random(1))
    minor, _ = contract(c6, f)
    assert exact_tw(minor)[0] == 2
    assert minor.n <= 4
    # maximality: contracting any remaining minor edge drops the width
    for i, j in minor.edges():
        from twbounds.lower import _edge_between

        trial = f.plus(c6, [_edge_between(c6, f.classes[i], f.classes[j])])
        tminor, _ = contract(c6, trial)
        assert exact_tw(tminor)[0] < 2


def test_lift_on_small_examples():
    c4 = cycle_graph(4)
    f = ContractionForest(c4, [(0, 1), (2, 3)])  # contracts C4 to an edge
    minor, _ = contract(c4, f)
    assert exact_tw(minor)[0] == 1
    f2 = lift(c4, f, SMALL, random.Random(2))
    minor2, _ = contract(c4, f2)
    assert exact_tw(minor2)[0] == 2

    k5 = complete_graph(5)
    f = ContractionForest(k5, [(0, 1), (2, 3)])
    f2 = lift(k5, f, SMALL, random.Random(2))
    minor2, _ = contract(k5, f2)
    assert exact_tw(minor2)[0] >= 3


def test_lift_chain_reaches_petersen_treewidth():
    g = petersen_graph()
    rng = random.Random(7)
    st = greedy_initial_contraction(g, LbParams(lb_base_size=4), rng)
    f, k = st.f, st.k
    assert k < 4
    while True:
        try:
            f = lift(g, f, SMALL, rng)
        except Exhausted:
            break
        minor, _ = contract(g, f)
        k_new = exact_tw(minor)[0]
        assert k_new > k
        k = k_new
    assert k == 4


def test_lift_exhausted_only_at_true_treewidth():
    rng = random.Random(89)
    done = 0
    while done < 20:
        g = random_connected_graph(rng.randint(4, 10), 0.35, rng)
        tw = oracle_tw(g)
        st = greedy_initial_contraction(g, LbParams(lb_base_size=4), rng)
        f, k = st.f, st.k
        for _ in range(10):
            try:
                f = lift(g, f, SMALL, rng)
            except Exhausted:
                minor, _ = contract(g, f)
                assert exact_tw(minor)[0] == tw
                break
            minor, _ = contract(g, f)
            k_new = exact_tw(minor)[0]
            assert k_new > k
            k = k_new
        done += 1


def test_lb_main_loop_emits_increasing_and_converges():
    g = grid_graph(3, 3)
    bounds = SharedBounds(upper=3)
    ks = []
    for k, classes in lb_main_loop(g, SMALL, random.Random(3), bounds):
        ks.append(k)
        seen = 0
        for c in classes:
            assert c & seen == 0
            seen |= c
        assert seen == g.full
    assert ks == sorted(set(ks))
    assert ks[-1] == 3
    assert bounds.lower == 3
