"""Anytime lower bound: grow minors of strictly increasing treewidth.

The state is a forest F with tw(G/F) known exactly.  A lift step picks a
high-degree fill, makes it critical (recursing on G + fill), then uncontracts
a small edge set chosen by counting safe crossing separators until the minor's
treewidth rises; finally the forest is re-extended to keep minors small.
"""

from __future__ import annotations

import random
from collections.abc import Iterator
from dataclasses import dataclass

from .bitset import bit, iter_bits
from .btdp import SIZE_CAP, TreeDecomposition, decide_tw_leq, exact_tw
from .control import (
    Cancelled,
    CancelToken,
    Exhausted,
    NoFill,
    SharedBounds,
    SizeCapExceeded,
    check,
)
from .graph import ContractionForest, Graph, add_fill, contract, enumerate_fills
from .separators import crosses, enumerate_min_seps, is_safe_for_width

LIFT_DEPTH_CAP = 16


@dataclass(frozen=True)
class LbParams:
    unc_chunk: int = 5
    n_try: int = 100
    lb_base_size: int = 40

    def __post_init__(self):
        if min(self.unc_chunk, self.n_try, self.lb_base_size) <= 0:
            raise ValueError("all lower-bound parameters must be positive")


@dataclass(frozen=True)
class LbState:
    g: Graph
    f: ContractionForest
    minor: Graph
    vertex_of: tuple[int, ...]
    k: int
    witness_td: TreeDecomposition


class DecideMemo:
    """Per-worker memo for treewidth decisions on small graphs, keyed by
    adjacency and bound; safety checks re-query heavily overlapping blocks."""

    def __init__(self, size_cap: int = SIZE_CAP):
        self.size_cap = size_cap
        self._table: dict[tuple[tuple[int, ...], int], bool] = {}

    def decide(self, h: Graph, k: int, cancel: CancelToken | None = None) -> bool:
        key = (h.adj, k)
        hit = self._table.get(key)
        if hit is not None:
            return hit
        ok, _ = decide_tw_leq(h, k, cancel, size_cap=self.size_cap)
        self._table[key] = ok
        return ok


def _state_for(g: Graph, f: ContractionForest, cancel: CancelToken | None,
               size_cap: int) -> LbState:
    minor, vertex_of = contract(g, f)
    k, td = exact_tw(minor, cancel=cancel, size_cap=size_cap)
    return LbState(g=g, f=f, minor=minor, vertex_of=vertex_of, k=k, witness_td=td)


def greedy_initial_contraction(
    g: Graph,
    params: LbParams,
    rng: random.Random,
    cancel: CancelToken | None = None,
    size_cap: int = SIZE_CAP,
) -> LbState:
    """Contract a minimum-degree vertex into its least-connected neighbor
    until the minor fits the working size, then solve the minor exactly."""
    f = ContractionForest(g, [])
    minor, vertex_of = contract(g, f)
    while minor.n > params.lb_base_size:
        check(cancel)
        v = min(range(minor.n), key=lambda x: (minor.adj[x].bit_count(), x))
        nbrs = list(iter_bits(minor.adj[v]))
        u = min(nbrs, key=lambda x: ((minor.adj[v] & minor.adj[x]).bit_count(), x))
        f = f.plus(g, [_edge_between(g, f.classes[v], f.classes[u])])
        minor, vertex_of = contract(g, f)
    k, td = exact_tw(minor, cancel=cancel, size_cap=size_cap)
    return LbState(g=g, f=f, minor=minor, vertex_of=vertex_of, k=k, witness_td=td)


def _edge_between(g: Graph, class_a: int, class_b: int) -> tuple[int, int]:
    for u in iter_bits(class_a):
        row = g.adj[u] & class_b
        if row:
            return u, (row & -row).bit_length() - 1
    raise ValueError("classes are not adjacent in the host graph")


def d_f(g: Graph, f: ContractionForest, v: int) -> int:
    """Degree of v's class in the minor G/F."""
    minor, vertex_of = contract(g, f)
    return minor.adj[vertex_of[v]].bit_count()


def choose_fill(g: Graph, f: ContractionForest) -> tuple[int, int]:
    """The fill maximizing the sorted minor-degree pair, ties to low indices."""
    fills = enumerate_fills(g)
    if not fills:
        raise NoFill("graph is complete")
    minor, vertex_of = contract(g, f)
    deg = [minor.adj[i].bit_count() for i in range(minor.n)]
    best = None
    best_key = None
    for u, v in fills:
        du, dv = deg[vertex_of[u]], deg[vertex_of[v]]
        if du > dv:
            du, dv = dv, du
        key = (du, dv, -u, -v)
        if best_key is None or key > best_key:
            best_key, best = key, (u, v)
    return best


def is_critical(
    g: Graph,
    f: ContractionForest,
    e: tuple[int, int],
    cancel: CancelToken | None = None,
    k: int | None = None,
    size_cap: int = SIZE_CAP,
) -> bool:
    """True iff adding the fill e raises the treewidth of the minor."""
    if k is None:
        minor, _ = contract(g, f)
        k, _ = exact_tw(minor, cancel=cancel, size_cap=size_cap)
    ge = add_fill(g, e)
    minor_e, _ = contract(ge, ContractionForest(ge, f.edges))
    ok, _ = decide_tw_leq(minor_e, k, cancel, size_cap=size_cap)
    return not ok


def ncs(
    g: Graph,
    f: ContractionForest,
    a: frozenset[tuple[int, int]],
    e: tuple[int, int],
    k: int,
    cancel: CancelToken | None = None,
    memo: DecideMemo | None = None,
    stop_at: int | None = None,
) -> int:
    """Count minimal separators of G/(F - A) that are safe for width k and
    cross the fill e; zero when that minor is already lifted.

    `stop_at` short-circuits the count once it cannot beat a known minimum.
    """
    if memo is None:
        memo = DecideMemo()
    sub = f.minus(g, a)
    minor, vertex_of = contract(g, sub)
    if minor.n > memo.size_cap:
        raise SizeCapExceeded(f"minor has {minor.n} vertices")
    ua, va = vertex_of[e[0]], vertex_of[e[1]]
    if ua == va or k < 1:
        return 0
    count = 0
    for s in enumerate_min_seps(minor, k, cancel):
        if not crosses(minor, s, ua, va):
            continue
        if is_safe_for_width(minor, s, k, memo.decide, cancel):
            count += 1
            if stop_at is not None and count >= stop_at:
                return count
    return count


def break_fill(
    g: Graph,
    f: ContractionForest,
    e: tuple[int, int],
    k: int,
    params: LbParams,
    rng: random.Random,
    cancel: CancelToken | None = None,
    memo: DecideMemo | None = None,
) -> frozenset[tuple[int, int]]:
    """Find an uncontraction set A with tw(G/(F - A)) > k.

    Repeatedly samples supersets of A one chunk larger and keeps the one with
    the fewest safe crossing separators.  Raises Exhausted when even the full
    uncontraction (G itself) is unlifted, which proves tw(G) = k.
    """
    if memo is None:
        memo = DecideMemo()
    a: frozenset[tuple[int, int]] = frozenset()
    while True:
        check(cancel)
        minor, _ = contract(g, f.minus(g, a))
        if minor.n > memo.size_cap:
            raise SizeCapExceeded(f"minor has {minor.n} vertices")
        lifted, _ = decide_tw_leq(minor, k, cancel, size_cap=memo.size_cap)
        if not lifted:
            return a
        if len(a) == len(f.edges):
            raise Exhausted(f"treewidth of the host equals {k}")
        target = min(len(a) + params.unc_chunk, len(f.edges))
        pool = sorted(f.edges - a)
        best_a = None
        best_score = None
        for _ in range(params.n_try):
            check(cancel)
            extra = rng.sample(pool, target - len(a))
            cand = a | frozenset(extra)
            score = ncs(g, f, cand, e, k, cancel, memo,
                        stop_at=best_score if best_score is not None else None)
            if best_score is None or score < best_score:
                best_a, best_score = cand, score
                if best_score == 0:
                    break
        a = best_a


def extend_to_maximal(
    g: Graph,
    f2: ContractionForest,
    k2: int,
    rng: random.Random,
    cancel: CancelToken | None = None,
    size_cap: int = SIZE_CAP,
    allowed: Graph | None = None,
) -> ContractionForest:
    """Grow the forest while the minor's treewidth stays k2.

    Each pass shuffles the minor's edges and accepts the first contraction
    that keeps the width; stops when a full pass changes nothing.  Contraction
    candidates are restricted to edges of `allowed` (the original graph) so
    every class stays connected there.  On cancellation the forest grown so
    far is returned.
    """
    if allowed is None:
        allowed = g
    f = f2
    try:
        changed = True
        while changed:
            changed = False
            minor, _ = contract(g, f)
            pairs = list(minor.edges())
            rng.shuffle(pairs)
            for i, j in pairs:
                check(cancel)
                try:
                    ge = _edge_between(allowed, f.classes[i], f.classes[j])
                except ValueError:
                    continue  # adjacency only via fills of the working graph
                trial = f.plus(g, [ge])
                trial_minor, _ = contract(g, trial)
                ok, _ = decide_tw_leq(trial_minor, k2 - 1, cancel, size_cap=size_cap)
                if not ok:
                    f = trial
                    changed = True
                    break
    except Cancelled:
        pass
    return f


def lift(
    g: Graph,
    f: ContractionForest,
    params: LbParams,
    rng: random.Random,
    cancel: CancelToken | None = None,
    memo: DecideMemo | None = None,
    size_cap: int = SIZE_CAP,
    _base: Graph | None = None,
    _depth: int = 0,
) -> ContractionForest:
    """Produce a forest whose minor has strictly larger treewidth.

    Chooses a fill; if adding it already raises the minor's width the fill is
    critical and an uncontraction set is searched directly, otherwise the
    procedure recurses on the filled graph first.  The result is re-extended
    to a maximal forest preserving the new width.  Raises Exhausted exactly
    when tw(G/F) = tw(G).
    """
    if memo is None:
        memo = DecideMemo(size_cap)
    base = _base if _base is not None else g
    minor, _ = contract(g, f)
    k, _ = exact_tw(minor, cancel=cancel, size_cap=size_cap)

    try:
        e = choose_fill(g, f)
    except NoFill:
        # complete graph: any single uncontraction raises the width
        if not f.edges:
            raise Exhausted(f"graph is complete with treewidth {k}")
        drop = min(f.edges)
        f2 = f.minus(g, [drop])
        k2, _ = exact_tw(contract(g, f2)[0], cancel=cancel, size_cap=size_cap)
        return extend_to_maximal(g, f2, k2, rng, cancel, size_cap, allowed=base)

    if is_critical(g, f, e, cancel, k=k, size_cap=size_cap):
        a = break_fill(g, f, e, k, params, rng, cancel, memo)
        f2 = f.minus(g, a)
    elif _depth >= LIFT_DEPTH_CAP:
        a = break_fill(g, f, e, k, params, rng, cancel, memo)
        f2 = f.minus(g, a)
    else:
        ge = add_fill(g, e)
        f1 = lift(
            ge,
            ContractionForest(ge, f.edges),
            params,
            rng,
            cancel,
            memo,
            size_cap,
            _base=base,
            _depth=_depth + 1,
        )
        f1 = ContractionForest(g, f1.edges)
        k1, _ = exact_tw(contract(g, f1)[0], cancel=cancel, size_cap=size_cap)
        if k1 > k:
            return f1
        a = break_fill(g, f1, e, k, params, rng, cancel, memo)
        f2 = f1.minus(g, a)

    minor2, _ = contract(g, f2)
    k2, _ = exact_tw(minor2, cancel=cancel, size_cap=size_cap)
    assert k2 > k
    return extend_to_maximal(g, f2, k2, rng, cancel, size_cap, allowed=base)


def lb_main_loop(
    g: Graph,
    params: LbParams,
    rng: random.Random,
    bounds: SharedBounds,
    budget: CancelToken | None = None,
    size_cap: int = SIZE_CAP,
) -> Iterator[tuple[int, tuple[int, ...]]]:
    """Emit strictly increasing (k, contraction classes) pairs.

    Exits when the shared upper bound is reached, the lift search proves the
    bound exact, or the budget expires.  Each emission's classes define a
    minor of g with treewidth exactly k.
    """
    memo = DecideMemo(size_cap)
    try:
        state = greedy_initial_contraction(g, params, rng, budget, size_cap)
        f = extend_to_maximal(g, state.f, state.k, rng, budget, size_cap)
        state = _state_for(g, f, budget, size_cap)
    except Cancelled:
        return
    bounds.update_lower(state.k)
    yield state.k, state.f.classes

    cap_failures = 0
    while bounds.upper is None or state.k < bounds.upper:
        if budget is not None and budget.is_set():
            break
        # abort a lift as soon as the upper bound falls to the current k
        tok = CancelToken(
            predicate=lambda: bounds.upper is not None and bounds.upper <= state.k,
            parent=budget,
        )
        try:
            f_new = lift(g, state.f, params, rng, tok, memo, size_cap)
        except Exhausted:
            break
        except Cancelled:
            if budget is not None and budget.is_set():
                break
            continue  # bound met mid-lift; loop condition re-checks
        except SizeCapExceeded:
            cap_failures += 1
            if cap_failures >= 3:
                break
            continue
        state = _state_for(g, f_new, budget, size_cap)
        bounds.update_lower(state.k)
        yield state.k, state.f.classes
