"""Anytime upper bound: solutions are PMC sets, improved by merging.

Merging two solutions grafts freshly triangulated interface regions between
a bag of one and a nearby bag of the other, enriching the PMC set so the
dynamic programming can find tree-decompositions neither solution admits
alone.
"""

from __future__ import annotations

import random
from collections.abc import Iterator
from dataclasses import dataclass

from .bitset import bit, iter_bits
from .btdp import PmcSet, TreeDecomposition, exact_tw, tw_over_pi
from .control import Cancelled, CancelToken, SharedBounds, check
from .graph import Graph, components, neighborhood, subgraph
from .separators import is_pmc
from .triangulate import mmaf

IMPROVE_DEPTH_CAP = 32

# wall-clock ceiling for one exact triangulation of a merge region; on expiry
# the region falls back to the greedy triangulation
REGION_EXACT_BUDGET = 5.0


@dataclass(frozen=True)
class UbParams:
    base_size: int = 60
    n_try: int = 50
    n_initial_greedy: int = 10

    def __post_init__(self):
        if min(self.base_size, self.n_try, self.n_initial_greedy) <= 0:
            raise ValueError("all upper-bound parameters must be positive")


@dataclass(frozen=True)
class Solution:
    pi: PmcSet
    value: int
    best_td: TreeDecomposition


def solution_from_members(
    g: Graph, members, cancel: CancelToken | None = None
) -> Solution:
    pi = PmcSet(g, members, verify=False)
    res = tw_over_pi(g, pi, cancel)
    if res.value is None:
        raise ValueError("PMC set admits no tree-decomposition")
    return Solution(pi=pi, value=res.value, best_td=res.witness)


def initial_solution(
    g: Graph, params: UbParams, rng: random.Random, cancel: CancelToken | None = None
) -> Solution:
    """Best of several randomized greedy triangulations, as a PMC set."""
    best = None
    for _ in range(params.n_initial_greedy):
        check(cancel)
        t = mmaf(g, rng)
        if best is None or t.width < best.width:
            best = t
    return solution_from_members(g, best.cliques, cancel)


def _largest_component(comps: list[int]) -> int:
    # components() lists by ascending minimum vertex, so the first maximum
    # also realizes the min-vertex tie-break
    return max(comps, key=lambda c: c.bit_count())


def _region_cliques(
    g: Graph, region: int, params: UbParams, rng: random.Random,
    cancel: CancelToken | None,
) -> tuple[int, list[int]]:
    """Triangulate the completed region graph; returns (width, host cliques)."""
    comps = components(g, g.full & ~region)
    h, verts = subgraph(g, region, completed=[neighborhood(g, c) for c in comps])
    if h.n <= params.base_size:
        try:
            budget = CancelToken.with_timeout(REGION_EXACT_BUDGET, parent=cancel)
            width, td = exact_tw(h, cancel=budget)
            local = td.bags
        except Cancelled:
            if cancel is not None and cancel.is_set():
                raise
            t = mmaf(h, rng)
            width, local = t.width, t.cliques
    else:
        t = mmaf(h, rng)
        width, local = t.width, t.cliques
    cliques = []
    for b in local:
        m = 0
        for v in iter_bits(b):
            m |= bit(verts[v])
        cliques.append(m)
    return width, cliques


def merge(
    g: Graph,
    sol: Solution,
    omega: Solution,
    params: UbParams,
    rng: random.Random,
    cancel: CancelToken | None = None,
) -> Solution:
    """Merge two solutions into one at least as good as either.

    Picks a random bag X of the first solution, takes the largest component
    C left by X, and for nearby bags Y of the second solution triangulates
    the completed interface region N[C] inter N[D]; cliques of those
    triangulations that are PMCs of g enrich the union.
    """
    members = set(sol.pi.members) | set(omega.pi.members)
    x = rng.choice(sol.pi.sorted_members())
    comps = components(g, g.full & ~x)
    if comps:
        c = _largest_component(comps)
        nc = c | neighborhood(g, c)
        candidates = []
        for y in omega.pi.sorted_members():
            if y == x or y & ~nc or y.bit_count() > sol.value:
                continue
            home = [d for d in components(g, g.full & ~y) if x & ~(d | neighborhood(g, d)) == 0]
            if len(home) != 1:
                continue
            d = home[0]
            u = nc & (d | neighborhood(g, d))
            candidates.append((u.bit_count(), u, y))
        candidates.sort(key=lambda t: (t[0], t[2]))
        for _, u, _y in candidates[: params.n_try]:
            try:
                check(cancel)
                width, cliques = _region_cliques(g, u, params, rng, cancel)
            except Cancelled:
                break
            if width <= sol.value:
                members.update(m for m in cliques if is_pmc(g, m))
    merged = solution_from_members(g, members, cancel)
    assert merged.value <= min(sol.value, omega.value)
    return merged


def improve(
    g: Graph,
    sol: Solution,
    params: UbParams,
    rng: random.Random,
    cancel: CancelToken | None = None,
    _depth: int = 0,
) -> Solution:
    """One improvement round: build an independent solution at least as good
    as the current one, then merge with it.  The result's value never exceeds
    the input's; on cancellation the best solution so far is returned."""
    try:
        check(cancel)
        omega = initial_solution(g, params, rng, cancel)
        rounds = 0
        while omega.value > sol.value and _depth < IMPROVE_DEPTH_CAP and rounds < IMPROVE_DEPTH_CAP:
            check(cancel)
            omega = improve(g, omega, params, rng, cancel, _depth + 1)
            rounds += 1
        return merge(g, sol, omega, params, rng, cancel)
    except Cancelled:
        return sol


def shrink_solution(sol: Solution) -> Solution:
    """Drop members larger than value + 2; the witness is untouched since its
    bags are at most value + 1."""
    cap = sol.value + 2
    kept = [m for m in sol.pi.members if m.bit_count() <= cap]
    return Solution(
        pi=PmcSet(sol.pi.host, kept, verify=False),
        value=sol.value,
        best_td=sol.best_td,
    )


def ub_main_loop(
    g: Graph,
    params: UbParams,
    rng: random.Random,
    bounds: SharedBounds,
    budget: CancelToken | None = None,
) -> Iterator[tuple[int, TreeDecomposition]]:
    """Emit strictly improving (width, decomposition) pairs until the shared
    lower bound is reached or the budget expires."""
    sol = initial_solution(g, params, rng, budget)
    bounds.update_upper(sol.value)
    yield sol.value, sol.best_td
    while sol.value > bounds.lower:
        if budget is not None and budget.is_set():
            break
        improved = improve(g, sol, params, rng, budget)
        if improved.value < sol.value:
            sol = shrink_solution(improved)
            bounds.update_upper(sol.value)
            yield sol.value, sol.best_td
        else:
            sol = improved
        if budget is not None and budget.is_set():
            break
