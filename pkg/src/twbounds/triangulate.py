"""Minimal triangulation via greedy minimum-average-fill elimination.

The greedy phase repeatedly eliminates the vertex whose neighborhood needs
the fewest fill edges per neighbor; a post-pass then removes redundant fill
edges until the triangulation is inclusion-minimal.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .bitset import bit, iter_bits
from .graph import Graph, add_fill


@dataclass(frozen=True)
class Triangulation:
    base: Graph
    fill_edges: frozenset[tuple[int, int]]
    chordal: Graph
    cliques: list[int] = field(compare=False)

    @property
    def width(self) -> int:
        if not self.cliques:
            return -1
        return max(c.bit_count() for c in self.cliques) - 1


def _mcs_order(h: Graph) -> list[int]:
    """Maximum cardinality search pick order, ties to the lowest index."""
    weight = [0] * h.n
    picked = 0
    order = []
    for _ in range(h.n):
        best = -1
        best_w = -1
        for v in range(h.n):
            if not picked & bit(v) and weight[v] > best_w:
                best, best_w = v, weight[v]
        order.append(best)
        picked |= bit(best)
        for u in iter_bits(h.adj[best] & ~picked):
            weight[u] += 1
    return order


def _peo_violation(h: Graph, order: list[int]) -> bool:
    """Tarjan-Yannakakis test: True iff the reversed order is not a PEO."""
    pos = [0] * h.n
    for i, v in enumerate(order):
        pos[v] = i
    picked = 0
    for v in order:
        earlier = h.adj[v] & picked
        picked |= bit(v)
        if not earlier:
            continue
        parent = max(iter_bits(earlier), key=lambda u: pos[u])
        if earlier & ~bit(parent) & ~h.adj[parent]:
            return True
    return False


def is_chordal(h: Graph) -> bool:
    return not _peo_violation(h, _mcs_order(h))


def maximal_cliques_of_chordal(h: Graph) -> list[int]:
    """Maximal cliques of a chordal graph, via an MCS elimination ordering."""
    order = _mcs_order(h)
    if _peo_violation(h, order):
        raise ValueError("graph is not chordal")
    picked = 0
    candidates = []
    for v in order:
        candidates.append(bit(v) | (h.adj[v] & picked))
        picked |= bit(v)
    candidates.sort(key=lambda c: -c.bit_count())
    cliques: list[int] = []
    for c in candidates:
        if not any(c & ~kept == 0 for kept in cliques):
            cliques.append(c)
    return cliques


def _fill_count(adj: list[int], alive: int, v: int) -> int:
    nbrs = adj[v] & alive
    missing = 0
    for u in iter_bits(nbrs):
        missing += (nbrs & ~adj[u] & ~bit(u)).bit_count()
    return missing // 2


def mmaf(g: Graph, rng: random.Random | None = None) -> Triangulation:
    """Minimal triangulation favoring low treewidth.

    Elimination picks the vertex minimizing fill-per-neighbor, breaking ties
    by fewer fills and then by rng (lowest index when rng is None); the rng
    never overrides the ranking, so quality is stable across seeds.
    """
    adj = list(g.adj)
    alive = g.full
    fills: list[tuple[int, int]] = []
    while alive:
        best_key = None
        tied: list[int] = []
        for v in iter_bits(alive):
            deg = (adj[v] & alive).bit_count()
            fc = _fill_count(adj, alive, v)
            key = (fc / max(1, deg), fc)
            if best_key is None or key < best_key:
                best_key, tied = key, [v]
            elif key == best_key:
                tied.append(v)
        v = tied[0] if rng is None or len(tied) == 1 else rng.choice(tied)
        nbrs = adj[v] & alive
        for u in iter_bits(nbrs):
            missing = nbrs & ~adj[u] & ~bit(u)
            for w in iter_bits(missing):
                if u < w:
                    fills.append((u, w))
                adj[u] |= bit(w)
                adj[w] |= bit(u)
        alive &= ~bit(v)

    chordal = g
    for e in fills:
        chordal = add_fill(chordal, e)

    # inclusion-minimality: drop any fill whose removal keeps the graph chordal
    kept = list(fills)
    changed = True
    while changed:
        changed = False
        for e in list(kept):
            u, v = e
            trial_adj = list(chordal.adj)
            trial_adj[u] &= ~bit(v)
            trial_adj[v] &= ~bit(u)
            trial = Graph(chordal.n, trial_adj)
            if is_chordal(trial):
                chordal = trial
                kept.remove(e)
                changed = True
    return Triangulation(
        base=g,
        fill_edges=frozenset(kept),
        chordal=chordal,
        cliques=maximal_cliques_of_chordal(chordal),
    )
