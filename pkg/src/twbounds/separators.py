"""Minimal separators, potential maximal cliques, blocks, and width-k safety."""

from __future__ import annotations

from collections import deque
from collections.abc import Callable
from dataclasses import dataclass

from .bitset import bit, iter_bits
from .control import CancelToken, check
from .graph import Graph, components, neighborhood, subgraph


def is_clique(g: Graph, s: int) -> bool:
    for u in iter_bits(s):
        if s & ~g.adj[u] & ~bit(u):
            return False
    return True


def is_almost_clique(g: Graph, s: int) -> bool:
    """True iff s, or s minus one vertex, is a clique of g."""
    deficient = 0
    for u in iter_bits(s):
        if s & ~g.adj[u] & ~bit(u):
            deficient |= bit(u)
    if deficient == 0:
        return True
    # removing a vertex can only help if it is itself deficient
    for v in iter_bits(deficient):
        if is_clique(g, s & ~bit(v)):
            return True
    return False


def full_components(g: Graph, s: int) -> list[int]:
    return [c for c in components(g, g.full & ~s) if neighborhood(g, c) == s]


def is_minimal_separator(g: Graph, s: int) -> bool:
    """True iff at least two components of g - s see all of s."""
    if s == 0:
        return False
    adj = g.adj
    outside = g.full & ~s
    fulls = 0
    rest = outside
    while rest:
        comp = rest & -rest
        todo = comp
        nb = 0
        while todo:
            b = todo & -todo
            todo ^= b
            row = adj[b.bit_length() - 1]
            nb |= row
            new = row & outside & ~comp
            comp |= new
            todo |= new
        if nb & ~comp == s:
            fulls += 1
            if fulls == 2:
                return True
        rest &= ~comp
    return False


def enumerate_min_seps(
    g: Graph, max_size: int, cancel: CancelToken | None = None
) -> list[int]:
    """All minimal separators of size <= max_size.

    Neighborhood expansion: seed with N(C) for the components C left by
    deleting a closed neighborhood, then repeatedly expand each separator S
    through every x in S via the components of g - (S u N[x]).  Every
    candidate is verified against the two-full-components definition before
    it is kept.
    """
    if max_size < 1:
        raise ValueError("max_size must be at least 1")
    seen: set[int] = set()
    out: list[int] = []
    queue: deque[int] = deque()

    def offer(s: int) -> None:
        if s == 0 or s in seen:
            return
        seen.add(s)
        if s.bit_count() <= max_size and is_minimal_separator(g, s):
            out.append(s)
            queue.append(s)

    for v in range(g.n):
        check(cancel)
        for c in components(g, g.full & ~(g.adj[v] | bit(v))):
            offer(neighborhood(g, c))
    while queue:
        check(cancel)
        s = queue.popleft()
        for x in iter_bits(s):
            removed = s | g.adj[x]
            for c in components(g, g.full & ~removed):
                offer(neighborhood(g, c))
    return out


def is_pmc(g: Graph, x: int) -> bool:
    """Local potential-maximal-clique test: no full component, and every
    non-adjacent pair of x is joined through the neighborhood of a common
    component of g - x."""
    if x == 0:
        return False
    adj = g.adj
    outside = g.full & ~x
    seps: list[int] = []
    rest = outside
    while rest:
        comp = rest & -rest
        todo = comp
        nb = 0
        while todo:
            b = todo & -todo
            todo ^= b
            row = adj[b.bit_length() - 1]
            nb |= row
            new = row & outside & ~comp
            comp |= new
            todo |= new
        s = nb & ~comp
        if s == x:
            return False
        seps.append(s)
        rest &= ~comp
    m = x
    while m:
        b = m & -m
        m ^= b
        need = x & ~(adj[b.bit_length() - 1] | b)
        if need:
            for s in seps:
                if s & b:
                    need &= ~s
                    if not need:
                        break
            if need:
                return False
    return True


@dataclass(frozen=True)
class Block:
    """A component C of g - x together with its separator N(C); the
    realization completes the separator into a clique on g[N[C]]."""

    separator: int
    component: int

    def realization(self, g: Graph) -> tuple[Graph, list[int]]:
        return subgraph(g, self.separator | self.component, completed=[self.separator])


def blocks_of(g: Graph, x: int) -> list[Block]:
    return [
        Block(separator=neighborhood(g, c), component=c)
        for c in components(g, g.full & ~x)
    ]


Decider = Callable[[Graph, int, "CancelToken | None"], bool]


def is_safe_for_width(
    g: Graph,
    s: int,
    k: int,
    decider: Decider,
    cancel: CancelToken | None = None,
) -> bool:
    """True iff some width-k tree-decomposition of g induces s.

    For a minimal separator this is equivalent to every block realization
    having treewidth at most k: gluing the block decompositions at a bag
    holding the completed separator reassembles a width-k decomposition.
    """
    if s.bit_count() > k:
        return False
    for block in blocks_of(g, s):
        check(cancel)
        h, _ = block.realization(g)
        if not decider(h, k, cancel):
            return False
    return True


def crosses(h: Graph, s: int, a: int, b: int) -> bool:
    """True iff minor vertices a and b lie in distinct components of h - s."""
    if s & (bit(a) | bit(b)):
        return False
    for c in components(h, h.full & ~s):
        if c & bit(a):
            return not c & bit(b)
    return False
