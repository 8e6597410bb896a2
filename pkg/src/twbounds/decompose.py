"""Problem reduction by almost-clique minimal separator decomposition.

The clique tree of a heuristic minimal triangulation supplies pairwise
parallel minimal-separator candidates; tree edges whose separator is not an
almost-clique of the base graph (or not bilaterally full in it) are
contracted away, leaving a coarser tree-decomposition whose parts can be
solved independently and recombined.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .bitset import bit, iter_bits
from .btdp import TreeDecomposition, validate_td
from .graph import Graph, components, neighborhood, subgraph
from .separators import is_almost_clique, is_clique
from .triangulate import mmaf


@dataclass(frozen=True)
class Part:
    """One bag's graph, its separators completed, relabeled to 0..len-1.

    `origin` witnesses that the part is a minor of the host: local vertex i
    stands for the connected set origin[i] of host vertices (the vertex
    itself plus any outside components contracted into it).
    """

    bag: int
    graph: Graph
    verts: tuple[int, ...]
    origin: tuple[int, ...]

    def lift_group(self, local_group: int) -> int:
        m = 0
        for v in iter_bits(local_group):
            m |= self.origin[v]
        return m


@dataclass(frozen=True)
class AcsDecomposition:
    td: TreeDecomposition
    parts: tuple[Part, ...]

    @property
    def bags(self) -> tuple[int, ...]:
        return self.td.bags

    def induced_separators(self) -> list[int]:
        return [self.td.bags[i] & self.td.bags[j] for i, j in self.td.tree_edges]


def realize_part(g: Graph, bag: int) -> Part:
    """The graph on `bag` with every outside-component neighborhood completed,
    plus the contraction origins that witness it as a minor of g."""
    comps = components(g, g.full & ~bag)
    seps = [neighborhood(g, c) for c in comps]
    graph, verts = subgraph(g, bag, completed=seps)
    index = {v: i for i, v in enumerate(verts)}
    origin = [bit(v) for v in verts]
    for c, s in zip(comps, seps):
        if is_clique(g, s):
            continue  # already realized by plain deletion
        for v in iter_bits(s):
            if is_clique(g, s & ~bit(v)):
                origin[index[v]] |= c
                break
        else:
            raise ValueError("outside-component neighborhood is not an almost-clique")
    return Part(bag=bag, graph=graph, verts=tuple(verts), origin=tuple(origin))


def _clique_tree(cliques: list[int]) -> list[tuple[int, int]]:
    """Maximum-weight spanning tree on intersection sizes (Prim, deterministic)."""
    r = len(cliques)
    if r <= 1:
        return []
    in_tree = {0}
    edges: list[tuple[int, int]] = []
    best: dict[int, tuple[int, int]] = {}
    for j in range(1, r):
        best[j] = ((cliques[0] & cliques[j]).bit_count(), 0)
    while len(in_tree) < r:
        j = max(best, key=lambda x: (best[x][0], -x))
        w, i = best.pop(j)
        in_tree.add(j)
        edges.append((min(i, j), max(i, j)))
        for o in best:
            wn = (cliques[j] & cliques[o]).bit_count()
            if wn > best[o][0]:
                best[o] = (wn, j)
    return edges


def _bilaterally_full(g: Graph, s: int, side_a: int, side_b: int) -> bool:
    """Both sides of s must contain a component seeing all of s (for s = 0,
    a component contained in the side: the disconnected split case)."""
    for side in (side_a, side_b):
        ok = False
        for c in components(g, g.full & ~s):
            if c & ~side:
                continue
            if neighborhood(g, c) == s:
                ok = True
                break
        if not ok:
            return False
    return True


def decompose(g: Graph, rng: random.Random | None = None) -> AcsDecomposition:
    """Almost-clique separator decomposition of g.

    Falls back to the trivial single-bag decomposition when no clique-tree
    separator qualifies.
    """
    tri = mmaf(g, rng)
    cliques = tri.cliques
    tree = _clique_tree(cliques)

    adj: dict[int, list[tuple[int, int]]] = {i: [] for i in range(len(cliques))}
    for idx, (i, j) in enumerate(tree):
        adj[i].append((j, idx))
        adj[j].append((i, idx))

    def side_union(start: int, blocked_edge: int) -> int:
        seen = {start}
        stack = [start]
        m = 0
        while stack:
            x = stack.pop()
            m |= cliques[x]
            for y, eidx in adj[x]:
                if eidx != blocked_edge and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return m

    kept: list[int] = []
    for idx, (i, j) in enumerate(tree):
        s = cliques[i] & cliques[j]
        if not is_almost_clique(g, s):
            continue
        side_i = side_union(i, idx) & ~s
        side_j = side_union(j, idx) & ~s
        if _bilaterally_full(g, s, side_i, side_j):
            kept.append(idx)

    # contract the clique tree along non-kept edges
    group = list(range(len(cliques)))

    def find(x: int) -> int:
        while group[x] != x:
            group[x] = group[group[x]]
            x = group[x]
        return x

    kept_set = set(kept)
    for idx, (i, j) in enumerate(tree):
        if idx not in kept_set:
            group[find(i)] = find(j)

    roots = sorted({find(i) for i in range(len(cliques))})
    bag_index = {r: x for x, r in enumerate(roots)}
    bags = [0] * len(roots)
    for i, c in enumerate(cliques):
        bags[bag_index[find(i)]] |= c
    td_edges = sorted(
        {
            tuple(sorted((bag_index[find(i)], bag_index[find(j)])))
            for idx, (i, j) in enumerate(tree)
            if idx in kept_set
        }
    )
    width = max(b.bit_count() for b in bags) - 1
    td = TreeDecomposition(tuple(bags), tuple(td_edges), width)
    if validate_td(g, td) is not None:
        # should not happen; fail safe with the trivial decomposition
        td = TreeDecomposition((g.full,), (), g.n - 1)
    parts = tuple(realize_part(g, bag) for bag in td.bags)
    return AcsDecomposition(td=td, parts=parts)


def recombine(
    dec: AcsDecomposition, part_tds: list[TreeDecomposition]
) -> TreeDecomposition:
    """Glue per-part tree-decompositions along the decomposition separators.

    Each part decomposition is validated against its part graph and mapped
    back to host labels; adjacent parts are connected at bags holding the
    shared separator (a completed clique, so such bags exist).
    """
    if len(part_tds) != len(dec.parts):
        raise ValueError(f"expected {len(dec.parts)} part decompositions")
    mapped: list[list[int]] = []
    offsets: list[int] = []
    bags: list[int] = []
    edges: list[tuple[int, int]] = []
    for part, td in zip(dec.parts, part_tds):
        bad = validate_td(part.graph, td)
        if bad is not None:
            raise ValueError(f"invalid decomposition for part: {bad}")
        offsets.append(len(bags))
        local = []
        for b in td.bags:
            m = 0
            for v in iter_bits(b):
                m |= bit(part.verts[v])
            local.append(m)
        mapped.append(local)
        base = offsets[-1]
        bags.extend(local)
        edges.extend((base + a, base + b) for a, b in td.tree_edges)
    for i, j in dec.td.tree_edges:
        s = dec.td.bags[i] & dec.td.bags[j]
        try:
            bi = next(x for x, b in enumerate(mapped[i]) if s & ~b == 0)
            bj = next(x for x, b in enumerate(mapped[j]) if s & ~b == 0)
        except StopIteration:
            raise ValueError("part decomposition has no bag holding the separator")
        edges.append((offsets[i] + bi, offsets[j] + bj))
    width = max(b.bit_count() for b in bags) - 1
    return TreeDecomposition(tuple(bags), tuple(edges), width)
