"""Independent brute-force oracles and graph builders for the test suite.

Everything here is deliberately naive and kept separate from the package
implementation: elimination-ordering treewidth by subset DP, separator and
PMC enumeration by subset scan, contraction by partition-and-merge over
plain Python sets.
"""

import itertools

from twbounds.bitset import bit, iter_bits, mask_of
from twbounds.graph import Graph


def random_graph(n, p, rng):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def random_connected_graph(n, p, rng):
    """Random spanning tree plus density-p extras."""
    edges = set()
    for v in range(1, n):
        edges.add((rng.randrange(v), v))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.add((u, v))
    return Graph.from_edges(n, sorted(edges))


def grid_graph(rows, cols):
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph.from_edges(rows * cols, edges)


def petersen_graph():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    return Graph.from_edges(10, outer + inner + spokes)


def cycle_graph(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n):
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def complete_bipartite(a, b):
    return Graph.from_edges(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def oracle_tw(g):
    """Exact treewidth: min over elimination orderings of the max degree at
    elimination time, memoized over eliminated subsets."""
    n = g.n
    if n == 0:
        return -1

    def elim_degree(eliminated, v):
        # neighbors of v in the graph where `eliminated` was contracted away
        seen = bit(v)
        todo = bit(v)
        reach = 0
        while todo:
            b = todo & -todo
            todo ^= b
            nb = g.adj[b.bit_length() - 1]
            reach |= nb & ~eliminated
            new = nb & eliminated & ~seen
            seen |= new
            todo |= new
        return (reach & ~bit(v)).bit_count()

    f = {0: -1}
    for size in range(1, n + 1):
        for combo in itertools.combinations(range(n), size):
            s = mask_of(combo)
            f[s] = min(
                max(f[s & ~bit(v)], elim_degree(s & ~bit(v), v)) for v in combo
            )
    return f[g.full]


def oracle_components(g, within):
    """Connected components by dict-based BFS over plain sets."""
    within_set = set(iter_bits(within))
    comps = []
    left = set(within_set)
    while left:
        start = min(left)
        seen = {start}
        queue = [start]
        while queue:
            v = queue.pop()
            for u in iter_bits(g.adj[v]):
                if u in within_set and u not in seen:
                    seen.add(u)
                    queue.append(u)
        comps.append(mask_of(seen))
        left -= seen
    return sorted(comps, key=lambda m: m & -m)


def oracle_min_seps(g):
    """All minimal separators by subset scan over the definition."""
    out = set()
    for size in range(1, g.n):
        for combo in itertools.combinations(range(g.n), size):
            s = mask_of(combo)
            comps = oracle_components(g, g.full & ~s)
            full = 0
            for c in comps:
                nb = 0
                for v in iter_bits(c):
                    nb |= g.adj[v]
                if nb & ~c == s:
                    full += 1
            if full >= 2:
                out.add(s)
    return out


def oracle_contract(g, classes):
    """Contraction by partition-then-merge over plain Python sets."""
    groups = [set(iter_bits(c)) for c in classes]
    where = {}
    for i, grp in enumerate(groups):
        for v in grp:
            where[v] = i
    adj = [set() for _ in groups]
    for u in range(g.n):
        for v in iter_bits(g.adj[u]):
            iu, iv = where[u], where[v]
            if iu != iv:
                adj[iu].add(iv)
                adj[iv].add(iu)
    return Graph.from_edges(
        len(groups), [(i, j) for i in range(len(groups)) for j in adj[i] if i < j]
    )


def oracle_is_chordal(g):
    """Chordality by scanning for an induced cycle on four or more vertices."""
    for size in range(4, g.n + 1):
        for combo in itertools.combinations(range(g.n), size):
            degs = []
            sub = mask_of(combo)
            for v in combo:
                degs.append((g.adj[v] & sub).bit_count())
            if all(d == 2 for d in degs):
                comps = oracle_components(g, sub)
                if len(comps) == 1:
                    return False
    return True


def all_minimal_triangulations(g):
    """Fill-edge sets of every minimal triangulation (tiny graphs only)."""
    fills = [
        (u, v)
        for u in range(g.n)
        for v in range(u + 1, g.n)
        if not g.adj[u] & bit(v)
    ]
    chordal_sets = []
    for r in range(len(fills) + 1):
        for sub in itertools.combinations(fills, r):
            adj = list(g.adj)
            for u, v in sub:
                adj[u] |= bit(v)
                adj[v] |= bit(u)
            if oracle_is_chordal(Graph(g.n, adj)):
                chordal_sets.append(frozenset(sub))
    return [fs for fs in chordal_sets if not any(o < fs for o in chordal_sets)]


def oracle_max_cliques(g):
    cliques = []
    for size in range(1, g.n + 1):
        for combo in itertools.combinations(range(g.n), size):
            m = mask_of(combo)
            if all(not (m & ~g.adj[u] & ~bit(u)) for u in combo):
                cliques.append(m)
    return [c for c in cliques if not any(c != d and c & ~d == 0 for d in cliques)]


def oracle_pmcs_definitional(g):
    """PMCs as maximal cliques over all minimal triangulations."""
    out = set()
    for fs in all_minimal_triangulations(g):
        adj = list(g.adj)
        for u, v in fs:
            adj[u] |= bit(v)
            adj[v] |= bit(u)
        out.update(oracle_max_cliques(Graph(g.n, adj)))
    return out
