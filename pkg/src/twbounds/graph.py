"""Immutable simple graphs over bitmask vertex sets, plus contraction minors.

Hot helpers (components, neighborhood) avoid generator overhead by popping
bits inline; they are the innermost loops of the whole solver.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator

from .bitset import bit, full_mask, iter_bits


class Graph:
    """Simple undirected graph on vertices 0..n-1 with bitmask adjacency.

    Immutable after construction; deriving a graph (added fill, contraction,
    induced subgraph) always builds a new value.
    """

    __slots__ = ("n", "adj", "full")

    def __init__(self, n: int, adj: list[int] | tuple[int, ...]):
        if len(adj) != n:
            raise ValueError(f"adjacency has {len(adj)} rows for {n} vertices")
        self.n = n
        self.full = full_mask(n)
        for v, row in enumerate(adj):
            if row & bit(v):
                raise ValueError(f"self-loop at vertex {v}")
            if row & ~self.full:
                raise ValueError(f"adjacency row {v} mentions vertices >= {n}")
        for v, row in enumerate(adj):
            for u in iter_bits(row):
                if not adj[u] & bit(v):
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")
        self.adj = tuple(adj)

    @classmethod
    def unchecked(cls, n: int, adj: Iterable[int]) -> "Graph":
        """Construction bypassing validation; caller guarantees the rows are
        symmetric, loop-free, and within range."""
        g = object.__new__(cls)
        g.n = n
        g.full = full_mask(n)
        g.adj = tuple(adj)
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u] |= bit(v)
            adj[v] |= bit(u)
        return cls(n, adj)

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in iter_bits(self.adj[u] >> (u + 1)):
                yield u, u + 1 + v

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] & bit(v))

    def adjacency_key(self) -> tuple[int, ...]:
        """Hashable identity of this graph, for memo tables."""
        return self.adj

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def neighborhood(g: Graph, u: int) -> int:
    """Open neighborhood N(U) of the vertex set u (bitmask in, bitmask out)."""
    adj = g.adj
    nb = 0
    m = u
    while m:
        b = m & -m
        nb |= adj[b.bit_length() - 1]
        m ^= b
    return nb & ~u


def closed_neighborhood(g: Graph, u: int) -> int:
    return u | neighborhood(g, u)


def components(g: Graph, within: int) -> list[int]:
    """Connected components of g[within], ordered by their minimum vertex."""
    adj = g.adj
    comps = []
    rest = within
    while rest:
        comp = rest & -rest
        todo = comp
        while todo:
            b = todo & -todo
            todo ^= b
            new = adj[b.bit_length() - 1] & within & ~comp
            comp |= new
            todo |= new
        comps.append(comp)
        rest &= ~comp
    return comps


def is_connected(g: Graph, within: int) -> bool:
    if within == 0:
        return True
    adj = g.adj
    comp = within & -within
    todo = comp
    while todo:
        b = todo & -todo
        todo ^= b
        new = adj[b.bit_length() - 1] & within & ~comp
        comp |= new
        todo |= new
    return comp == within


def add_fill(g: Graph, e: tuple[int, int]) -> Graph:
    """Graph G + e for a fill e (a non-adjacent vertex pair)."""
    u, v = e
    if u == v:
        raise ValueError(f"fill {e} is a self-loop")
    if g.adj[u] & bit(v):
        raise ValueError(f"fill {e} is already an edge")
    adj = list(g.adj)
    adj[u] |= bit(v)
    adj[v] |= bit(u)
    return Graph.unchecked(g.n, adj)


def enumerate_fills(g: Graph) -> list[tuple[int, int]]:
    """All non-adjacent vertex pairs, ascending (u, v) order."""
    fills = []
    for u in range(g.n):
        non = g.full & ~g.adj[u] & ~bit(u)
        for v in iter_bits(non >> (u + 1)):
            fills.append((u, u + 1 + v))
    return fills


def subgraph(g: Graph, verts: int, completed: Iterable[int] = ()) -> tuple[Graph, list[int]]:
    """Induced subgraph g[verts], relabeled to 0..|verts|-1.

    Each mask in `completed` is turned into a clique on top of the induced
    edges (used for block and bag realizations).  Returns the new graph and
    the list mapping new labels to original vertices.
    """
    vlist = list(iter_bits(verts))
    index = {v: i for i, v in enumerate(vlist)}
    adj = [0] * len(vlist)
    for i, v in enumerate(vlist):
        for u in iter_bits(g.adj[v] & verts):
            adj[i] |= bit(index[u])
    for cl in completed:
        members = [index[v] for v in iter_bits(cl & verts)]
        cm = 0
        for i in members:
            cm |= bit(i)
        for i in members:
            adj[i] |= cm & ~bit(i)
    return Graph.unchecked(len(vlist), adj), vlist


def degeneracy(g: Graph) -> int:
    """Degeneracy of g; a lower bound on its treewidth."""
    alive = g.full
    deg = [g.degree(v) for v in range(g.n)]
    best = 0
    for _ in range(g.n):
        v = min(iter_bits(alive), key=lambda u: deg[u])
        best = max(best, deg[v])
        alive &= ~bit(v)
        for u in iter_bits(g.adj[v] & alive):
            deg[u] -= 1
    return best


class ContractionForest:
    """A forest of edges of a host graph, defining the contraction minor G/F.

    The partition into forest components and the vertex_of map are derived
    once at construction; minor vertices are numbered by ascending minimum
    original vertex.
    """

    __slots__ = ("edges", "classes", "vertex_of")

    def __init__(self, g: Graph, edges: Iterable[tuple[int, int]]):
        canon = frozenset((u, v) if u < v else (v, u) for u, v in edges)
        parent = list(range(g.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in sorted(canon):
            if not g.adj[u] & bit(v):
                raise ValueError(f"forest edge ({u}, {v}) is not an edge of the graph")
            ru, rv = find(u), find(v)
            if ru == rv:
                raise ValueError(f"forest edge ({u}, {v}) closes a cycle")
            parent[max(ru, rv)] = min(ru, rv)

        groups: dict[int, int] = {}
        for v in range(g.n):
            r = find(v)
            groups[r] = groups.get(r, 0) | bit(v)
        self.edges = canon
        self.classes = tuple(groups[r] for r in sorted(groups))
        vertex_of = [0] * g.n
        for i, cls in enumerate(self.classes):
            for v in iter_bits(cls):
                vertex_of[v] = i
        self.vertex_of = tuple(vertex_of)

    def __len__(self) -> int:
        return len(self.edges)

    def minus(self, g: Graph, removed: Iterable[tuple[int, int]]) -> "ContractionForest":
        gone = {(u, v) if u < v else (v, u) for u, v in removed}
        return ContractionForest(g, self.edges - gone)

    def plus(self, g: Graph, added: Iterable[tuple[int, int]]) -> "ContractionForest":
        extra = {(u, v) if u < v else (v, u) for u, v in added}
        return ContractionForest(g, self.edges | extra)


def contract(g: Graph, f: ContractionForest) -> tuple[Graph, tuple[int, ...]]:
    """The contraction G/F and the map from original to minor vertices."""
    k = len(f.classes)
    adj = [0] * k
    vertex_of = f.vertex_of
    for u, v in g.edges():
        cu, cv = vertex_of[u], vertex_of[v]
        if cu != cv:
            adj[cu] |= bit(cv)
            adj[cv] |= bit(cu)
    return Graph.unchecked(k, adj), vertex_of
