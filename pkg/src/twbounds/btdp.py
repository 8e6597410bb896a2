"""Bouchitte-Todinca dynamic programming over potential maximal cliques.

Two uses: computing the best width achievable with bags drawn from a given
PMC set (with tree-decomposition extraction), and an exact treewidth decider
for small graphs built on size-bounded PMC enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bitset import bit, iter_bits
from .control import CancelToken, SizeCapExceeded, check
from .graph import Graph, components, degeneracy, neighborhood
from .separators import enumerate_min_seps, is_pmc

SIZE_CAP = 64

INF = float("inf")


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[int, ...]
    tree_edges: tuple[tuple[int, int], ...]
    width: int


@dataclass(frozen=True)
class TdViolation:
    kind: str
    message: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


def validate_td(g: Graph, td: TreeDecomposition) -> TdViolation | None:
    """Check the three decomposition conditions plus tree shape and width.

    Returns None when valid, otherwise the first violation found.
    """
    nbags = len(td.bags)
    if nbags == 0:
        if g.n == 0:
            return None
        return TdViolation("vertex-coverage", "no bags but graph has vertices")
    for a, b in td.tree_edges:
        if not (0 <= a < nbags and 0 <= b < nbags):
            return TdViolation("tree-shape", f"edge ({a}, {b}) references a missing bag")
    if len(td.tree_edges) != nbags - 1:
        return TdViolation(
            "tree-shape",
            f"{nbags} bags need {nbags - 1} tree edges, found {len(td.tree_edges)}",
        )
    adj: list[list[int]] = [[] for _ in range(nbags)]
    for a, b in td.tree_edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != nbags:
        return TdViolation("tree-shape", "bag tree is disconnected")

    union = 0
    for b in td.bags:
        union |= b
    if union != g.full:
        v = (g.full & ~union).bit_length() - 1
        return TdViolation("vertex-coverage", f"vertex {v} is in no bag")
    for u, v in g.edges():
        e = bit(u) | bit(v)
        if not any(b & e == e for b in td.bags):
            return TdViolation("edge-coverage", f"edge ({u}, {v}) is in no bag")
    for v in range(g.n):
        holding = [i for i, b in enumerate(td.bags) if b & bit(v)]
        reach = {holding[0]}
        stack = [holding[0]]
        hold_set = set(holding)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in hold_set and y not in reach:
                    reach.add(y)
                    stack.append(y)
        if len(reach) != len(holding):
            return TdViolation("connectivity", f"bags holding vertex {v} are not connected")
    width = max(b.bit_count() for b in td.bags) - 1
    if width != td.width:
        return TdViolation("width", f"width field {td.width} but max bag gives {width}")
    return None


class PmcSet:
    """A deduplicated set of verified potential maximal cliques of one host."""

    __slots__ = ("host", "members")

    def __init__(self, host: Graph, members, verify: bool = True):
        dedup = frozenset(members)
        if verify:
            for x in dedup:
                if not is_pmc(host, x):
                    raise ValueError(f"{sorted(iter_bits(x))} is not a potential maximal clique")
        self.host = host
        self.members = dedup

    def __len__(self) -> int:
        return len(self.members)

    def __or__(self, other: "PmcSet") -> "PmcSet":
        if other.host is not self.host and other.host != self.host:
            raise ValueError("cannot union PMC sets of different hosts")
        return PmcSet(self.host, self.members | other.members, verify=False)

    def sorted_members(self) -> list[int]:
        return sorted(self.members, key=lambda x: (x.bit_count(), x))


@dataclass(frozen=True)
class DpResult:
    value: int | None
    witness: TreeDecomposition | None = field(default=None, compare=False)


def _bfs_order(g: Graph, comp: int) -> list[int]:
    start = comp & -comp
    order = [start.bit_length() - 1]
    seen = start
    for v in order:
        for u in iter_bits(g.adj[v] & comp & ~seen):
            order.append(u)
            seen |= bit(u)
    return order


def _component_pmcs(g: Graph, comp: int, bound: int, cancel: CancelToken | None) -> set[int]:
    """PMCs of g[comp] with at most `bound` vertices, grown vertex by vertex.

    Intermediate prefixes of a BFS order chain cheap candidates: the previous
    prefix's PMCs with and without the new vertex, closed neighborhoods, and
    the prefix itself.  The separator-derived candidates (S + v, and
    S u (T inter C) for separator pairs with C a component left by S) are
    only generated on the final graph, where they are needed.  Each candidate
    is kept only if it passes the local PMC test on its prefix.
    """
    order = _bfs_order(g, comp)
    cur: set[int] = set()
    verts = 0
    for v_new in order:
        check(cancel)
        verts |= bit(v_new)
        adj = [g.adj[v] & verts if verts & bit(v) else 0 for v in range(g.n)]
        gi = Graph.unchecked(g.n, adj)
        cands = {verts}
        for v in iter_bits(verts):
            cands.add(adj[v] | bit(v))
        for x in cur:
            cands.add(x)
            cands.add(x | bit(v_new))
        if verts == comp and bound >= 2 and verts.bit_count() >= 3:
            seps = enumerate_min_seps(gi, min(bound - 1, gi.n), cancel)
            for s in seps:
                for v in iter_bits(verts & ~s):
                    cands.add(s | bit(v))
            by_comp: dict[int, list[int]] = {}
            for s in seps:
                for c in components(gi, verts & ~s):
                    by_comp.setdefault(c, []).append(s)
            for c, slist in by_comp.items():
                check(cancel)
                tcs = {t & c for t in seps}
                tcs.discard(0)
                for s in slist:
                    for tc in tcs:
                        x = s | tc
                        if x.bit_count() <= bound:
                            cands.add(x)
        cur = set()
        for i, x in enumerate(cands):
            if not i % 512:
                check(cancel)
            if x.bit_count() <= bound and is_pmc(gi, x):
                cur.add(x)
    return cur


def enumerate_pmcs_upto(
    g: Graph, bound: int, cancel: CancelToken | None = None, size_cap: int = SIZE_CAP
) -> PmcSet:
    """All potential maximal cliques of g with at most `bound` vertices."""
    if g.n > size_cap:
        raise SizeCapExceeded(f"{g.n} vertices exceeds the decider cap of {size_cap}")
    if bound < 1:
        return PmcSet(g, (), verify=False)
    out: set[int] = set()
    for comp in components(g, g.full):
        out |= _component_pmcs(g, comp, bound, cancel)
    return PmcSet(g, out, verify=False)


def _dp_component(
    g: Graph, comp: int, pmcs: list[int], cancel: CancelToken | None
) -> tuple[int | float, dict[int, int], int | None]:
    """BT recurrence on one connected component.

    Returns (best width, block-key -> chosen bag, chosen root bag).  A block
    is keyed by its component mask C; its separator is N(C).
    """
    serving: dict[int, list[int]] = {}
    roots: list[int] = []
    for om in pmcs:
        check(cancel)
        if om & ~comp:
            continue
        roots.append(om)
        for d in components(g, comp & ~om):
            s = neighborhood(g, d)
            rest = om & ~s
            if not rest:
                continue
            home = None
            for c in components(g, comp & ~s):
                if c & rest:
                    if home is not None:
                        home = None
                        break
                    home = c
            if home is not None:
                serving.setdefault(home, []).append(om)

    dp_val: dict[int, int | float] = {}
    dp_bag: dict[int, int] = {}
    for c in sorted(serving, key=lambda m: (m.bit_count(), m)):
        check(cancel)
        best: int | float = INF
        best_bag = None
        for om in serving[c]:
            cost: int | float = om.bit_count() - 1
            for child in components(g, c & ~om):
                cost = max(cost, dp_val.get(child, INF))
                if cost >= best:
                    break
            if cost < best:
                best = cost
                best_bag = om
        if best_bag is not None:
            dp_val[c] = best
            dp_bag[c] = best_bag

    best: int | float = INF
    best_root = None
    for om in roots:
        cost = om.bit_count() - 1
        for d in components(g, comp & ~om):
            cost = max(cost, dp_val.get(d, INF))
            if cost >= best:
                break
        if cost < best:
            best = cost
            best_root = om
    return best, dp_bag, best_root


def _extract_component_td(
    g: Graph, comp: int, dp_bag: dict[int, int], root: int,
    bags: list[int], edges: list[tuple[int, int]],
) -> int:
    """Append the witness tree for one component; returns its root bag index."""
    root_idx = len(bags)
    bags.append(root)
    stack = [(root, root_idx, comp)]
    while stack:
        om, idx, region = stack.pop()
        for child in components(g, region & ~om):
            cbag = dp_bag[child]
            cidx = len(bags)
            bags.append(cbag)
            edges.append((idx, cidx))
            stack.append((cbag, cidx, child))
    return root_idx


def tw_over_pi(g: Graph, pi: PmcSet, cancel: CancelToken | None = None) -> DpResult:
    """Minimum width of a tree-decomposition of g with every bag in pi.

    Value is None when pi admits no tree-decomposition of g.  Runs in time
    linear in |pi| with a polynomial factor in n.
    """
    if g.n == 0:
        return DpResult(value=-1, witness=TreeDecomposition((), (), -1))
    pmcs = pi.sorted_members()
    comp_results = []
    for comp in components(g, g.full):
        best, dp_bag, root = _dp_component(g, comp, pmcs, cancel)
        if root is None or best is INF:
            return DpResult(value=None, witness=None)
        comp_results.append((comp, best, dp_bag, root))

    bags: list[int] = []
    edges: list[tuple[int, int]] = []
    comp_roots = []
    for comp, _, dp_bag, root in comp_results:
        comp_roots.append(_extract_component_td(g, comp, dp_bag, root, bags, edges))
    for prev, cur in zip(comp_roots, comp_roots[1:]):
        edges.append((prev, cur))
    value = max(best for _, best, _, _ in comp_results)
    td = TreeDecomposition(tuple(bags), tuple(edges), int(value))
    return DpResult(value=int(value), witness=td)


def decide_tw_leq(
    g: Graph, k: int, cancel: CancelToken | None = None, size_cap: int = SIZE_CAP
) -> tuple[bool, TreeDecomposition | None]:
    """Decide tw(g) <= k; on success also return a witness of width <= k."""
    if g.n > size_cap:
        raise SizeCapExceeded(f"{g.n} vertices exceeds the decider cap of {size_cap}")
    if k < 0:
        return (g.n == 0, None)
    if k >= g.n - 1:
        bags = [g.full] if g.n else []
        td = TreeDecomposition(tuple(bags), (), max(g.n - 1, -1))
        return True, td
    pi = enumerate_pmcs_upto(g, k + 1, cancel, size_cap=size_cap)
    res = tw_over_pi(g, pi, cancel)
    if res.value is not None and res.value <= k:
        return True, res.witness
    return False, None


def exact_tw(
    g: Graph,
    lb_hint: int = 0,
    ub_hint: int | None = None,
    cancel: CancelToken | None = None,
    size_cap: int = SIZE_CAP,
) -> tuple[int, TreeDecomposition]:
    """Exact treewidth with an optimal witness, iterating k upward from the
    larger of the caller's hint and the degeneracy bound."""
    if g.n > size_cap:
        raise SizeCapExceeded(f"{g.n} vertices exceeds the decider cap of {size_cap}")
    if g.n == 0:
        return -1, TreeDecomposition((), (), -1)
    k = max(lb_hint, degeneracy(g))
    while True:
        check(cancel)
        ok, td = decide_tw_leq(g, k, cancel, size_cap=size_cap)
        if ok:
            assert td is not None
            return td.width, td
        k += 1
