"""Readers and writers for the PACE 2017 graph and decomposition formats,
plus the line-oriented lower-bound certificate format."""

from __future__ import annotations

from .bitset import bit, iter_bits
from .btdp import TreeDecomposition, validate_td
from .certificates import MinorCertificate
from .graph import Graph


class ParseError(Exception):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"{message}{where}")


def parse_gr(text: str) -> Graph:
    """Parse a PACE `.gr` instance: `p tw <n> <m>` then one edge per line,
    vertices 1-indexed; `c` comment lines anywhere.  Self-loops and duplicate
    edges are rejected."""
    n = None
    m_declared = 0
    adj: list[int] = []
    edges_seen = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise ParseError("duplicate problem line", lineno)
            if len(parts) != 4 or parts[1] != "tw":
                raise ParseError("problem line must read 'p tw <n> <m>'", lineno)
            try:
                n, m_declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError("non-integer counts in problem line", lineno)
            if n < 0 or m_declared < 0:
                raise ParseError("negative counts in problem line", lineno)
            adj = [0] * n
            continue
        if n is None:
            raise ParseError("edge before problem line", lineno)
        if len(parts) != 2:
            raise ParseError("edge line must have two vertices", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("non-integer vertex id", lineno)
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"vertex out of range 1..{n}", lineno)
        if u == v:
            raise ParseError("self-loop", lineno)
        u, v = u - 1, v - 1
        if adj[u] & bit(v):
            raise ParseError("duplicate edge", lineno)
        adj[u] |= bit(v)
        adj[v] |= bit(u)
        edges_seen += 1
    if n is None:
        raise ParseError("missing problem line")
    if edges_seen != m_declared:
        raise ParseError(f"problem line declares {m_declared} edges, found {edges_seen}")
    return Graph(n, adj)


def write_gr(g: Graph) -> str:
    lines = [f"p tw {g.n} {g.m}"]
    lines.extend(f"{u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def write_td(td: TreeDecomposition, g: Graph) -> str:
    """PACE `.td` text: `s td <#bags> <width+1> <n>`, bag lines, tree edges."""
    lines = [f"s td {len(td.bags)} {td.width + 1} {g.n}"]
    for i, bag in enumerate(td.bags, start=1):
        verts = " ".join(str(v + 1) for v in iter_bits(bag))
        lines.append(f"b {i} {verts}".rstrip())
    for a, b in td.tree_edges:
        lines.append(f"{a + 1} {b + 1}")
    return "\n".join(lines) + "\n"


def parse_td(text: str, g: Graph) -> TreeDecomposition:
    """Parse and validate a `.td` file against its graph; any decomposition
    violation is surfaced as a ParseError."""
    header = None
    bags: dict[int, int] = {}
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "s":
            if header is not None:
                raise ParseError("duplicate solution line", lineno)
            if len(parts) != 5 or parts[1] != "td":
                raise ParseError("solution line must read 's td <bags> <width+1> <n>'", lineno)
            try:
                header = (int(parts[2]), int(parts[3]), int(parts[4]))
            except ValueError:
                raise ParseError("non-integer values in solution line", lineno)
            continue
        if header is None:
            raise ParseError("content before solution line", lineno)
        if parts[0] == "b":
            if len(parts) < 2:
                raise ParseError("bag line missing its index", lineno)
            try:
                idx = int(parts[1])
                verts = [int(x) for x in parts[2:]]
            except ValueError:
                raise ParseError("non-integer value in bag line", lineno)
            if not (1 <= idx <= header[0]):
                raise ParseError(f"bag index out of range 1..{header[0]}", lineno)
            if idx in bags:
                raise ParseError(f"duplicate bag {idx}", lineno)
            m = 0
            for v in verts:
                if not (1 <= v <= g.n):
                    raise ParseError(f"bag vertex out of range 1..{g.n}", lineno)
                m |= bit(v - 1)
            bags[idx] = m
            continue
        if len(parts) != 2:
            raise ParseError("tree edge line must have two bag ids", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("non-integer bag id", lineno)
        if not (1 <= a <= header[0] and 1 <= b <= header[0]):
            raise ParseError("tree edge references a missing bag", lineno)
        edges.append((a - 1, b - 1))
    if header is None:
        raise ParseError("missing solution line")
    nbags, width_plus, n = header
    if n != g.n:
        raise ParseError(f"decomposition is for {n} vertices, graph has {g.n}")
    if len(bags) != nbags:
        raise ParseError(f"solution line declares {nbags} bags, found {len(bags)}")
    ordered = tuple(bags[i] for i in range(1, nbags + 1))
    td = TreeDecomposition(ordered, tuple(edges), width_plus - 1)
    bad = validate_td(g, td)
    if bad is not None:
        raise ParseError(str(bad))
    return td


def write_certificate(cert: MinorCertificate) -> str:
    """`cert tw-lb <k> <#groups>` then one group of 1-indexed vertices per line."""
    lines = [f"cert tw-lb {cert.claimed_k} {len(cert.groups)}"]
    for grp in cert.groups:
        lines.append(" ".join(str(v + 1) for v in iter_bits(grp)))
    return "\n".join(lines) + "\n"


def parse_certificate(text: str, g: Graph) -> MinorCertificate:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("c ")]
    if not lines:
        raise ParseError("empty certificate")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "cert" or head[1] != "tw-lb":
        raise ParseError("header must read 'cert tw-lb <k> <#groups>'", 1)
    try:
        k, count = int(head[2]), int(head[3])
    except ValueError:
        raise ParseError("non-integer values in certificate header", 1)
    if count != len(lines) - 1:
        raise ParseError(f"header declares {count} groups, found {len(lines) - 1}")
    groups = []
    for lineno, line in enumerate(lines[1:], start=2):
        m = 0
        for tok in line.split():
            try:
                v = int(tok)
            except ValueError:
                raise ParseError("non-integer vertex id", lineno)
            if not (1 <= v <= g.n):
                raise ParseError(f"vertex out of range 1..{g.n}", lineno)
            m |= bit(v - 1)
        groups.append(m)
    return MinorCertificate(claimed_k=k, groups=tuple(groups))
