"""Lower-bound certificates: vertex groupings that define a high-width minor."""

from __future__ import annotations

from dataclasses import dataclass

from .bitset import bit, iter_bits
from .btdp import SIZE_CAP, decide_tw_leq
from .control import CancelToken
from .graph import Graph, is_connected


@dataclass(frozen=True)
class MinorCertificate:
    """Disjoint connected vertex groups of the host graph; contracting each
    group (and deleting ungrouped vertices) yields a minor whose treewidth is
    at least claimed_k."""

    claimed_k: int
    groups: tuple[int, ...]

    @property
    def vertex_count(self) -> int:
        return len(self.groups)

    def minor(self, g: Graph) -> Graph:
        rows = []
        for grp in self.groups:
            nb = 0
            for v in iter_bits(grp):
                nb |= g.adj[v]
            rows.append(nb)
        adj = [0] * len(self.groups)
        for i, nb in enumerate(rows):
            for j, grp in enumerate(self.groups):
                if i != j and nb & grp:
                    adj[i] |= bit(j)
        return Graph.unchecked(len(self.groups), adj)


@dataclass(frozen=True)
class CertViolation:
    kind: str
    message: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


def verify_certificate(
    g: Graph,
    cert: MinorCertificate,
    cancel: CancelToken | None = None,
    size_cap: int = SIZE_CAP,
) -> CertViolation | None:
    """Check group disjointness and connectivity, build the minor, and
    confirm its treewidth reaches the claimed bound.  None means valid."""
    if not cert.groups:
        return CertViolation("empty", "certificate has no groups")
    seen = 0
    for i, grp in enumerate(cert.groups):
        if grp == 0:
            return CertViolation("empty", f"group {i} is empty")
        if grp & ~g.full:
            return CertViolation("out-of-range", f"group {i} mentions unknown vertices")
        if grp & seen:
            return CertViolation("overlap", f"group {i} overlaps an earlier group")
        seen |= grp
        if not is_connected(g, grp):
            return CertViolation("disconnected-group", f"group {i} is not connected")
    minor = cert.minor(g)
    if cert.claimed_k > 0:
        ok, _ = decide_tw_leq(minor, cert.claimed_k - 1, cancel, size_cap=size_cap)
        if ok:
            return CertViolation(
                "treewidth-shortfall",
                f"minor has treewidth below the claimed {cert.claimed_k}",
            )
    return None
