"""Benchmark harness: one CSV row per instance plus summary figures.

The CSV carries bounds, discovery times, and certificate statistics; two
figures are rendered next to it so a directory run can be eyeballed without
post-processing.
"""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass
from pathlib import Path

from .certificates import verify_certificate
from .pace_io import ParseError, parse_gr
from .solver import SolveConfig, SolveReport, solve

CSV_FIELDS = [
    "instance",
    "n",
    "m",
    "best_lb",
    "best_ub",
    "t_lb",
    "t_ub",
    "solved",
    "cert_size",
    "cert_verify_ms",
    "error",
]


@dataclass
class BenchRow:
    instance: str
    n: int = 0
    m: int = 0
    best_lb: int = 0
    best_ub: int = 0
    t_lb: float = 0.0
    t_ub: float = 0.0
    solved: bool = False
    cert_size: int = 0
    cert_verify_ms: float = 0.0
    error: str = ""

    def as_csv(self) -> dict:
        return {
            "instance": self.instance,
            "n": self.n,
            "m": self.m,
            "best_lb": self.best_lb,
            "best_ub": self.best_ub,
            "t_lb": f"{self.t_lb:.3f}",
            "t_ub": f"{self.t_ub:.3f}",
            "solved": int(self.solved),
            "cert_size": self.cert_size,
            "cert_verify_ms": f"{self.cert_verify_ms:.1f}",
            "error": self.error,
        }


def _row_for(path: Path, config: SolveConfig) -> BenchRow:
    row = BenchRow(instance=path.stem)
    try:
        g = parse_gr(path.read_text())
    except (OSError, ParseError) as exc:
        row.error = str(exc)
        return row
    row.n, row.m = g.n, g.m
    report: SolveReport = solve(g, config)
    row.best_lb = report.lower
    row.best_ub = report.upper
    row.t_lb = report.t_lb
    row.t_ub = report.t_ub
    row.solved = report.solved
    if report.certificate is not None:
        row.cert_size = report.certificate.vertex_count
        t0 = time.perf_counter()
        bad = verify_certificate(g, report.certificate)
        row.cert_verify_ms = (time.perf_counter() - t0) * 1000.0
        if bad is not None:
            row.error = f"certificate failed verification: {bad}"
    return row


def bench(
    instances_dir: str | Path,
    config: SolveConfig | None = None,
    out_csv: str | Path = "bench.csv",
    figures: bool = True,
) -> list[BenchRow]:
    """Solve every `.gr` file in a directory; write the CSV and figures.

    Per-instance failures are recorded in their row and the run continues.
    """
    if config is None:
        config = SolveConfig()
    out_csv = Path(out_csv)
    paths = sorted(Path(instances_dir).glob("*.gr"))
    rows = [_row_for(p, config) for p in paths]
    out_csv.parent.mkdir(parents=True, exist_ok=True)
    with out_csv.open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_FIELDS)
        writer.writeheader()
        for row in rows:
            writer.writerow(row.as_csv())
    if figures and rows:
        render_figures(rows, out_csv)
    return rows


def render_figures(rows: list[BenchRow], out_csv: Path) -> list[Path]:
    """Render the bound/time chart and the certificate chart next to the CSV."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ok_rows = [r for r in rows if not r.error or r.n]
    names = [r.instance for r in ok_rows]
    xs = range(len(ok_rows))
    made = []

    fig, (top, bottom) = plt.subplots(
        2, 1, figsize=(max(6.0, 0.45 * len(ok_rows) + 2), 6.4), sharex=True
    )
    top.plot(xs, [r.best_ub for r in ok_rows], "s", color="tab:blue", label="best upper bound")
    top.plot(xs, [r.best_lb for r in ok_rows], "^", color="tab:red", label="best lower bound")
    for x, r in zip(xs, ok_rows):
        if not r.solved:
            top.annotate(f"+{r.best_ub - r.best_lb}", (x, r.best_ub), textcoords="offset points",
                         xytext=(0, 6), ha="center", fontsize=8)
    top.set_ylabel("width bound")
    top.legend(loc="best", fontsize=8)
    top.grid(True, alpha=0.3)
    bottom.bar([x - 0.2 for x in xs], [r.t_ub for r in ok_rows], width=0.4,
               color="tab:blue", label="time to best upper")
    bottom.bar([x + 0.2 for x in xs], [r.t_lb for r in ok_rows], width=0.4,
               color="tab:red", label="time to best lower")
    bottom.set_ylabel("seconds")
    bottom.set_xticks(list(xs))
    bottom.set_xticklabels(names, rotation=60, ha="right", fontsize=7)
    bottom.legend(loc="best", fontsize=8)
    bottom.grid(True, alpha=0.3)
    fig.tight_layout()
    bounds_png = out_csv.with_name(out_csv.stem + "_bounds.png")
    fig.savefig(bounds_png, dpi=150)
    plt.close(fig)
    made.append(bounds_png)

    fig, (left, right) = plt.subplots(1, 2, figsize=(9.6, 4.2))
    with_cert = [r for r in ok_rows if r.cert_size]
    left.scatter([r.best_lb for r in with_cert], [r.cert_size for r in with_cert],
                 color="tab:red")
    lbmax = max((r.best_lb for r in with_cert), default=1)
    left.plot([0, lbmax], [0, lbmax], "--", color="gray", linewidth=0.8, label="1x")
    left.plot([0, lbmax], [0, 6 * lbmax], ":", color="gray", linewidth=0.8, label="6x")
    left.set_xlabel("lower bound")
    left.set_ylabel("certificate vertices")
    left.legend(fontsize=8)
    left.grid(True, alpha=0.3)
    right.bar(range(len(with_cert)), [r.cert_verify_ms for r in with_cert], color="tab:purple")
    right.set_xticks(range(len(with_cert)))
    right.set_xticklabels([r.instance for r in with_cert], rotation=60, ha="right", fontsize=7)
    right.set_ylabel("certificate verification (ms)")
    right.grid(True, alpha=0.3)
    fig.tight_layout()
    certs_png = out_csv.with_name(out_csv.stem + "_certificates.png")
    fig.savefig(certs_png, dpi=150)
    plt.close(fig)
    made.append(certs_png)
    return made
