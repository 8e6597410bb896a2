"""Command line front end: solve, exact, verify-td, verify-cert, bench."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bench import bench
from .btdp import exact_tw
from .certificates import verify_certificate
from .control import SizeCapExceeded
from .pace_io import (
    ParseError,
    parse_certificate,
    parse_gr,
    parse_td,
    write_certificate,
    write_td,
)
from .solver import SolveConfig, solve


def _read_graph(path: str):
    return parse_gr(Path(path).read_text())


def _cmd_solve(args) -> int:
    g = _read_graph(args.graph)
    config = SolveConfig(timeout=args.timeout, seed=args.seed, serial=args.serial)
    report = solve(g, config)
    print(f"c instance {args.graph}")
    print(f"c n {report.n} m {report.m}")
    for e in report.events:
        print(f"c event {e.kind} {e.value} {e.elapsed:.2f}s")
    status = "exact" if report.solved else "bounds"
    print(f"s {status} lb {report.lower} ub {report.upper} time {report.elapsed:.2f}s")
    if args.td:
        Path(args.td).write_text(write_td(report.td, g))
        print(f"c wrote decomposition to {args.td}")
    if args.cert and report.certificate is not None:
        Path(args.cert).write_text(write_certificate(report.certificate))
        print(f"c wrote certificate to {args.cert}")
    return 0


def _cmd_exact(args) -> int:
    g = _read_graph(args.graph)
    try:
        tw, td = exact_tw(g, size_cap=args.cap)
    except SizeCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"s exact tw {tw}")
    if args.td:
        Path(args.td).write_text(write_td(td, g))
        print(f"c wrote decomposition to {args.td}")
    return 0


def _cmd_verify_td(args) -> int:
    g = _read_graph(args.graph)
    td = parse_td(Path(args.td).read_text(), g)  # raises ParseError when invalid
    print(f"s valid width {td.width}")
    return 0


def _cmd_verify_cert(args) -> int:
    g = _read_graph(args.graph)
    cert = parse_certificate(Path(args.cert).read_text(), g)
    bad = verify_certificate(g, cert)
    if bad is not None:
        print(f"s invalid {bad}")
        return 1
    print(f"s valid lower-bound {cert.claimed_k} groups {cert.vertex_count}")
    return 0


def _cmd_bench(args) -> int:
    config = SolveConfig(timeout=args.timeout, seed=args.seed, serial=args.serial)
    rows = bench(args.dir, config, out_csv=args.out, figures=not args.no_figures)
    solved = sum(r.solved for r in rows)
    print(f"c {len(rows)} instances, {solved} solved; wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twbounds",
        description="Anytime treewidth bounds with verifiable certificates",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run both bound workers on a .gr instance")
    p.add_argument("graph")
    p.add_argument("--timeout", type=float, default=60.0)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--serial", action="store_true",
                   help="interleave the workers in one thread (reproducible)")
    p.add_argument("--td", help="write the best tree-decomposition here")
    p.add_argument("--cert", help="write the best lower-bound certificate here")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("exact", help="exact treewidth of a small .gr instance")
    p.add_argument("graph")
    p.add_argument("--cap", type=int, default=64, help="vertex-count cap")
    p.add_argument("--td", help="write an optimal tree-decomposition here")
    p.set_defaults(func=_cmd_exact)

    p = sub.add_parser("verify-td", help="validate a .td file against its graph")
    p.add_argument("graph")
    p.add_argument("td")
    p.set_defaults(func=_cmd_verify_td)

    p = sub.add_parser("verify-cert", help="verify a lower-bound certificate")
    p.add_argument("graph")
    p.add_argument("cert")
    p.set_defaults(func=_cmd_verify_cert)

    p = sub.add_parser("bench", help="solve every .gr in a directory; CSV + figures")
    p.add_argument("dir")
    p.add_argument("--timeout", type=float, default=60.0)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--serial", action="store_true")
    p.add_argument("--out", default="bench.csv")
    p.add_argument("--no-figures", action="store_true")
    p.set_defaults(func=_cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
