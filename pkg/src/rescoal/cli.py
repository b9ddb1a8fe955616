"""Command-line front end.

Usage::

    rescoal gen kcoal:p1=4,p2=3,k=1 --out k43.txt
    rescoal resist kite:p=3 --route both
    rescoal indices windmill:n=2,t=2 --format json
    rescoal verify kcoal --index resistance --range p1=1:12 --range p2=1:12 \\
        --range k=1:12 --constraint "k<=p2<=p1" --jobs 4
    rescoal retable --out re_table.csv

A TARGET is a family spec (``family:key=value,...``), a graph token such as
``K4`` or ``C5``, or the path of an edge-list file.  Mismatches found by
``verify`` are findings, not failures: the exit status is 0 whenever the run
completes and 2 on an operational error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import graphs as gr
from . import reports as rp
from .errors import ParseError, RescoalError
from .indices import INDEX_NAMES, definition_indices, supported_indices
from .linalg import dump_matrix
from .resistance import closed_form, max_deviation, resistance_oracle

__all__ = ["main", "build_parser"]


def _resolve(target: str):
    """Return ``(spec_or_None, graph)`` for a TARGET argument."""
    head = target.split(":", 1)[0].strip().lower()
    if head in gr.FAMILIES:
        spec = gr.parse_spec(target)
        return spec, gr.build_family(spec)
    path = Path(target)
    if path.exists():
        return None, gr.read_edge_list(path)
    try:
        return None, gr.parse_graph(target)
    except ParseError:
        raise ParseError(f"{target!r} is neither a family spec, a graph token, "
                         "nor an existing edge-list file") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_gen(args) -> int:
    _, g = _resolve(args.target)
    _emit(gr.format_edge_list(g), args.out)
    print(f"n={g.n} m={g.m}", file=sys.stderr if not args.out else sys.stdout)
    return 0


def cmd_resist(args) -> int:
    spec, g = _resolve(args.target)
    if args.route in ("closed", "both") and spec is None:
        raise ParseError("the closed route needs a family spec, not an arbitrary graph")
    oracle = resistance_oracle(g) if args.route in ("oracle", "both") else None
    closed = closed_form(spec) if args.route in ("closed", "both") else None
    shown = closed if closed is not None else oracle
    deviation = max_deviation(closed, oracle) if args.route == "both" else None

    if args.format == "csv":
        text = rp.matrix_to_csv(shown.entries)
    elif args.format == "json":
        payload = {"n": shown.n, "route": args.route, "provenance": shown.provenance,
                   "matrix": [[float(rp.fmt(x)) for x in row] for row in shown.entries]}
        if deviation is not None:
            payload["max_abs_deviation"] = float(rp.fmt(deviation))
        text = json.dumps(payload, indent=2) + "\n"
    else:
        text = dump_matrix(shown.entries)
    _emit(text, args.out)
    if deviation is not None:
        print(f"max_abs_deviation {rp.fmt(deviation)}", file=sys.stderr)
    return 0


def cmd_indices(args) -> int:
    _, g = _resolve(args.target)
    values = definition_indices(g)
    if args.format == "json":
        payload = {"n": g.n, "m": g.m, "route": "definition",
                   "indices": {k: float(rp.fmt(v)) for k, v in values.items()}}
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        text = rp._csv_text(("index", "value", "route"),
                            [[k, rp.fmt(v), "definition"] for k, v in values.items()])
    else:
        text = "".join(f"{k:<18} {rp.fmt(v)}\n" for k, v in values.items())
    _emit(text, args.out)
    return 0


def cmd_verify(args) -> int:
    family = args.family.lower()
    if family not in gr.FAMILIES:
        raise ParseError(f"unknown family {args.family!r}")
    available = supported_indices(family)
    if args.index == "all":
        indices = available
    else:
        indices = [s.strip() for s in args.index.split(",")]
        for idx in indices:
            if idx not in available:
                raise ParseError(f"unsupported pair ({idx}, {family}); available: {', '.join(available)}")

    if args.range:
        sweep = rp.SweepRange(tuple(rp.parse_range(r) for r in args.range), args.tol,
                              tuple(rp.parse_constraint(c) for c in args.constraint or ()))
    else:
        base = rp.default_sweep(family, args.tol)
        extra = tuple(rp.parse_constraint(c) for c in args.constraint or ())
        sweep = rp.SweepRange(base.ranges, args.tol, base.constraints + extra)

    graphs = [gr.parse_graph(tok) for tok in args.graph or ()]
    if args.random_graphs:
        graphs += rp.random_graphs(args.random_graphs, args.max_order, args.seed)

    specs = rp.enumerate_specs(family, sweep, graphs)
    reports = rp.run_sweep(specs, indices, args.tol, args.jobs)
    summary = rp.summarize(reports)
    if args.format == "json":
        text = rp.reports_to_json(reports, summary)
    elif args.format == "text":
        text = rp.reports_to_text(reports)
    else:
        text = rp.reports_to_csv(reports)
    _emit(text, args.out)
    print("summary " + " ".join(f"{k}={v}" for k, v in summary.items()), file=sys.stderr)
    return 0


def cmd_retable(args) -> int:
    rows = rp.retable_rows()
    if args.format == "json":
        recs = [{k: (float(rp.fmt(v)) if isinstance(v, float) else v) for k, v in r.items()} for r in rows]
        text = json.dumps(recs, indent=2) + "\n"
    elif args.format == "text":
        text = "".join(f"{r['row']:>3} K{r['p1']} o{r['k']} K{r['p2']}: tabulated {rp.fmt(r['RE_paper']):>6}"
                       f"  computed {rp.fmt(r['RE_computed'])}\n" for r in rows)
    else:
        text = rp.retable_csv(rows)
    _emit(text, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rescoal", description=__doc__.split("\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    common.add_argument("--tol", type=float, default=1e-9, help="match tolerance (default 1e-9)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="write a graph as an edge list")
    p.add_argument("target", help="family spec or edge-list path")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("resist", parents=[common], help="print a resistance matrix")
    p.add_argument("target")
    p.add_argument("--route", choices=("oracle", "closed", "both"), default="oracle")
    p.add_argument("--format", choices=("csv", "json", "text"), default="text")
    p.set_defaults(func=cmd_resist)

    p = sub.add_parser("indices", parents=[common], help="definition-route indices: " + ", ".join(INDEX_NAMES))
    p.add_argument("target")
    p.add_argument("--format", choices=("csv", "json", "text"), default="json")
    p.set_defaults(func=cmd_indices)

    p = sub.add_parser("verify", parents=[common], help="formula-vs-oracle sweep for one family")
    p.add_argument("family", help=", ".join(gr.FAMILIES))
    p.add_argument("--index", default="all",
                   help="'resistance', an index name, a comma list, or 'all' (default)")
    p.add_argument("--range", action="append", metavar="NAME=LO:HI",
                   help="inclusive integer range; repeat per parameter")
    p.add_argument("--constraint", action="append", metavar="EXPR",
                   help="chained comparison such as 'k<=p2<=p1'")
    p.add_argument("--graph", action="append", metavar="TOKEN",
                   help="graph G for joincoal/starjoin (K4, P3, C5, S3, E2, K2x3, 4[0-1/1-2], @file)")
    p.add_argument("--random-graphs", type=int, default=0, metavar="N")
    p.add_argument("--max-order", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("csv", "json", "text"), default="csv")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("retable", parents=[common], help="resistance-energy table with recomputed values")
    p.add_argument("--format", choices=("csv", "json", "text"), default="csv")
    p.set_defaults(func=cmd_retable)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (RescoalError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
