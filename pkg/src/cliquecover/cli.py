"""Command-line front end: ``cliquecover <subcommand> ...``."""
from __future__ import annotations

import argparse
import csv
import os
import sys

from . import harness
from .cover import InvalidCliqueError, is_cover, read_cover, write_cover
from .graph import GraphFormatError, degeneracy_ordering, gnp_generate, read_edge_list, trivial_cliques, write_edge_list
from .greedy import CliqueSelect, EdgeOrder
from .mce import maximal_cliques
from .oracle import OracleCapError, exact_minimum_size, exact_minimum_weight

EXIT_OK = 0
EXIT_NONE = 1
EXIT_INVALID = 2
EXIT_TIMEOUT = 3


def _append_row(path, row, columns):
    if path is None or path == "-":
        w = csv.DictWriter(sys.stdout, fieldnames=columns, lineterminator="\n")
        w.writeheader()
        w.writerow(row)
        return
    fresh = not os.path.exists(path) or os.path.getsize(path) == 0
    with open(path, "a", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=columns, lineterminator="\n")
        if fresh:
            w.writeheader()
        w.writerow(row)


def cmd_cover(args) -> int:
    g = read_edge_list(args.graph)
    out = harness.solve(g, args.algo, args.order, args.select, args.seed, k=args.k,
                        time_limit_ms=args.time_limit_ms,
                        graph_name=os.path.basename(args.graph))
    _append_row(args.stats, out.row(os.path.basename(args.graph)), harness.ROW_COLUMNS)
    if out.status == harness.TIMEOUT:
        print("TIMEOUT", file=sys.stderr)
        return EXIT_TIMEOUT
    if out.status == harness.NONE:
        print(f"NONE: no cover with at most {args.k} cliques", file=sys.stderr)
        return EXIT_NONE
    if args.out:
        write_cover(args.out, g, out.cover)
    return EXIT_OK


def cmd_ensemble(args) -> int:
    roster = args.algo.split(",")
    for a in roster:
        if a not in harness.ALGORITHMS:
            raise ValueError(f"unknown algorithm {a!r}")
    spec = harness.ExperimentSpec(
        n=args.n, p=args.p, count=args.count, seed=args.seed, files=args.files,
        roster=roster, order=args.order, select=args.select,
        time_limit_ms=args.time_limit_ms, baseline=args.baseline,
    )
    if not spec.files and (spec.n <= 0 or spec.count <= 0):
        raise ValueError("ensemble needs graph files or --n and --count")
    rows = harness.run_ensemble(spec, workers=args.workers)
    summary = harness.summarize(rows, roster, args.baseline)
    if args.out:
        harness.write_csv(args.out, rows, harness.ROW_COLUMNS)
        root, ext = os.path.splitext(args.out)
        harness.write_csv(f"{root}_summary{ext or '.csv'}", summary, ["metric", "algorithm", "other", "value"])
    else:
        harness.write_csv(sys.stdout, rows, harness.ROW_COLUMNS)
        print()
        harness.write_csv(sys.stdout, summary, ["metric", "algorithm", "other", "value"])
    return EXIT_OK


def cmd_gen(args) -> int:
    g = gnp_generate(args.n, args.p, args.seed)
    header = f"G(n={args.n}, p={args.p:g}) seed={args.seed} m={g.m}"
    if args.out:
        write_edge_list(g, args.out, header)
    else:
        print(f"# {header}")
        for u, v in g.edges():
            print(u, v)
    return EXIT_OK


def cmd_verify(args) -> int:
    g = read_edge_list(args.graph)
    cliques = read_cover(args.cover, g)
    if is_cover(g, cliques):
        print(f"ok: {len(cliques)} cliques cover all {g.m} edges")
        return EXIT_OK
    print("not a cover: some edges are uncovered", file=sys.stderr)
    return EXIT_NONE


STATS_COLUMNS = ["graph", "n", "m", "d", "max_degree", "trivial"]


def cmd_stats(args) -> int:
    w = csv.DictWriter(sys.stdout, fieldnames=STATS_COLUMNS, lineterminator="\n")
    w.writeheader()
    for path in args.graphs:
        g = read_edge_list(path)
        w.writerow({"graph": os.path.basename(path), "n": g.n, "m": g.m,
                    "d": degeneracy_ordering(g).degeneracy if g.n else 0,
                    "max_degree": g.max_degree, "trivial": len(trivial_cliques(g))})
    return EXIT_OK


def cmd_cliques(args) -> int:
    g = read_edge_list(args.graph)
    for labels in g.relabel_cliques(maximal_cliques(g)):
        print(" ".join(str(v) for v in labels))
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = read_edge_list(args.graph)
    res = exact_minimum_weight(g) if args.weight else exact_minimum_size(g)
    print(f"min_size={res.min_size} min_weight={res.min_weight}")
    if args.out:
        write_cover(args.out, g, res.witness_cover)
    return EXIT_OK


def _limit(text):
    v = float(text)
    if v < 0:
        raise argparse.ArgumentTypeError("time limit must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cliquecover", description="Edge clique covers: greedy heuristics and exact search.")
    sub = p.add_subparsers(dest="command", required=True, metavar="{cover,ensemble,gen,verify,stats,cliques}")

    def solver_flags(sp, algo_default):
        sp.add_argument("--algo", default=algo_default, help=f"one of {', '.join(harness.ALGORITHMS)}")
        sp.add_argument("--order", default="degree", choices=[o.value for o in EdgeOrder])
        sp.add_argument("--select", default="largest", choices=CliqueSelect.KINDS)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--time-limit-ms", type=_limit, default=harness.DEFAULT_TIME_LIMIT_MS)
        sp.add_argument("--out")

    sp = sub.add_parser("cover", help="compute a cover of one graph")
    sp.add_argument("graph")
    solver_flags(sp, "ccsg")
    sp.add_argument("--k", type=int, help="decision mode for cfpt/mfpt: a cover with at most k cliques")
    sp.add_argument("--stats", help="CSV file to append the stats row to (default: stdout)")
    sp.set_defaults(func=cmd_cover)

    sp = sub.add_parser("ensemble", help="run a roster over a G(n,p) ensemble or graph files")
    sp.add_argument("files", nargs="*")
    solver_flags(sp, "ccsg,mfpt")
    sp.add_argument("--n", type=int, default=0)
    sp.add_argument("--p", type=float, default=0.1)
    sp.add_argument("--count", type=int, default=32)
    sp.add_argument("--baseline", help="algorithm that size ratios are taken against")
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_ensemble)

    sp = sub.add_parser("gen", help="write a G(n,p) edge list")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("verify", help="check a cover file against a graph")
    sp.add_argument("graph")
    sp.add_argument("cover")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("stats", help="n, m, d, max degree and trivial-clique count")
    sp.add_argument("graphs", nargs="+")
    sp.set_defaults(func=cmd_stats)

    sp = sub.add_parser("cliques", help="list all maximal cliques (debug)")
    sp.add_argument("graph")
    sp.set_defaults(func=cmd_cliques)

    sp = sub.add_parser("oracle")
    sp.add_argument("graph")
    sp.add_argument("--weight", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphFormatError, InvalidCliqueError, OracleCapError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
