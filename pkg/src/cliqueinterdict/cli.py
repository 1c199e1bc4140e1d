"""Command-line entry point: ``solve``, ``bench`` and ``verify`` subcommands."""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .io import FORMATS, GraphParseError, load_graph
from .oracle import OracleBudgetExceeded, brute_force_theta, omega_after_removal
from .pipeline import SEED_ORDERS
from .report import BENCH_COLUMNS, bench_row, budget_from_fraction, build_report, to_json, to_text
from .solver import MASTERS, OPTIMAL, SolverConfig, solve

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_USAGE = 2
EXIT_TIMEOUT = 3
EXIT_MISMATCH = 4


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--time-limit", type=float, default=600.0, help="seconds per solve (default 600)")
    p.add_argument("--enable-strong-triangle", action="store_true",
                   help="also run the costlier common-neighborhood edge reductions")
    p.add_argument("--seed-order", choices=SEED_ORDERS, default="deg-desc",
                   help="vertex order for the greedy disjoint-clique families")
    p.add_argument("--master", choices=MASTERS, default="milp",
                   help="restricted problem solver: integer program or combinatorial search")
    p.add_argument("--graph-format", choices=FORMATS, default="auto")


def _config(args: argparse.Namespace) -> SolverConfig:
    return SolverConfig(
        time_limit=args.time_limit,
        strong_triangle=args.enable_strong_triangle,
        seed_order=args.seed_order,
        master=args.master,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cliqueinterdict", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one instance and print a report")
    p.add_argument("--graph", required=True, type=Path)
    budget = p.add_mutually_exclusive_group(required=True)
    budget.add_argument("--k", type=int)
    budget.add_argument("--k-frac", type=float, help="budget as ceil(fraction * |V|)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    _add_solver_flags(p)

    b = sub.add_parser("bench", help="solve many instances and print CSV")
    src = b.add_mutually_exclusive_group(required=True)
    src.add_argument("--graphs", type=Path, help="directory of graph files")
    src.add_argument("--manifest", type=Path, help="text file with one graph path per line")
    b.add_argument("--k-frac", type=float, nargs="+", default=[0.005, 0.01, 0.02, 0.05])
    b.add_argument("--jobs", type=int, default=1, help="worker processes")
    _add_solver_flags(b)

    v = sub.add_parser("verify", help="cross-check the solver against brute force on a small graph")
    v.add_argument("--graph", required=True, type=Path)
    v.add_argument("--k", type=int, required=True)
    v.add_argument("--graph-format", choices=FORMATS, default="auto")
    return parser


def run_solve(args: argparse.Namespace) -> int:
    try:
        loaded = load_graph(args.graph, args.graph_format)
    except (OSError, GraphParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    g = loaded.graph
    k = args.k if args.k is not None else budget_from_fraction(g.n, args.k_frac)
    if k < 0:
        print("error: k must be nonnegative", file=sys.stderr)
        return EXIT_USAGE
    result = solve(g, k, _config(args))
    report = build_report(loaded.name, g.n, g.m, k, result, k_fraction=args.k_frac, index_base=loaded.index_base)
    print(to_json(report) if args.format == "json" else to_text(report))
    return EXIT_OK if result.status == OPTIMAL else EXIT_TIMEOUT


def _bench_paths(args: argparse.Namespace) -> list[Path]:
    if args.graphs is not None:
        return sorted(p for p in args.graphs.iterdir() if p.is_file())
    base = args.manifest.parent
    paths = []
    for line in args.manifest.read_text().splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            p = Path(line)
            paths.append(p if p.is_absolute() else base / p)
    return paths


def _bench_one(task: tuple[Path, float, str, SolverConfig]) -> dict | str:
    path, frac, fmt, cfg = task
    try:
        loaded = load_graph(path, fmt)
    except (OSError, GraphParseError, ValueError) as exc:
        return f"skipping {path}: {exc}"
    g = loaded.graph
    k = budget_from_fraction(g.n, frac)
    report = build_report(loaded.name, g.n, g.m, k, solve(g, k, cfg), k_fraction=frac, index_base=loaded.index_base)
    return bench_row(report)


def run_bench(args: argparse.Namespace) -> int:
    cfg = _config(args)
    tasks = [(p, f, args.graph_format, cfg) for p in _bench_paths(args) for f in args.k_frac]
    writer = csv.DictWriter(sys.stdout, fieldnames=BENCH_COLUMNS)
    writer.writeheader()
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            outcomes = list(pool.map(_bench_one, tasks))
    else:
        outcomes = map(_bench_one, tasks)
    skipped: set[str] = set()
    for out in outcomes:
        if isinstance(out, str):
            if out not in skipped:
                print(out, file=sys.stderr)
                skipped.add(out)
        else:
            writer.writerow(out)
    sys.stdout.flush()
    return EXIT_OK


def run_verify(args: argparse.Namespace) -> int:
    try:
        g = load_graph(args.graph, args.graph_format).graph
        theta, witness = brute_force_theta(g, args.k)
    except (OSError, GraphParseError, OracleBudgetExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    result = solve(g, args.k, SolverConfig(time_limit=None))
    replay = omega_after_removal(g, result.interdiction_set)
    ok = result.theta == theta and replay == theta and len(result.interdiction_set) <= args.k
    print(f"oracle theta={theta} witness={sorted(witness)}")
    print(f"solver theta={result.theta} set={sorted(result.interdiction_set)} replayed omega={replay}")
    print("MATCH" if ok else "MISMATCH")
    return EXIT_OK if ok else EXIT_MISMATCH


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    handlers = {"solve": run_solve, "bench": run_bench, "verify": run_verify}
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
