"""Machine-readable solve reports (JSON) and benchmark rows (CSV)."""

from __future__ import annotations

import json
import math
from importlib import resources
from typing import Any

from .solver import OPTIMAL, SolveResult

STAGES = ("degree_triangle", "color", "strong_triangle_color", "strong_triangle_clique", "exact_clique", "interdiction")

BENCH_COLUMNS = (
    ["name", "n", "m", "k"]
    + [f"removed_{s}" for s in STAGES]
    + ["kernel_n", "kernel_k", "lb_disjoint", "lb_bipartite", "theta", "lb", "ub", "status",
       "master_iterations", "separation_calls", "seconds"]
)


def budget_from_fraction(n: int, fraction: float) -> int:
    return math.ceil(fraction * n)


def build_report(
    name: str, n: int, m: int, k: int, result: SolveResult, *,
    k_fraction: float | None = None, index_base: int = 0,
) -> dict[str, Any]:
    stats = result.stats
    stages = [
        {"name": s, "vertices_removed": v, "edges_removed": e, "seconds": t}
        for s, (v, e, t) in stats.get("stages", {}).items()
    ]
    return {
        "instance": name,
        "n": n,
        "m": m,
        "k": k,
        "k_fraction": k_fraction,
        "index_base": index_base,
        "status": result.status,
        "theta": result.theta,
        "lb": result.lb,
        "ub": result.ub,
        "interdiction_set": sorted(v + index_base for v in result.interdiction_set),
        "lb_history": {"disjoint": stats.get("lb_disjoint"), "bipartite": stats.get("lb_bipartite")},
        "stages": stages,
        "kernel": stats.get("kernel"),
        "master_iterations": stats.get("master_iterations", 0),
        "separation_calls": stats.get("separation_calls", 0),
        "seconds": stats.get("seconds", 0.0),
    }


def report_schema() -> dict[str, Any]:
    text = resources.files("cliqueinterdict").joinpath("schemas/solve_report.schema.json").read_text()
    return json.loads(text)


def to_json(report: dict[str, Any]) -> str:
    return json.dumps(report, indent=2, sort_keys=False)


def to_text(report: dict[str, Any]) -> str:
    lines = [
        f"instance   {report['instance']}  (n={report['n']}, m={report['m']}, k={report['k']})",
        f"status     {report['status']}",
        f"theta      {report['theta'] if report['theta'] is not None else '-'}"
        f"  [lb={report['lb']}, ub={report['ub']}]",
        f"lower bnds disjoint={report['lb_history']['disjoint']} bipartite={report['lb_history']['bipartite']}",
        f"set        {' '.join(map(str, report['interdiction_set'])) or '-'}",
    ]
    for st in report["stages"]:
        lines.append(
            f"stage      {st['name']:<24} -{st['vertices_removed']} vertices"
            f" -{st['edges_removed']} edges  {st['seconds']:.3f}s"
        )
    if report["kernel"]:
        kn = report["kernel"]
        lines.append(f"kernel     n={kn['n']} m={kn['m']} k={kn['k']}")
    lines.append(
        f"search     {report['master_iterations']} master iterations,"
        f" {report['separation_calls']} separation calls, {report['seconds']:.3f}s total"
    )
    return "\n".join(lines)


def bench_row(report: dict[str, Any]) -> dict[str, Any]:
    removed = {st["name"]: st["vertices_removed"] for st in report["stages"]}
    kernel = report["kernel"] or {}
    row = {
        "name": report["instance"],
        "n": report["n"],
        "m": report["m"],
        "k": report["k"],
        **{f"removed_{s}": removed.get(s, 0) for s in STAGES},
        "kernel_n": kernel.get("n", ""),
        "kernel_k": kernel.get("k", ""),
        "lb_disjoint": report["lb_history"]["disjoint"],
        "lb_bipartite": "" if report["lb_history"]["bipartite"] is None else report["lb_history"]["bipartite"],
        "theta": "" if report["theta"] is None else report["theta"],
        "lb": report["lb"],
        "ub": report["ub"],
        "status": "OPT" if report["status"] == OPTIMAL else "TL",
        "master_iterations": report["master_iterations"],
        "separation_calls": report["separation_calls"],
        "seconds": f"{report['seconds']:.4f}",
    }
    assert list(row) == BENCH_COLUMNS
    return row
