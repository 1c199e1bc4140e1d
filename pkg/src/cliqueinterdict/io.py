"""Reading and writing graphs as edge lists and DIMACS files."""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from pathlib import Path

from .graph import Graph, build_graph

log = logging.getLogger(__name__)

FORMATS = ("auto", "edge-list", "dimacs")
DIMACS_SUFFIXES = {".clq", ".dimacs", ".col"}
# SNAP-style "# Nodes: 317080 Edges: 1049866"
NODES_HEADER = re.compile(r"\bNodes:\s*(\d+)", re.IGNORECASE)


class GraphParseError(ValueError):
    def __init__(self, path: str | Path, line_no: int, message: str) -> None:
        super().__init__(f"{path}:{line_no}: {message}")
        self.path = str(path)
        self.line_no = line_no


@dataclass
class LoadedGraph:
    """A parsed graph plus the id offset of the file (0 or 1)."""

    graph: Graph
    index_base: int
    name: str


def _detect_format(path: Path, lines: list[str]) -> str:
    if path.suffix.lower() in DIMACS_SUFFIXES:
        return "dimacs"
    for line in lines:
        s = line.strip()
        if not s or s[0] in "#%":
            continue
        return "dimacs" if s.startswith(("p ", "c ", "e ")) or s in ("c", "p") else "edge-list"
    return "edge-list"


def _parse_dimacs(path: Path, lines: list[str]) -> LoadedGraph:
    n = None
    declared_m = None
    edges = []
    for no, line in enumerate(lines, 1):
        s = line.split()
        if not s or s[0] == "c":
            continue
        if s[0] == "p":
            if len(s) < 4:
                raise GraphParseError(path, no, f"malformed problem line {line.strip()!r}")
            try:
                n, declared_m = int(s[2]), int(s[3])
            except ValueError:
                raise GraphParseError(path, no, f"malformed problem line {line.strip()!r}") from None
        elif s[0] == "e":
            if n is None:
                raise GraphParseError(path, no, "edge line before 'p edge' header")
            try:
                u, v = int(s[1]), int(s[2])
            except (ValueError, IndexError):
                raise GraphParseError(path, no, f"malformed edge line {line.strip()!r}") from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphParseError(path, no, f"vertex out of range 1..{n} in {line.strip()!r}")
            edges.append((u - 1, v - 1))
        else:
            raise GraphParseError(path, no, f"unrecognized line {line.strip()!r}")
    if n is None:
        raise GraphParseError(path, len(lines), "missing 'p edge' header")
    g = build_graph(n, edges)
    if declared_m is not None and declared_m not in (len(edges), g.m):
        log.warning("%s: header declares %d edges, found %d", path, declared_m, len(edges))
    return LoadedGraph(g, 1, path.stem)


def _parse_edge_list(path: Path, lines: list[str]) -> LoadedGraph:
    pairs = []
    matrix_market = bool(lines) and lines[0].startswith("%%MatrixMarket")
    size_line_pending = matrix_market
    declared_n = 0
    for no, line in enumerate(lines, 1):
        s = line.split()
        if not s:
            continue
        if s[0][0] in "#%":
            found = NODES_HEADER.search(line)
            if found:
                declared_n = max(declared_n, int(found.group(1)))
            continue
        if size_line_pending:
            # MatrixMarket "rows cols nnz" line
            size_line_pending = False
            try:
                declared_n = max(int(s[0]), int(s[1]))
            except (ValueError, IndexError):
                raise GraphParseError(path, no, f"malformed size line {line.strip()!r}") from None
            continue
        if len(s) < 2:
            raise GraphParseError(path, no, f"expected 'u v', got {line.strip()!r}")
        try:
            u, v = int(s[0]), int(s[1])
        except ValueError:
            raise GraphParseError(path, no, f"non-integer vertex id in {line.strip()!r}") from None
        if u < 0 or v < 0:
            raise GraphParseError(path, no, f"negative vertex id in {line.strip()!r}")
        pairs.append((u, v))
    if matrix_market:
        base = 1
    else:
        base = 1 if pairs and min(min(p) for p in pairs) >= 1 else 0
    n = max([max(p) - base + 1 for p in pairs] + [declared_n])
    return LoadedGraph(build_graph(n, [(u - base, v - base) for u, v in pairs]), base, path.stem)


def load_graph(path: str | Path, format: str = "auto") -> LoadedGraph:
    """Parse ``path`` and keep the id base so results can be reported in file ids.

    Edge lists hold one whitespace-separated ``u v`` pair per line (extra
    columns ignored); ``#`` and ``%`` lines are comments, except that a
    ``Nodes: n`` comment declares the vertex count. Ids are 1-based if the
    smallest id is at least 1, else 0-based. DIMACS files are always
    1-based.
    """
    if format not in FORMATS:
        raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")
    path = Path(path)
    lines = path.read_text().splitlines()
    if format == "auto":
        format = _detect_format(path, lines)
    if format == "dimacs":
        return _parse_dimacs(path, lines)
    return _parse_edge_list(path, lines)


def parse_graph(path: str | Path, format: str = "auto") -> Graph:
    return load_graph(path, format).graph


def write_edge_list(g: Graph, path: str | Path, index_base: int = 1) -> None:
    """One ``u v`` line per edge after a ``# Nodes: n Edges: m`` header.

    The default 1-based ids keep the base detection unambiguous.
    """
    with open(path, "w") as fh:
        fh.write(f"# Nodes: {g.n} Edges: {g.m}\n")
        for u, v in g.edge_list():
            fh.write(f"{u + index_base} {v + index_base}\n")


def write_dimacs(g: Graph, path: str | Path, comment: str | None = None) -> None:
    with open(path, "w") as fh:
        if comment:
            fh.write(f"c {comment}\n")
        fh.write(f"p edge {g.n} {g.m}\n")
        for u, v in g.edge_list():
            fh.write(f"e {u + 1} {v + 1}\n")
