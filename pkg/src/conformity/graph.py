"""Attributed graph model, file ingestion and breadth-first distance shells."""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import DataError, ParseError

logger = logging.getLogger(__name__)

MISSING = "missing"

_DELIMITERS = {"comma": ",", "tab": "\t", "whitespace": None}


@dataclass(frozen=True)
class EdgeList:
    """Deduplicated undirected edges over string node ids.

    Each edge is stored once as ``(min_id, max_id)``; ``edges`` is sorted.
    """

    edges: tuple[tuple[str, str], ...]
    self_loops: int = 0
    duplicates: int = 0

    @property
    def nodes(self) -> set[str]:
        return {x for e in self.edges for x in e}


@dataclass(frozen=True)
class AttributedGraph:
    """Immutable undirected simple graph with categorical node attributes.

    Node ``i`` has id ``ids[i]``; ids are assigned in lexicographic order.
    ``adjacency[i]`` is the sorted tuple of neighbor indices and
    ``attributes[i]`` maps every declared attribute name to a string value.
    """

    ids: tuple[str, ...]
    adjacency: tuple[tuple[int, ...], ...]
    attribute_names: tuple[str, ...]
    attributes: tuple[Mapping[str, str], ...]

    def __post_init__(self):
        n = len(self.ids)
        if len(self.adjacency) != n or len(self.attributes) != n:
            raise DataError("ids, adjacency and attributes must have equal length")
        for u, nbrs in enumerate(self.adjacency):
            if list(nbrs) != sorted(set(nbrs)):
                raise DataError(f"adjacency of {self.ids[u]!r} is not a sorted set")
            for v in nbrs:
                if v == u:
                    raise DataError(f"self-loop on {self.ids[u]!r}")
                if not 0 <= v < n:
                    raise DataError(f"neighbor index {v} out of range")
                if u not in self.adjacency[v]:
                    raise DataError(f"edge ({self.ids[u]!r}, {self.ids[v]!r}) is not symmetric")
        for u, rec in enumerate(self.attributes):
            absent = [a for a in self.attribute_names if a not in rec]
            if absent:
                raise DataError(f"node {self.ids[u]!r} has no value for {absent}")

    @property
    def n_nodes(self) -> int:
        return len(self.ids)

    @property
    def n_edges(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def index(self, node_id: str) -> int:
        try:
            return self._index[node_id]
        except KeyError:
            raise DataError(f"unknown node id {node_id!r}") from None

    @property
    def _index(self) -> dict[str, int]:
        cached = self.__dict__.get("_index_cache")
        if cached is None:
            cached = {x: i for i, x in enumerate(self.ids)}
            object.__setattr__(self, "_index_cache", cached)
        return cached

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    def edges(self) -> list[tuple[int, int]]:
        """Index pairs ``(u, v)`` with ``u < v``, sorted."""
        return [(u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs if u < v]

    def values(self, name: str) -> list[str]:
        if name not in self.attribute_names:
            raise DataError(f"unknown attribute {name!r}; declared: {list(self.attribute_names)}")
        return [rec[name] for rec in self.attributes]


def _split(line: str, delimiter: str | None) -> list[str]:
    if delimiter is None:
        return line.split()
    return [tok.strip() for tok in next(csv.reader([line], delimiter=delimiter))]


def detect_delimiter(line: str) -> str | None:
    """Pick comma, tab or generic whitespace for a sample data line."""
    if "," in line:
        return ","
    if "\t" in line:
        return "\t"
    return None


def parse_edge_rows(
    rows: Iterable[str], delimiter: str | None = "auto", header: bool = False
) -> EdgeList:
    """Parse edge rows into an :class:`EdgeList`.

    Blank lines and lines starting with ``#`` are skipped.  Self-loops are
    dropped and duplicate rows (either orientation) are collapsed; both are
    counted and logged.
    """
    seen: set[tuple[str, str]] = set()
    loops = dups = 0
    n_data = 0
    skip_header = header
    for lineno, raw in enumerate(rows, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if skip_header:
            skip_header = False
            continue
        if delimiter == "auto":
            delimiter = detect_delimiter(line)
        toks = [t for t in _split(line, delimiter) if t != ""]
        if len(toks) < 2:
            raise ParseError(f"line {lineno}: expected 2 columns, got {len(toks)}")
        n_data += 1
        a, b = toks[0], toks[1]
        if a == b:
            loops += 1
            continue
        key = (a, b) if a < b else (b, a)
        if key in seen:
            dups += 1
            continue
        seen.add(key)
    if n_data == 0:
        raise ParseError("edge list is empty")
    if loops:
        logger.warning("dropped %d self-loop(s)", loops)
    if dups:
        logger.warning("collapsed %d duplicate edge row(s)", dups)
    return EdgeList(tuple(sorted(seen)), self_loops=loops, duplicates=dups)


def load_edge_list(path, delimiter: str | None = "auto", header: bool = False) -> EdgeList:
    """Read an edge-list file (one ``source target`` pair per line).

    ``delimiter`` is ``"auto"``, a literal delimiter character, ``None`` for
    whitespace, or one of ``"comma"``, ``"tab"``, ``"whitespace"``.
    """
    delimiter = _DELIMITERS.get(delimiter, delimiter) if isinstance(delimiter, str) else delimiter
    path = Path(path)
    if not path.exists():
        raise DataError(f"edge list not found: {path}")
    with path.open(newline="") as fh:
        return parse_edge_rows(fh, delimiter=delimiter, header=header)


def load_attributes(
    path,
    id_column: str = "id",
    attribute_names: Sequence[str] | None = None,
    delimiter: str = "auto",
) -> dict[str, dict[str, str]]:
    """Read a delimited attribute table with a header row.

    Returns ``{node_id: {attribute: value}}``.  Empty cells become the
    category ``"missing"``.  ``attribute_names=None`` keeps every non-id
    column.
    """
    path = Path(path)
    if not path.exists():
        raise DataError(f"attribute table not found: {path}")
    with path.open(newline="") as fh:
        text = fh.read()
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise ParseError(f"{path}: missing header row")
    if delimiter == "auto":
        delimiter = "\t" if "\t" in lines[0] else ","
    else:
        delimiter = _DELIMITERS.get(delimiter, delimiter) or ","
    reader = csv.reader(lines, delimiter=delimiter)
    header = [h.strip() for h in next(reader)]
    if id_column not in header:
        raise ParseError(f"{path}: id column {id_column!r} not in header {header}")
    available = [h for h in header if h != id_column]
    if attribute_names is None:
        attribute_names = available
    unknown = [a for a in attribute_names if a not in available]
    if unknown:
        raise ParseError(f"{path}: unknown attribute column(s) {unknown}; available: {available}")
    id_pos = header.index(id_column)
    cols = [(a, header.index(a)) for a in attribute_names]

    table: dict[str, dict[str, str]] = {}
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        row = row + [""] * (len(header) - len(row))
        if len(row) > len(header):
            raise ParseError(f"{path}: line {lineno}: {len(row)} columns, header has {len(header)}")
        node = row[id_pos].strip()
        if not node:
            raise ParseError(f"{path}: line {lineno}: empty node id")
        if node in table:
            raise DataError(f"{path}: duplicate node id {node!r} at line {lineno}")
        table[node] = {a: (row[i].strip() or MISSING) for a, i in cols}
    return table


def build_graph(
    edges: EdgeList | Iterable[tuple[str, str]],
    attributes: Mapping[str, Mapping[str, str]],
    attribute_names: Sequence[str] | None = None,
) -> AttributedGraph:
    """Assemble a validated :class:`AttributedGraph`.

    Every node of the attribute table becomes a node, so isolated nodes are
    kept.  Edge endpoints without an attribute record are an error.
    """
    if not isinstance(edges, EdgeList):
        pairs = {(a, b) if a < b else (b, a) for a, b in edges if a != b}
        edges = EdgeList(tuple(sorted(pairs)))
    if attribute_names is None:
        names: set[str] = set()
        for rec in attributes.values():
            names.update(rec)
        attribute_names = sorted(names)
    attribute_names = tuple(attribute_names)

    for a, b in edges.edges:
        for x in (a, b):
            if x not in attributes:
                raise DataError(f"node {x!r} appears in edges but not in the attribute table")
    ids = tuple(sorted(attributes))
    index = {x: i for i, x in enumerate(ids)}
    adj: list[set[int]] = [set() for _ in ids]
    for a, b in edges.edges:
        i, j = index[a], index[b]
        adj[i].add(j)
        adj[j].add(i)
    records = []
    for x in ids:
        rec = attributes[x]
        absent = [a for a in attribute_names if a not in rec]
        if absent:
            raise DataError(f"node {x!r} has no value for attribute(s) {absent}")
        records.append({a: rec[a] for a in attribute_names})
    return AttributedGraph(
        ids=ids,
        adjacency=tuple(tuple(sorted(s)) for s in adj),
        attribute_names=attribute_names,
        attributes=tuple(records),
    )


def load_graph(
    edge_path,
    attr_path,
    attribute_names: Sequence[str] | None = None,
    id_column: str = "id",
    delimiter: str | None = "auto",
    header: bool = False,
) -> AttributedGraph:
    edges = load_edge_list(edge_path, delimiter=delimiter, header=header)
    table = load_attributes(attr_path, id_column=id_column, attribute_names=attribute_names)
    return build_graph(edges, table, attribute_names)


@dataclass(frozen=True)
class DistanceShells:
    """Nodes grouped by shortest-path distance from ``source``.

    ``shells`` holds ``(d, nodes)`` pairs for ``d = 1, 2, ...`` with no empty
    shell; ``nodes`` is a sorted tuple of indices.
    """

    source: int
    shells: tuple[tuple[int, tuple[int, ...]], ...]

    def reachable(self) -> int:
        return sum(len(s) for _, s in self.shells)


def distance_shells(g: AttributedGraph, source: int) -> DistanceShells:
    if not isinstance(source, int) or not 0 <= source < g.n_nodes:
        raise DataError(f"unknown source index {source!r}")
    adj = g.adjacency
    seen = {source}
    frontier = [source]
    shells = []
    d = 0
    while frontier:
        d += 1
        nxt = []
        for u in frontier:
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        if nxt:
            nxt.sort()
            shells.append((d, tuple(nxt)))
        frontier = nxt
    return DistanceShells(source, tuple(shells))


def write_edge_list(g: AttributedGraph, path) -> None:
    with Path(path).open("w", newline="") as fh:
        for u, v in g.edges():
            fh.write(f"{g.ids[u]},{g.ids[v]}\n")


def write_attributes(g: AttributedGraph, path, id_column: str = "id") -> None:
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([id_column, *g.attribute_names])
        for x, rec in zip(g.ids, g.attributes):
            w.writerow([x, *(rec[a] for a in g.attribute_names)])
