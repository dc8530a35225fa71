"""Labeled weighted multigraphs with self-loops.

Graphs are immutable. Node order is insertion order and every algorithm in
the package breaks ties by it, which is what makes results reproducible.

Degree convention: a directed self-loop of weight ``w`` adds ``w`` to the
in-degree, ``w`` to the out-degree and ``2w`` to the total. An undirected
self-loop adds ``2w`` to the total.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Literal

from .errors import BadLabel, EmptyGraph, NodeNotFound, NoOpError, ParseError
from .partition import Partition

DegreeMode = Literal["in", "out", "total"]

EDGE_LIST_HEADER = ("from", "to", "weight")


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    weight: int = 1

    def __post_init__(self):
        _check_label(self.source)
        _check_label(self.target)
        w = self.weight
        if isinstance(w, bool) or not isinstance(w, int) or w < 1:
            raise ValueError(f"edge weight must be a positive integer, got {w!r}")

    @property
    def is_loop(self) -> bool:
        return self.source == self.target

    def __str__(self):
        return f"{self.source} -> {self.target} ({self.weight})"


def _check_label(label):
    if not isinstance(label, str) or not label:
        raise BadLabel(f"node label must be a non-empty string, got {label!r}")


class Graph:
    """Directed or undirected weighted multigraph over string labels."""

    __slots__ = ("_nodes", "_edges", "_directed", "_index")

    def __init__(self, nodes: Iterable[str], edges: Iterable[Edge], directed: bool = True):
        nodes = tuple(nodes)
        for n in nodes:
            _check_label(n)
        index = {n: i for i, n in enumerate(nodes)}
        if len(index) != len(nodes):
            raise BadLabel("duplicate node label")
        edges = tuple(edges)
        for e in edges:
            if e.source not in index or e.target not in index:
                raise NodeNotFound(f"edge endpoint not in node set: {e}")
        self._nodes = nodes
        self._edges = edges
        self._directed = bool(directed)
        self._index = index

    @property
    def nodes(self) -> tuple[str, ...]:
        return self._nodes

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def directed(self) -> bool:
        return self._directed

    @property
    def total_weight(self) -> int:
        """``m``: the summed weight of all edges, loops included."""
        return sum(e.weight for e in self._edges)

    def index(self, node: str) -> int:
        try:
            return self._index[node]
        except KeyError:
            raise NodeNotFound(f"unknown node {node!r}") from None

    def __contains__(self, node) -> bool:
        return node in self._index

    def __len__(self) -> int:
        return len(self._nodes)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self._directed == other._directed
            and self._nodes == other._nodes
            and self._edges == other._edges
        )

    def __hash__(self):
        return hash((self._directed, self._nodes, self._edges))

    def __repr__(self):
        kind = "directed" if self._directed else "undirected"
        return f"<Graph {kind} nodes={len(self._nodes)} edges={len(self._edges)} m={self.total_weight}>"

    def with_edges(self, edges: Iterable[Edge]) -> "Graph":
        """Same node set, different edges (used by divisive algorithms)."""
        return Graph(self._nodes, edges, self._directed)


def build_graph(edges: Iterable[Edge], directed: bool = True, nodes: Iterable[str] = ()) -> Graph:
    """Construct a graph whose nodes are the edge endpoints in first-appearance order.

    Extra ``nodes`` (e.g. isolated ones) are placed first, in the given order.
    Parallel edges are kept.
    """
    edges = list(edges)
    if not edges:
        raise EmptyGraph("cannot build a graph from an empty edge list")
    order = dict.fromkeys(nodes)
    for e in edges:
        order.setdefault(e.source)
        order.setdefault(e.target)
    return Graph(order, edges, directed)


def _pair_key(g: Graph, e: Edge) -> tuple[str, str]:
    if g.directed or g.index(e.source) <= g.index(e.target):
        return (e.source, e.target)
    return (e.target, e.source)


def simplify(g: Graph) -> Graph:
    """Merge parallel edges by summing weights; self-loops are kept.

    In undirected graphs ``a-b`` and ``b-a`` are parallel. The merged edge
    keeps the orientation and position of its first occurrence.
    """
    merged: dict[tuple[str, str], list] = {}
    for e in g.edges:
        key = _pair_key(g, e)
        if key in merged:
            merged[key][2] += e.weight
        else:
            merged[key] = [e.source, e.target, e.weight]
    return g.with_edges(Edge(s, t, w) for s, t, w in merged.values())


def to_undirected(g: Graph) -> Graph:
    """Collapse each ordered pair to an unordered one, summing weights."""
    if not g.directed:
        raise NoOpError("graph is already undirected")
    return simplify(Graph(g.nodes, g.edges, directed=False))


def degree(g: Graph, node: str, mode: DegreeMode = "total") -> int:
    if node not in g:
        raise NodeNotFound(f"unknown node {node!r}")
    return degrees(g, mode)[node]


def degrees(g: Graph, mode: DegreeMode = "total") -> dict[str, int]:
    """Weighted degree of every node, in node order.

    For undirected graphs all three modes give the total degree.
    """
    if mode not in ("in", "out", "total"):
        raise ValueError(f"unknown degree mode {mode!r}")
    out = dict.fromkeys(g.nodes, 0)
    inn = dict.fromkeys(g.nodes, 0)
    for e in g.edges:
        out[e.source] += e.weight
        inn[e.target] += e.weight
    if not g.directed or mode == "total":
        return {n: out[n] + inn[n] for n in g.nodes}
    return out if mode == "out" else inn


def connected_components(g: Graph) -> Partition:
    """Weakly connected components.

    Component ids follow the insertion index of each component's earliest
    node.
    """
    parent = list(range(len(g.nodes)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for e in g.edges:
        a, b = find(g.index(e.source)), find(g.index(e.target))
        if a != b:
            # keep the smaller index as root
            parent[max(a, b)] = min(a, b)
    return Partition.from_labels(g.nodes, (find(i) for i in range(len(g.nodes))))


def to_edge_list_csv(g: Graph) -> str:
    """Serialize as ``from,to,weight`` CSV, one row per edge in edge order."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(EDGE_LIST_HEADER)
    for e in g.edges:
        writer.writerow((e.source, e.target, e.weight))
    return buf.getvalue()


def parse_edge_list(data: str | bytes, directed: bool = True) -> Graph:
    """Parse the ``from,to,weight`` CSV format produced by ``to_edge_list_csv``."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not valid UTF-8: {exc}") from None
    rows = csv.reader(io.StringIO(data))
    header = next(rows, None)
    if header is None or tuple(h.strip() for h in header) != EDGE_LIST_HEADER:
        raise ParseError(f"expected header {','.join(EDGE_LIST_HEADER)!r}, got {header!r}", line=1)
    edges = []
    for row in rows:
        line = rows.line_num
        if not row:
            continue
        if len(row) != 3:
            raise ParseError(f"expected 3 fields, got {len(row)}", line=line)
        source, target, weight = (field.strip() for field in row)
        if not source or not target:
            raise ParseError("empty node label", line=line)
        try:
            w = int(weight)
        except ValueError:
            raise ParseError(f"weight is not an integer: {weight!r}", line=line) from None
        if w < 1:
            raise ParseError(f"weight must be positive, got {w}", line=line)
        edges.append(Edge(source, target, w))
    if not edges:
        raise ParseError("edge list has no rows")
    return build_graph(edges, directed)
