"""Community tables, referral-degree distributions and graph exports.

Every renderer here is byte-deterministic: same graph and partition in,
same bytes out.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass
from typing import Literal
from xml.sax.saxutils import quoteattr

from .centrality import edge_betweenness
from .errors import FormatError, ParseError, PartitionMismatch
from .graph import Edge, Graph, degrees, simplify
from .partition import Partition

ExportFormat = Literal["dot", "graphml", "json"]
EXPORT_FORMATS = ("dot", "graphml", "json")


def format_q(q: float) -> str:
    return f"{q:.6f}"


@dataclass(frozen=True)
class CommunityTableRow:
    community_id: int
    intervention: str
    referrals_in: int
    referrals_out: int
    total: int


@dataclass(frozen=True)
class DegreeDistributionRow:
    intervention: str
    referrals_in: int
    referrals_out: int
    total: int
    rank: int


def _check_partition(g: Graph, p: Partition):
    if set(p.assignment) != set(g.nodes) or len(p.assignment) != len(g.nodes):
        raise PartitionMismatch("partition does not cover exactly the graph's nodes")


def community_table(g: Graph, p: Partition) -> list[CommunityTableRow]:
    """One row per node, grouped by community id, alphabetical within a group."""
    _check_partition(g, p)
    din, dout = degrees(g, "in"), degrees(g, "out")
    rows = [
        CommunityTableRow(p[n], n, din[n], dout[n], din[n] + dout[n])
        for n in g.nodes
    ]
    return sorted(rows, key=lambda r: (r.community_id, r.intervention))


def degree_distribution(g: Graph) -> list[DegreeDistributionRow]:
    """Nodes ranked by ascending total referrals (ties alphabetical), rank from 1."""
    din, dout = degrees(g, "in"), degrees(g, "out")
    ordered = sorted(g.nodes, key=lambda n: (din[n] + dout[n], n))
    return [
        DegreeDistributionRow(n, din[n], dout[n], din[n] + dout[n], rank)
        for rank, n in enumerate(ordered, start=1)
    ]


def render_community_table(rows: list[CommunityTableRow], q: float | None = None, title: str = "") -> str:
    """Plain-text table in the grouped "Community: k" layout."""
    width = max([len("Intervention")] + [len(r.intervention) for r in rows])
    head = f"{'Intervention':<{width}}  {'Referrals In':>12}  {'Referrals Out':>13}  {'Total':>6}"
    out = []
    if title:
        out.append(title)
    if q is not None:
        out.append(f"Q = {format_q(q)}")
    out.append(head)
    out.append("-" * len(head))
    current = None
    for r in rows:
        if r.community_id != current:
            current = r.community_id
            out.append(f"Community: {current}")
        out.append(f"{r.intervention:<{width}}  {r.referrals_in:>12}  {r.referrals_out:>13}  {r.total:>6}")
    return "\n".join(out) + "\n"


def community_table_csv(rows: list[CommunityTableRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("community_id", "intervention", "referrals_in", "referrals_out", "total"))
    for r in rows:
        w.writerow(tuple(asdict(r).values()))
    return buf.getvalue()


def degree_distribution_csv(rows: list[DegreeDistributionRow], singletons: set[str] | None = None) -> str:
    """CSV of the distribution; with ``singletons`` an extra flag column marks them."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    header = ["rank", "intervention", "referrals_in", "referrals_out", "total"]
    if singletons is not None:
        header.append("singleton_community")
    w.writerow(header)
    for r in rows:
        line = [r.rank, r.intervention, r.referrals_in, r.referrals_out, r.total]
        if singletons is not None:
            line.append(int(r.intervention in singletons))
        w.writerow(line)
    return buf.getvalue()


def degree_distribution_series(rows: list[DegreeDistributionRow], singletons: set[str] | None = None) -> dict:
    """Diverging-bar series: in-referrals negated, out-referrals positive."""
    series = {
        "categories": [r.intervention for r in rows],
        "referrals_in": [-r.referrals_in for r in rows],
        "referrals_out": [r.referrals_out for r in rows],
        "total": [r.total for r in rows],
    }
    if singletons is not None:
        series["singleton_community"] = [r.intervention in singletons for r in rows]
    return series


def singleton_members(p: Partition) -> set[str]:
    return {c[0] for c in p.communities() if len(c) == 1}


def centrality_csv(g: Graph) -> str:
    """Edge betweenness rows followed by per-node degree rows."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("kind", "from", "to", "weight", "betweenness", "in", "out", "total"))
    s = simplify(g)
    eb = edge_betweenness(s)
    for e in s.edges:
        score = eb[(e.source, e.target)]
        w.writerow(("edge", e.source, e.target, e.weight, f"{score:.6f}", "", "", ""))
    din, dout, dtot = degrees(g, "in"), degrees(g, "out"), degrees(g, "total")
    for n in g.nodes:
        w.writerow(("node", n, "", "", "", din[n], dout[n], dtot[n]))
    return buf.getvalue()


# -- graph export -----------------------------------------------------------

def _dot_id(label: str) -> str:
    if label.isidentifier() and label.isascii():
        return label
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def _export_dot(g: Graph, p: Partition | None) -> str:
    arrow = "->" if g.directed else "--"
    lines = ["digraph {" if g.directed else "graph {"]
    for n in g.nodes:
        if p is not None:
            lines.append(f'  {_dot_id(n)} [community="{p[n]}"];')
        else:
            lines.append(f"  {_dot_id(n)};")
    for e in g.edges:
        lines.append(f'  {_dot_id(e.source)} {arrow} {_dot_id(e.target)} [label="{e.weight}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _export_graphml(g: Graph, p: Partition | None) -> str:
    kind = "directed" if g.directed else "undirected"
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<graphml xmlns="http://graphml.graphdrawing.org/xmlns">',
        '  <key id="weight" for="edge" attr.name="weight" attr.type="int"/>',
    ]
    if p is not None:
        lines.append('  <key id="community" for="node" attr.name="community" attr.type="int"/>')
    lines.append(f'  <graph id="G" edgedefault="{kind}">')
    for n in g.nodes:
        if p is None:
            lines.append(f"    <node id={quoteattr(n)}/>")
        else:
            lines.append(f"    <node id={quoteattr(n)}>")
            lines.append(f'      <data key="community">{p[n]}</data>')
            lines.append("    </node>")
    for i, e in enumerate(g.edges):
        lines.append(f'    <edge id="e{i}" source={quoteattr(e.source)} target={quoteattr(e.target)}>')
        lines.append(f'      <data key="weight">{e.weight}</data>')
        lines.append("    </edge>")
    lines.append("  </graph>")
    lines.append("</graphml>")
    return "\n".join(lines) + "\n"


def _export_json(g: Graph, p: Partition | None) -> str:
    nodes = []
    for n in g.nodes:
        item = {"id": n}
        if p is not None:
            item["community"] = p[n]
        nodes.append(item)
    doc = {
        "directed": g.directed,
        "nodes": nodes,
        "edges": [{"from": e.source, "to": e.target, "weight": e.weight} for e in g.edges],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def export_graph(g: Graph, p: Partition | None = None, format: ExportFormat = "json") -> bytes:
    """Serialize ``g`` (optionally annotated with communities) as DOT, GraphML or JSON."""
    if p is not None:
        _check_partition(g, p)
    writers = {"dot": _export_dot, "graphml": _export_graphml, "json": _export_json}
    try:
        writer = writers[format]
    except KeyError:
        raise FormatError(f"unknown export format {format!r}; choose from {', '.join(EXPORT_FORMATS)}") from None
    return writer(g, p).encode("utf-8")


def graph_from_json(data: bytes | str) -> tuple[Graph, Partition | None]:
    """Inverse of ``export_graph(..., format="json")``."""
    try:
        doc = json.loads(data)
        nodes = [item["id"] for item in doc["nodes"]]
        edges = [Edge(e["from"], e["to"], e["weight"]) for e in doc["edges"]]
        g = Graph(nodes, edges, doc["directed"])
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"not a graph JSON document: {exc}") from None
    p = None
    if nodes and all("community" in item for item in doc["nodes"]):
        p = Partition({item["id"]: item["community"] for item in doc["nodes"]})
    return g, p
