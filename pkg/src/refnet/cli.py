"""``refnet`` command line.

Exit codes: 0 success, 2 parse/validation error, 3 algorithm contract error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import ingest, report
from .detect import girvan_newman, louvain, smith_pittman
from .errors import ParseError, RefnetError
from .graph import Graph, build_graph, parse_edge_list, simplify, to_edge_list_csv, to_undirected
from .modularity import modularity
from .partition import Partition

ALGORITHM_NAMES = {"gn": "girvan_newman", "louvain": "louvain", "sp": "smith_pittman"}


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str | None, data: str | bytes):
    if isinstance(data, str):
        data = data.encode("utf-8")
    if path is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        Path(path).write_bytes(data)


def _dump_json(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _load_graph(args) -> Graph:
    return parse_edge_list(_read(args.input), directed=not args.undirected)


def _edge_doc(e):
    return None if e is None else {"from": e.source, "to": e.target, "weight": e.weight}


def _round_q(q: float) -> float:
    return round(q, 6)


def detect_document(g: Graph, algorithm: str, seed: int = 0, sp_scope: str = "ego") -> dict:
    """Run one algorithm and build the JSON document ``detect`` writes."""
    doc: dict = {"algorithm": algorithm}
    levels = None
    if algorithm == "louvain":
        target = to_undirected(g) if g.directed else g
        best = louvain(target, seed)
        q = best.q
    else:
        dendro = girvan_newman(g) if algorithm == "gn" else smith_pittman(g, sp_scope)
        best = dendro.best
        q = best.q
        levels = [
            {
                "index": i,
                "removed_edge": _edge_doc(lv.removed_edge),
                "num_communities": lv.partition.num_communities,
                "q": _round_q(lv.q),
            }
            for i, lv in enumerate(dendro.levels)
        ]
    doc["q"] = _round_q(q)
    if algorithm == "louvain" and g.directed:
        doc["q_directed"] = _round_q(modularity(g, best))
    if algorithm == "louvain":
        doc["seed"] = seed
    if algorithm == "sp":
        doc["scope"] = sp_scope
    doc["num_communities"] = best.num_communities
    doc["communities"] = [{"id": i, "members": members} for i, members in enumerate(best.communities())]
    if levels is not None:
        doc["best_index"] = dendro.best_index
        doc["levels"] = levels
    return doc


def _load_communities(path: str, g: Graph) -> tuple[Partition, float | None, str]:
    try:
        doc = json.loads(_read(path))
        groups = [c["members"] for c in doc["communities"]]
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"{path}: not a communities document: {exc}") from None
    name = ALGORITHM_NAMES.get(doc.get("algorithm"), "")
    return Partition.from_communities(g.nodes, groups), doc.get("q"), name


def _partition_for(args, g: Graph) -> tuple[Partition | None, float | None, str]:
    if getattr(args, "communities", None):
        return _load_communities(args.communities, g)
    if getattr(args, "algorithm", None):
        doc = detect_document(g, args.algorithm, args.seed, getattr(args, "sp_scope", "ego"))
        p = Partition.from_communities(g.nodes, [c["members"] for c in doc["communities"]])
        return p, doc["q"], ALGORITHM_NAMES[args.algorithm]
    return None, None, ""


def cmd_ingest(args) -> int:
    records = ingest.parse_enrollments(_read(args.input))
    edges = ingest.build_referral_edges(records, pairing=args.pairing)
    g = simplify(build_graph(edges, directed=True))
    _write(args.output, to_edge_list_csv(g))
    if args.summary:
        s = ingest.summarize_cohort(records)
        print(_dump_json(s.__dict__), end="", file=sys.stderr)
    return 0


def cmd_synth(args) -> int:
    if args.config:
        try:
            raw = json.loads(_read(args.config))
        except ValueError as exc:
            raise ParseError(f"{args.config}: invalid JSON: {exc}") from None
        config = ingest.SyntheticConfig.from_dict(raw)
    else:
        config = ingest.FIXTURE_CONFIG
    records = ingest.generate_synthetic_enrollments(args.seed, config)
    _write(args.output, ingest.write_enrollments(records))
    return 0


def cmd_detect(args) -> int:
    g = _load_graph(args)
    doc = detect_document(g, args.algorithm, args.seed, args.sp_scope)
    _write(args.output, _dump_json(doc))
    return 0


def cmd_report(args) -> int:
    g = _load_graph(args)
    p, q, name = _partition_for(args, g)
    if args.table == "communities":
        if p is None:
            raise ParseError("--table communities needs --communities FILE or --algorithm")
        rows = report.community_table(g, p)
        if q is None:
            q = modularity(g, p)
        if args.format == "csv":
            out = report.community_table_csv(rows)
        elif args.format == "json":
            out = _dump_json({"q": _round_q(q), "rows": [r.__dict__ for r in rows]})
        else:
            out = report.render_community_table(rows, q, title=f"{name} communities" if name else "")
    elif args.table == "degrees":
        rows = report.degree_distribution(g)
        singles = report.singleton_members(p) if p is not None else None
        if args.format == "json":
            out = _dump_json(report.degree_distribution_series(rows, singles))
        else:
            out = report.degree_distribution_csv(rows, singles)
    else:
        out = report.centrality_csv(g)
    _write(args.output, out)
    return 0


def cmd_export(args) -> int:
    g = _load_graph(args)
    p, _, _ = _partition_for(args, g)
    _write(args.output, report.export_graph(g, p, args.format))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="refnet", description="Referral networks and community detection.")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="enrollment CSV -> simplified referral edge list")
    p.add_argument("--input", required=True)
    p.add_argument("--output")
    p.add_argument("--pairing", choices=("consecutive", "all-ordered"), default="consecutive")
    p.add_argument("--summary", action="store_true", help="print cohort counts as JSON to stderr")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("synth", help="generate a synthetic enrollment CSV")
    p.add_argument("--seed", type=int, default=ingest.FIXTURE_SEED)
    p.add_argument("--config", help="JSON config; defaults to the built-in fixture")
    p.add_argument("--output")
    p.set_defaults(func=cmd_synth)

    def graph_input(p):
        p.add_argument("--input", required=True, help="edge list CSV (from,to,weight)")
        p.add_argument("--undirected", action="store_true", help="read the edge list as undirected")

    def partition_source(p, required=False):
        group = p.add_mutually_exclusive_group(required=required)
        group.add_argument("--communities", help="communities JSON written by 'detect'")
        group.add_argument("--algorithm", choices=sorted(ALGORITHM_NAMES))
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--sp-scope", choices=("ego", "global"), default="ego")

    p = sub.add_parser("detect", help="run a community detection algorithm")
    graph_input(p)
    p.add_argument("--algorithm", choices=sorted(ALGORITHM_NAMES), required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sp-scope", choices=("ego", "global"), default="ego")
    p.add_argument("--output")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("report", help="community, degree or centrality tables")
    graph_input(p)
    p.add_argument("--table", choices=("communities", "degrees", "centrality"), required=True)
    partition_source(p)
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--output")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("export", help="export the graph as DOT, GraphML or JSON")
    graph_input(p)
    p.add_argument("--format", choices=report.EXPORT_FORMATS, required=True)
    partition_source(p)
    p.add_argument("--output")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except RefnetError as exc:
        print(f"refnet {args.command}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
