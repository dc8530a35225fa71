import json
import random

import pytest

from oracles import random_graph
from refnet import Edge, FormatError, Graph, Partition, PartitionMismatch, build_graph, smith_pittman
from refnet.report import (
    community_table,
    degree_distribution,
    degree_distribution_series,
    export_graph,
    graph_from_json,
    render_community_table,
    singleton_members,
)


def test_row_arithmetic():
    g = build_graph([Edge("T: Small Molecule", "X", 188), Edge("Y", "T: Small Molecule", 174)])
    p = Partition.from_labels(g.nodes, [0, 1, 2])
    row = next(r for r in community_table(g, p) if r.intervention == "T: Small Molecule")
    assert (row.referrals_in, row.referrals_out, row.total) == (174, 188, 362)


def test_self_loop_row():
    g = build_graph([Edge("a", "a")])
    [row] = community_table(g, Partition({"a": 0}))
    assert (row.referrals_in, row.referrals_out, row.total) == (1, 1, 2)


def test_bridge_table_groups(bridge):
    rows = community_table(bridge, smith_pittman(bridge).best)
    assert len(rows) == 6
    assert [r.community_id for r in rows] == [0, 0, 0, 1, 1, 1]
    assert [r.intervention for r in rows] == ["1", "2", "3", "4", "5", "6"]


def test_table_mismatch(bridge):
    with pytest.raises(PartitionMismatch):
        community_table(bridge, Partition({"1": 0}))


def test_table_sorted_alphabetically_within_group():
    g = build_graph([Edge("zeta", "alpha"), Edge("beta", "gamma")])
    p = Partition.from_labels(g.nodes, [0, 0, 1, 1])
    assert [r.intervention for r in community_table(g, p)] == ["alpha", "zeta", "beta", "gamma"]


def test_table_invariants():
    rng = random.Random(2)
    for _ in range(20):
        g = random_graph(rng, 8, directed=True)
        p = Partition.from_labels(g.nodes, [rng.randrange(3) for _ in g.nodes])
        rows = community_table(g, p)
        assert len(rows) == len(g.nodes)
        assert len({r.community_id for r in rows}) == p.num_communities
        assert sum(r.referrals_in for r in rows) == sum(r.referrals_out for r in rows) == g.total_weight
        assert all(r.total == r.referrals_in + r.referrals_out for r in rows)


def test_degree_distribution_order():
    g = build_graph([
        Edge("Combined Modality", "Chemotherapy"),
        Edge("Chemotherapy", "Radioconjugate"),
        Edge("Chemotherapy", "T: Small Molecule", 12),
        Edge("T: Small Molecule", "T: Small Molecule", 175),
    ])
    rows = degree_distribution(g)
    assert [(r.intervention, r.total, r.rank) for r in rows] == [
        ("Combined Modality", 1, 1),
        ("Radioconjugate", 1, 2),
        ("Chemotherapy", 14, 3),
        ("T: Small Molecule", 362, 4),
    ]
    series = degree_distribution_series(rows)
    assert series["referrals_in"] == [-0, -1, -1, -187]
    assert series["referrals_out"] == [1, 0, 13, 175]


def test_degree_distribution_single_node():
    rows = degree_distribution(build_graph([Edge("a", "a")]))
    assert len(rows) == 1 and rows[0].rank == 1


def test_singleton_members():
    p = Partition.from_labels(["a", "b", "c"], [0, 1, 1])
    assert singleton_members(p) == {"a"}


def test_dot_export():
    out = export_graph(build_graph([Edge("a", "b")]), format="dot").decode()
    assert 'a -> b [label="1"]' in out
    assert out.startswith("digraph {")
    undirected = export_graph(build_graph([Edge("x y", "b")], directed=False), format="dot").decode()
    assert '"x y" -- b' in undirected


def test_graphml_export_has_community(bridge):
    out = export_graph(bridge, smith_pittman(bridge).best, "graphml").decode()
    assert 'attr.name="community"' in out
    assert '<data key="community">1</data>' in out


@pytest.mark.parametrize("fmt", ["dot", "graphml", "json"])
def test_export_deterministic(bridge, fmt):
    p = smith_pittman(bridge).best
    assert export_graph(bridge, p, fmt) == export_graph(bridge, p, fmt)


def test_export_unknown_format(bridge):
    with pytest.raises(FormatError):
        export_graph(bridge, format="png")


def test_json_round_trip():
    rng = random.Random(4)
    for _ in range(20):
        g = random_graph(rng, 7, directed=rng.random() < 0.5)
        p = Partition.from_labels(g.nodes, [rng.randrange(2) for _ in g.nodes])
        back, back_p = graph_from_json(export_graph(g, p, "json"))
        assert back == g and back_p == p
        back, back_p = graph_from_json(export_graph(g, None, "json"))
        assert back == g and back_p is None


def test_json_labels_are_utf8():
    g = Graph(["Ä"], [Edge("Ä", "Ä")])
    assert json.loads(export_graph(g, format="json"))["nodes"] == [{"id": "Ä"}]


def test_render_prints_q(bridge):
    p = smith_pittman(bridge).best
    text = render_community_table(community_table(bridge, p), p.q)
    assert "Q = 0.357143" in text
    assert text.count("Community:") == 2
