import random

import pytest

from oracles import bfs_distances, enumerate_betweenness, random_graph
from refnet import Edge, build_graph, connected_components, degree_centrality, edge_betweenness, degrees


def test_bridge_scores(bridge):
    eb = edge_betweenness(bridge)
    assert eb[("3", "4")] == pytest.approx(9.0, abs=1e-12)
    assert max(eb, key=eb.get) == ("3", "4")


def test_path_scores():
    g = build_graph([Edge("a", "b"), Edge("b", "c")], directed=False)
    assert edge_betweenness(g) == pytest.approx({("a", "b"): 2.0, ("b", "c"): 2.0})


def test_self_loop_scores_zero():
    assert edge_betweenness(build_graph([Edge("a", "a")])) == {("a", "a"): 0.0}


def test_weights_do_not_change_paths():
    light = build_graph([Edge("a", "b"), Edge("b", "c"), Edge("a", "c")], directed=False)
    heavy = build_graph([Edge("a", "b", 9), Edge("b", "c", 9), Edge("a", "c", 1)], directed=False)
    assert edge_betweenness(light) == edge_betweenness(heavy)


def test_directed_uses_ordered_pairs():
    g = build_graph([Edge("a", "b"), Edge("b", "c")])
    # a->b carries (a,b) and (a,c); b->c carries (b,c) and (a,c)
    assert edge_betweenness(g) == pytest.approx({("a", "b"): 2.0, ("b", "c"): 2.0})
    g = build_graph([Edge("a", "b"), Edge("b", "a")])
    assert edge_betweenness(g) == pytest.approx({("a", "b"): 1.0, ("b", "a"): 1.0})


def test_removing_bridge_disconnects(bridge):
    eb = edge_betweenness(bridge)
    top = max(eb, key=eb.get)
    rest = [e for e in bridge.edges if (e.source, e.target) != top]
    assert connected_components(bridge.with_edges(rest)).num_communities == 2


def test_degree_centrality():
    star = build_graph([Edge("c", x) for x in "wxyz"], directed=False)
    assert degree_centrality(star) == {"c": 4, "w": 1, "x": 1, "y": 1, "z": 1}
    assert degree_centrality(build_graph([Edge("a", "b"), Edge("b", "a")])) == {"a": 2, "b": 2}
    assert degree_centrality(build_graph([Edge("a", "b", 3), Edge("a", "a", 1)])) == {"a": 5, "b": 3}


@pytest.mark.parametrize("directed", [False, True])
def test_matches_enumeration_oracle(directed):
    rng = random.Random(7 + directed)
    for _ in range(40):
        g = random_graph(rng, 8, directed)
        ours = edge_betweenness(g)
        ref = enumerate_betweenness(g)
        assert ours.keys() == ref.keys()
        for k in ref:
            assert abs(ours[k] - ref[k]) <= 1e-9


def test_flow_conservation_on_connected_graphs():
    # each connected unordered pair spreads one unit over its path edges,
    # so summed betweenness = sum over pairs of their distance
    rng = random.Random(3)
    checked = 0
    while checked < 30:
        g = random_graph(rng, 10, directed=False, n_min=2, density=0.5)
        if connected_components(g).num_communities != 1:
            continue
        checked += 1
        expected = sum(
            dist
            for i, src in enumerate(g.nodes)
            for dst, dist in bfs_distances(g, src).items()
            if g.index(dst) > i
        )
        assert abs(sum(edge_betweenness(g).values()) - expected) <= 1e-9


def test_deterministic_bitwise():
    g = random_graph(random.Random(11), 10, directed=True, n_min=10)
    assert edge_betweenness(g) == edge_betweenness(g)


def test_degree_centrality_matches_total_degree():
    g = random_graph(random.Random(5), 8, directed=True)
    assert degree_centrality(g) == degrees(g, "total")
