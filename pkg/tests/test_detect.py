import random

import pytest

from oracles import brute_max_modularity, random_graph
from refnet import (
    DirectedInputError,
    Edge,
    EmptyGraph,
    Graph,
    Partition,
    build_graph,
    connected_components,
    girvan_newman,
    louvain,
    modularity,
    run_all,
    simplify,
    smith_pittman,
    to_undirected,
)
from refnet.detect import LouvainTrace
from refnet.graph import degrees

TRIANGLES = Partition({"1": 0, "2": 0, "3": 0, "4": 1, "5": 1, "6": 1})


@pytest.mark.parametrize("algo", [girvan_newman, smith_pittman])
def test_divisive_bridge(bridge, algo):
    d = algo(bridge)
    assert d.removals[0].edge == Edge("3", "4")
    assert d.removals[0].betweenness == pytest.approx(9.0)
    assert d.best == TRIANGLES
    assert d.best.q == pytest.approx(5 / 14, abs=1e-12)


def test_sp_bridge_focus_is_node_3(bridge):
    # nodes 3 and 4 tie on degree; 3 comes first
    assert smith_pittman(bridge).removals[0].focus == "3"


def test_gn_triangle_keeps_whole():
    tri = build_graph([Edge("a", "b"), Edge("b", "c"), Edge("c", "a")], directed=False)
    d = girvan_newman(tri)
    assert d.best.num_communities == 1
    assert d.best.q == pytest.approx(0.0, abs=1e-12)
    assert all(lv.q < 0 for lv in d.levels[1:])


@pytest.mark.parametrize("algo", [girvan_newman, smith_pittman])
def test_divisive_single_loop(algo):
    d = algo(build_graph([Edge("a", "a")]))
    assert len(d.levels) == 1
    assert d.best.num_communities == 1 and d.best.q == 0.0


@pytest.mark.parametrize("algo", [girvan_newman, smith_pittman])
def test_divisive_empty(algo):
    with pytest.raises(EmptyGraph):
        algo(Graph(["a"], []))


@pytest.mark.parametrize("algo", [girvan_newman, smith_pittman])
@pytest.mark.parametrize("directed", [False, True])
def test_divisive_invariants(algo, directed):
    rng = random.Random(99 + directed)
    for _ in range(25):
        g = random_graph(rng, 9, directed)
        d = algo(g)
        counts = [lv.partition.num_communities for lv in d.levels]
        assert counts == sorted(counts) and len(set(counts)) == len(counts)
        assert d.levels[0].partition == connected_components(g)
        for lv in d.levels:
            assert lv.q == pytest.approx(modularity(g, lv.partition), abs=1e-12)
        # each level refines the previous one
        for prev, cur in zip(d.levels, d.levels[1:]):
            for a in g.nodes:
                for b in g.nodes:
                    if cur.partition[a] == cur.partition[b]:
                        assert prev.partition[a] == prev.partition[b]
        removed = sorted((r.edge for r in d.removals), key=repr)
        non_loop = sorted((e for e in simplify(g).edges if not e.is_loop), key=repr)
        assert removed == non_loop
        assert algo(g) == d


def test_sp_removals_touch_focus_node():
    rng = random.Random(5)
    for _ in range(20):
        g = simplify(random_graph(rng, 9, directed=True))
        d = smith_pittman(g)
        current = list(g.edges)
        for r in d.removals:
            live = Graph(g.nodes, current, True)
            deg = degrees(live, "total")
            eligible = {n for e in current if not e.is_loop for n in (e.source, e.target)}
            assert r.focus in (r.edge.source, r.edge.target)
            assert deg[r.focus] == max(deg[n] for n in eligible)
            current.remove(r.edge)


def test_sp_global_scope_matches_gn():
    rng = random.Random(8)
    for _ in range(10):
        g = random_graph(rng, 8, directed=True)
        assert [r.edge for r in smith_pittman(g, "global").removals] == [r.edge for r in girvan_newman(g).removals]


def test_louvain_two_cliques(two_cliques):
    p = louvain(two_cliques, seed=0)
    assert p.communities() == [["n0", "n1", "n2", "n3"], ["n4", "n5", "n6", "n7"]]
    assert p.q == pytest.approx(11 / 26, abs=1e-12)


def test_louvain_single_edge():
    p = louvain(build_graph([Edge("a", "b")], directed=False), seed=1)
    assert p.num_communities == 1 and p.q == pytest.approx(0.0, abs=1e-12)


def test_louvain_rejects_directed():
    with pytest.raises(DirectedInputError):
        louvain(build_graph([Edge("a", "b"), Edge("b", "a")]), seed=0)


def test_louvain_bridge(bridge):
    assert louvain(bridge, seed=3) == TRIANGLES


def test_louvain_deterministic_and_bounded():
    rng = random.Random(12)
    for _ in range(40):
        g = random_graph(rng, 8, directed=False)
        seed = rng.randrange(1000)
        p = louvain(g, seed)
        assert louvain(g, seed) == p
        n = len(g.nodes)
        assert p.q >= modularity(g, list(range(n))) - 1e-12
        assert p.q >= modularity(g, [0] * n) - 1e-12
        assert p.q <= brute_max_modularity(g)[0] + 1e-12


def test_louvain_trace_monotone(two_cliques):
    trace = LouvainTrace()
    louvain(two_cliques, seed=4, trace=trace)
    qs = [modularity(two_cliques, m) for m in trace.moves]
    assert qs == sorted(qs)
    assert trace.passes


def test_louvain_handles_isolated_nodes_and_loops():
    g = Graph(["x", "a", "b"], [Edge("a", "a", 3), Edge("a", "b")], directed=False)
    p = louvain(g, seed=0)
    assert p.q == pytest.approx(modularity(g, p))


def test_run_all_bridge(bridge_directed, bridge):
    for name, p in run_all(bridge, seed=0).items():
        assert p == TRIANGLES, name
    results = run_all(bridge_directed, seed=0)
    assert results["louvain"] == TRIANGLES
    assert results["louvain"].q == pytest.approx(modularity(to_undirected(bridge_directed), TRIANGLES))


def test_run_all_single_edge():
    g = build_graph([Edge("a", "b")])
    for p in run_all(g, seed=0).values():
        assert p.num_communities == 1
