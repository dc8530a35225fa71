"""Edge-betweenness and degree centrality.

Shortest paths use unit edge lengths on the simplified graph: weights and
edge multiplicity never change which paths are shortest. Betweenness of an
edge is the sum, over node pairs, of the fraction of shortest paths between
the pair that use the edge. Directed graphs sum over ordered pairs,
undirected graphs over unordered pairs.
"""

from __future__ import annotations

from collections import deque

from .graph import Graph, degrees, simplify

EdgeKey = tuple[str, str]


def _adjacency(g: Graph) -> tuple[list[list[tuple[int, int]]], list]:
    """Per-node ``(neighbour, edge position)`` lists, loops dropped."""
    adj: list[list[tuple[int, int]]] = [[] for _ in g.nodes]
    for pos, e in enumerate(g.edges):
        if e.is_loop:
            continue
        u, v = g.index(e.source), g.index(e.target)
        adj[u].append((v, pos))
        if not g.directed:
            adj[v].append((u, pos))
    return adj


def edge_betweenness(g: Graph) -> dict[EdgeKey, float]:
    """Betweenness of every edge of ``simplify(g)``, keyed by ``(source, target)``.

    Keys follow the orientation the simplified graph stores. Self-loops are
    present with score 0.
    """
    s = simplify(g)
    scores = _edge_betweenness_positions(s)
    return {(e.source, e.target): scores[pos] for pos, e in enumerate(s.edges)}


def _edge_betweenness_positions(g: Graph) -> list[float]:
    """Scores indexed by edge position; ``g`` must already be simplified."""
    n = len(g.nodes)
    adj = _adjacency(g)
    total = [0.0] * len(g.edges)
    # Sources are processed in node order and merged in that order, so the
    # floating point result does not depend on anything but the graph.
    for source in range(n):
        dist = [-1] * n
        sigma = [0] * n
        preds: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        dist[source] = 0
        sigma[source] = 1
        order = []
        queue = deque([source])
        while queue:
            v = queue.popleft()
            order.append(v)
            for w, pos in adj[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append((v, pos))
        delta = [0.0] * n
        for w in reversed(order):
            coeff = (1.0 + delta[w]) / sigma[w]
            for v, pos in preds[w]:
                c = sigma[v] * coeff
                total[pos] += c
                delta[v] += c
    if not g.directed:
        # every unordered pair was counted once from each end
        total = [t / 2.0 for t in total]
    return total


def degree_centrality(g: Graph) -> dict[str, int]:
    """Weighted total degree per node (self-loops count twice)."""
    return degrees(g, "total")
