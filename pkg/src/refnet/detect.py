"""Community detection: Girvan-Newman, Louvain and Smith-Pittman.

Girvan-Newman and Smith-Pittman are divisive. They delete one edge at a
time, read communities off the weakly connected components, and score each
resulting partition against the *original* graph. The returned
:class:`Dendrogram` keeps every distinct partition seen; the best one is
chosen by modularity.

Louvain is agglomerative and only defined for undirected graphs here.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Literal

from .centrality import _edge_betweenness_positions
from .errors import DirectedInputError, EmptyGraph
from .graph import Edge, Graph, connected_components, degrees, simplify, to_undirected
from .modularity import best_index_over, modularity
from .partition import Partition

log = logging.getLogger(__name__)

# Relative tolerance under which two betweenness scores count as tied.
BETWEENNESS_TIE_RTOL = 1e-9
# Minimum modularity gain for a Louvain move to be accepted.
LOUVAIN_MIN_GAIN = 1e-12

ALGORITHMS = ("girvan_newman", "louvain", "smith_pittman")


@dataclass(frozen=True)
class Level:
    removed_edge: Edge | None
    partition: Partition
    q: float


@dataclass(frozen=True)
class Removal:
    """One deleted edge. ``focus`` is the max-degree node for Smith-Pittman."""

    edge: Edge
    betweenness: float
    focus: str | None = None


@dataclass
class Dendrogram:
    levels: list[Level]
    best_index: int
    removals: list[Removal] = field(default_factory=list)

    @property
    def best(self) -> Partition:
        level = self.levels[self.best_index]
        return level.partition.with_q(level.q)


def _check_nonempty(g: Graph):
    if g.total_weight == 0:
        raise EmptyGraph("community detection needs at least one edge")


def _edge_rank(g: Graph, e: Edge) -> tuple[int, int]:
    i, j = g.index(e.source), g.index(e.target)
    if not g.directed and j < i:
        i, j = j, i
    return (i, j)


def _pick_max(g: Graph, edges: list[Edge], scores: list[float], positions) -> int:
    """Position of the highest-scoring edge; ties go to the smallest endpoint indices."""
    top = max(scores[p] for p in positions)
    tol = BETWEENNESS_TIE_RTOL * max(1.0, top)
    tied = [p for p in positions if scores[p] >= top - tol]
    return min(tied, key=lambda p: _edge_rank(g, edges[p]))


def _divisive(g: Graph, choose) -> Dendrogram:
    """Shared driver: delete edges picked by ``choose`` until it returns None."""
    _check_nonempty(g)
    current = simplify(g)
    partition = connected_components(current)
    levels = [Level(None, partition, modularity(g, partition))]
    removals = []
    while True:
        picked = choose(current)
        if picked is None:
            break
        pos, score, focus = picked
        edge = current.edges[pos]
        removals.append(Removal(edge, score, focus))
        current = current.with_edges(current.edges[:pos] + current.edges[pos + 1 :])
        after = connected_components(current)
        if after.num_communities != partition.num_communities:
            partition = after
            levels.append(Level(edge, partition, modularity(g, partition)))
    best, _ = best_index_over(g, [lv.partition for lv in levels])
    return Dendrogram(levels, best, removals)


def girvan_newman(g: Graph) -> Dendrogram:
    """Repeatedly delete the edge with the highest betweenness.

    Betweenness is recomputed after each deletion. Self-loops lie on no
    shortest path and are never deleted.
    """

    def choose(current: Graph):
        positions = [p for p, e in enumerate(current.edges) if not e.is_loop]
        if not positions:
            return None
        scores = _edge_betweenness_positions(current)
        pos = _pick_max(current, list(current.edges), scores, positions)
        return pos, scores[pos], None

    return _divisive(g, choose)


def smith_pittman(g: Graph, scope: Literal["ego", "global"] = "ego") -> Dendrogram:
    """Girvan-Newman restricted to the ego edges of the highest-degree node.

    Each step takes the node with the largest weighted total degree among
    nodes that still have a non-loop edge (ties: earliest node), and deletes
    its incident edge with the highest betweenness computed on the whole
    current graph. With ``scope="global"`` the deletion candidates are all
    non-loop edges instead.
    """
    if scope not in ("ego", "global"):
        raise ValueError(f"unknown scope {scope!r}")

    def choose(current: Graph):
        edges = list(current.edges)
        touching = set()
        for e in edges:
            if not e.is_loop:
                touching.add(e.source)
                touching.add(e.target)
        if not touching:
            return None
        deg = degrees(current, "total")
        focus = max((n for n in current.nodes if n in touching), key=lambda n: (deg[n], -current.index(n)))
        if scope == "ego":
            positions = [p for p, e in enumerate(edges) if not e.is_loop and focus in (e.source, e.target)]
        else:
            positions = [p for p, e in enumerate(edges) if not e.is_loop]
        scores = _edge_betweenness_positions(current)
        pos = _pick_max(current, edges, scores, positions)
        if scope == "ego":
            assert focus in (edges[pos].source, edges[pos].target)
        log.debug("smith-pittman: focus %r, removing %s (betweenness %.6g)", focus, edges[pos], scores[pos])
        return pos, scores[pos], focus

    return _divisive(g, choose)


@dataclass
class LouvainTrace:
    """Flat partitions recorded while Louvain runs (for inspection and tests).

    ``moves`` holds the flat assignment after every accepted node move and
    ``passes`` the flat assignment at the end of every pass.
    """

    moves: list[dict[str, int]] = field(default_factory=list)
    passes: list[dict[str, int]] = field(default_factory=list)


class _Level:
    """Aggregated undirected graph for one Louvain pass."""

    def __init__(self, n: int):
        self.n = n
        self.nbrs: list[dict[int, float]] = [{} for _ in range(n)]
        self.loops = [0.0] * n

    def add(self, u: int, v: int, w: float):
        if u == v:
            self.loops[u] += w
        else:
            self.nbrs[u][v] = self.nbrs[u].get(v, 0.0) + w
            self.nbrs[v][u] = self.nbrs[v].get(u, 0.0) + w

    def strengths(self) -> list[float]:
        return [sum(self.nbrs[i].values()) + 2.0 * self.loops[i] for i in range(self.n)]


def _local_moves(level: _Level, m: float, rng: random.Random, on_move=None) -> list[int] | None:
    """Phase 1. Returns the community of each node, or None if nothing moved."""
    n = level.n
    comm = list(range(n))
    k = level.strengths()
    tot = list(k)
    order = list(range(n))
    rng.shuffle(order)
    two_m = 2.0 * m
    moved_any = False
    improved = True
    while improved:
        improved = False
        for i in order:
            own = comm[i]
            links: dict[int, float] = {}
            for j, w in level.nbrs[i].items():
                c = comm[j]
                links[c] = links.get(c, 0.0) + w
            tot[own] -= k[i]
            stay = links.get(own, 0.0) - tot[own] * k[i] / two_m
            best_c, best_gain = own, stay
            for c, w_ic in links.items():
                if c == own:
                    continue
                gain = w_ic - tot[c] * k[i] / two_m
                if (gain - best_gain) / m > LOUVAIN_MIN_GAIN:
                    best_c, best_gain = c, gain
            # a candidate must beat staying put, not just the runner-up
            if best_c != own and (best_gain - stay) / m <= LOUVAIN_MIN_GAIN:
                best_c = own
            tot[best_c] += k[i]
            if best_c != own:
                comm[i] = best_c
                improved = moved_any = True
                if on_move is not None:
                    on_move(comm)
    return comm if moved_any else None


def louvain(g: Graph, seed: int = 0, trace: LouvainTrace | None = None) -> Partition:
    """Louvain modularity optimisation on an undirected graph.

    Nodes are visited in an order shuffled once per local-move phase by a
    ``random.Random(seed)`` stream. A node joins the neighbouring community
    with the largest modularity gain (first one wins ties) if the gain
    exceeds ``LOUVAIN_MIN_GAIN``. Communities are then collapsed into
    super-nodes, internal weight becoming self-loops, and the two phases
    repeat until a pass moves nothing.
    """
    if g.directed:
        raise DirectedInputError("louvain needs an undirected graph; convert with to_undirected() first")
    _check_nonempty(g)
    m = float(g.total_weight)
    rng = random.Random(seed)

    level = _Level(len(g.nodes))
    for e in g.edges:
        level.add(g.index(e.source), g.index(e.target), float(e.weight))
    # flat[i] = super-node currently holding original node i
    flat = list(range(len(g.nodes)))

    def record_move(comm):
        labels = [comm[s] for s in flat]
        trace.moves.append(Partition.from_labels(g.nodes, labels).assignment)

    while True:
        comm = _local_moves(level, m, rng, record_move if trace is not None else None)
        if comm is None:
            break
        renumber: dict[int, int] = {}
        for c in comm:
            renumber.setdefault(c, len(renumber))
        nxt = _Level(len(renumber))
        for u in range(level.n):
            cu = renumber[comm[u]]
            if level.loops[u]:
                nxt.add(cu, cu, level.loops[u])
            for v, w in level.nbrs[u].items():
                if u < v:
                    nxt.add(cu, renumber[comm[v]], w)
        flat = [renumber[comm[s]] for s in flat]
        level = nxt
        if trace is not None:
            trace.passes.append(Partition.from_labels(g.nodes, flat).assignment)
        log.debug("louvain pass: %d communities", level.n)

    p = Partition.from_labels(g.nodes, flat)
    return p.with_q(modularity(g, p))


def run_all(g: Graph, seed: int = 0) -> dict[str, Partition]:
    """Best partition from each algorithm.

    Louvain runs on ``to_undirected(g)`` when ``g`` is directed; its ``q`` is
    then the undirected score.
    """
    undirected = to_undirected(g) if g.directed else g
    return {
        "girvan_newman": girvan_newman(g).best,
        "louvain": louvain(undirected, seed),
        "smith_pittman": smith_pittman(g).best,
    }
