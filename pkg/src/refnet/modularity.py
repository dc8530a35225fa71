"""Modularity of a partition.

Directed graphs::

    Q = 1/m * sum_ij (A_ij - kout_i * kin_j / m) * [c_i == c_j]

Undirected graphs::

    Q = 1/2m * sum_ij (A_ij - k_i * k_j / 2m) * [c_i == c_j]

``A`` is the summed edge weight between nodes and ``m`` the total edge
weight. In the undirected case a self-loop of weight ``w`` puts ``2w`` on the
diagonal and adds ``2w`` to the node's degree. Both forms reduce to a sum over
communities of (internal weight / m) minus a degree product term, which is
what is evaluated here.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .errors import EmptyGraph, NoCandidates, PartitionMismatch
from .graph import Graph
from .partition import Partition

# Q values closer than this are treated as equal when ranking partitions.
Q_TIE_TOL = 1e-12


def _as_partition(g: Graph, p) -> Partition:
    if not isinstance(p, Partition):
        p = Partition(p) if isinstance(p, Mapping) else Partition.from_labels(g.nodes, p)
    if len(p.assignment) != len(g.nodes) or any(n not in p.assignment for n in g.nodes):
        raise PartitionMismatch("partition does not cover exactly the graph's nodes")
    return p


def modularity(g: Graph, p: Partition | Mapping[str, int] | Sequence) -> float:
    """Modularity of ``p`` on ``g``.

    ``p`` may be a :class:`Partition`, a node-to-id mapping with contiguous
    ids, or a sequence of labels aligned with ``g.nodes``.
    """
    p = _as_partition(g, p)
    m = g.total_weight
    if m == 0:
        raise EmptyGraph("modularity is undefined for a graph with no edge weight")
    a = p.assignment
    k = p.num_communities
    internal = [0] * k
    out_deg = [0] * k
    in_deg = [0] * k
    for e in g.edges:
        cs, ct = a[e.source], a[e.target]
        out_deg[cs] += e.weight
        in_deg[ct] += e.weight
        if cs == ct:
            internal[cs] += e.weight
    q = 0.0
    if g.directed:
        for c in range(k):
            q += internal[c] / m - (out_deg[c] * in_deg[c]) / (m * m)
    else:
        two_m = 2 * m
        for c in range(k):
            tot = out_deg[c] + in_deg[c]
            q += internal[c] / m - (tot * tot) / (two_m * two_m)
    return q


def best_partition_over(g: Graph, candidates: Sequence[Partition]) -> Partition:
    """Highest-modularity candidate, with ``q`` filled in.

    Ties (within ``Q_TIE_TOL``) go to fewer communities, then to the earlier
    candidate.
    """
    i, qs = best_index_over(g, candidates)
    return _as_partition(g, candidates[i]).with_q(qs[i])


def best_index_over(g: Graph, candidates: Sequence[Partition]) -> tuple[int, list[float]]:
    """Index of the winning candidate and the Q of every candidate."""
    if not candidates:
        raise NoCandidates("no candidate partitions given")
    qs = [modularity(g, c) for c in candidates]
    best = 0
    for i in range(1, len(candidates)):
        diff = qs[i] - qs[best]
        if diff > Q_TIE_TOL or (
            abs(diff) <= Q_TIE_TOL
            and _num_communities(g, candidates[i]) < _num_communities(g, candidates[best])
        ):
            best = i
    return best, qs


def _num_communities(g: Graph, p) -> int:
    return _as_partition(g, p).num_communities
