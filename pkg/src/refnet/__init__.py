"""Referral-network construction and community detection."""

from .centrality import degree_centrality, edge_betweenness
from .detect import Dendrogram, girvan_newman, louvain, run_all, smith_pittman
from .errors import *  # noqa: F401,F403
from .graph import (
    Edge,
    Graph,
    build_graph,
    connected_components,
    degree,
    degrees,
    parse_edge_list,
    simplify,
    to_edge_list_csv,
    to_undirected,
)
from .modularity import best_partition_over, modularity
from .partition import Partition

__version__ = "0.1.0"
