"""Community detection toolkit for signed (two-layer weighted) networks."""

from .engines import (
    EmptyNetworkError,
    EngineConfig,
    RunReport,
    candidate_communities,
    flatten,
    move_phase,
    optimize,
)
from .graph import (
    EdgeListError,
    NodeLabelMap,
    SignedGraph,
    aggregate,
    build_graph,
    degrees,
    load_edge_list,
    serialize_edge_list,
)
from .hopgraph import HopNeighborhood, build_hop_neighbors
from .metrics import GraphStats, graph_stats, nmi
from .modularity import (
    Partition,
    Resolution,
    move_gain,
    pairwise_term,
    signed_modularity,
    unsigned_modularity,
)
from .ssbm import SsbmSpec, generate

__version__ = "0.1.0"

__all__ = [
    "EdgeListError",
    "EmptyNetworkError",
    "EngineConfig",
    "GraphStats",
    "HopNeighborhood",
    "NodeLabelMap",
    "Partition",
    "Resolution",
    "RunReport",
    "SignedGraph",
    "SsbmSpec",
    "aggregate",
    "build_graph",
    "build_hop_neighbors",
    "candidate_communities",
    "degrees",
    "flatten",
    "generate",
    "graph_stats",
    "load_edge_list",
    "move_gain",
    "move_phase",
    "nmi",
    "optimize",
    "pairwise_term",
    "serialize_edge_list",
    "signed_modularity",
    "unsigned_modularity",
]
