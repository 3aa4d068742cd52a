"""Local cutvertices, local 2-separators, and their graph decompositions.

The library computes, for a locality parameter ``d``, the d-local
cutvertices and the totally nested d-local 2-separators of a sparse
weighted graph, assembles the induced decomposition graphs, and provides
the preprocessing and sweep stages of the road-network analysis pipeline.
Brute-force oracle implementations ship alongside for certification.
"""

__version__ = "0.1.0"

from .errors import DataIntegrityError, InputError, LocalSepError, PreconditionError
from .graph import (
    Ball,
    Graph,
    VertexPartition,
    ball,
    ball_components,
    bounded_distances,
    components,
    induced_subgraph,
    max_ball_size,
    saturation_locality,
)
from .cutvertices import find_local_cutvertices, local_blocks
from .separators import (
    ConnectivityGraph,
    CycleData,
    SeparatorRecord,
    Verdict,
    connectivity_graph,
    cycle_data,
    filter_totally_nested,
    find_local_2separators,
)
from .decomposition import (
    DecompositionGraph,
    DecompositionNode,
    DecompositionStats,
    NodeKind,
    build_from_2separators,
    build_from_cutvertices,
    stats,
    suppress_degree_two_nodes,
)
from .pipeline import (
    SweepRow,
    euclidean_weights,
    prune_degree_one,
    suppress_degree_two,
    sweep_d,
)

__all__ = [
    "Ball",
    "ConnectivityGraph",
    "CycleData",
    "DataIntegrityError",
    "DecompositionGraph",
    "DecompositionNode",
    "DecompositionStats",
    "Graph",
    "InputError",
    "LocalSepError",
    "NodeKind",
    "PreconditionError",
    "SeparatorRecord",
    "SweepRow",
    "Verdict",
    "VertexPartition",
    "ball",
    "ball_components",
    "bounded_distances",
    "build_from_2separators",
    "build_from_cutvertices",
    "components",
    "connectivity_graph",
    "cycle_data",
    "euclidean_weights",
    "filter_totally_nested",
    "find_local_2separators",
    "find_local_cutvertices",
    "induced_subgraph",
    "local_blocks",
    "max_ball_size",
    "prune_degree_one",
    "saturation_locality",
    "stats",
    "suppress_degree_two",
    "suppress_degree_two_nodes",
    "sweep_d",
]
