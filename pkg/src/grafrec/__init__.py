"""Graph-based recommendation: session graphs and ARS, preference graphs
and meta-paths, PageRank, and five interchangeable digraph layouts."""

from .ars import ArsQuery, ars_recommend, ars_subgraphs
from .errors import *  # noqa: F401,F403
from .graph import (
    Adjacency,
    AdjacencyList,
    AdjacencyMatrix,
    AsymptoticClass,
    EdgeList,
    GraphRepresentation,
    IncidenceList,
    IncidenceMatrix,
    Kind,
    MemoryProfile,
    adjacency_query,
    build_from_edges,
    convert,
    memory_profile,
)
from .hetnet import (
    EdgeType,
    HetEdge,
    HetGraph,
    MetaPathPattern,
    NodeType,
    PGRecGraph,
    RatingMatrix,
    build_pgrec,
    extend_pgrec,
    match_metapath,
    rating_matrix_from_bipartite,
    recommend_via_metapath,
)
from .ids import id_key, sorted_ids
from .pagerank import (
    DanglingPolicy,
    PageRankConfig,
    RankState,
    TransitionMatrix,
    Variant,
    init_ranks,
    pagerank_run,
    pagerank_step,
    rank_positions,
    solve_linear,
    transition_matrix,
)
from .session import (
    ClassType,
    KernelClass,
    KernelClassPartition,
    Session,
    SessionGraph,
    UtilityDomain,
    UtilityTable,
    Violation,
    extract_session,
    recommend_by_utility,
    recommend_for_object_by_utility,
    validate_session_graph,
)

__version__ = "0.1.0"
