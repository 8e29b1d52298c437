from .bipartite import (
    Cluster,
    BipartiteGraph,
    predicted_commutant_dims,
    emit_dot,
    graph_hash,
    graphs_isomorphic
)
from .cosets import (
    local_freeness,
    principal_graph,
    dual_graph,
    truncated_graph,
    graph_pair
)

__all__ = [
    "Cluster",
    "BipartiteGraph",
    "predicted_commutant_dims",
    "emit_dot",
    "graph_hash",
    "graphs_isomorphic",
    "local_freeness",
    "principal_graph",
    "dual_graph",
    "truncated_graph",
    "graph_pair"
]
