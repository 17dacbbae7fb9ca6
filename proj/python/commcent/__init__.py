"""Classical and community-aware centrality on modular networks."""

from ._commcent import (
    ConvergenceError,
    Graph,
    ParseError,
    Partition,
    centrality,
    classical_ids,
    community_aware,
    community_aware_ids,
    fit_powerlaw,
    generate_lfr,
    heatmap,
    kendall_tau_b,
    load_edge_list,
    louvain,
    mixing_parameter,
    modularity,
    ols,
    set_thread_count,
    topo_features,
    wls,
)

__all__ = [
    "ConvergenceError",
    "Graph",
    "ParseError",
    "Partition",
    "centrality",
    "classical_ids",
    "community_aware",
    "community_aware_ids",
    "fit_powerlaw",
    "generate_lfr",
    "heatmap",
    "kendall_tau_b",
    "load_edge_list",
    "louvain",
    "mixing_parameter",
    "modularity",
    "ols",
    "set_thread_count",
    "topo_features",
    "wls",
]
