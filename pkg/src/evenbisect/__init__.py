"""Max-bisection toolkit for graphs without a fixed even cycle length."""

from .combine import ContractBreachError, CombineResult, balanced_local_bisection, combine
from .generators import (
    GeneratorSpec,
    classic,
    complete_bipartite,
    incidence_graph_plane,
    polarity_graph,
    random_c2k_free,
)
from .graph_core import (
    DegeneracyOrder,
    DegreeStats,
    Graph,
    codegree,
    contains_cycle_of_length,
    degeneracy_order,
    degree_stats,
    find_cycle_of_length,
    from_edge_list,
    induced_subgraph,
    load_graph,
    neighborhood_edge_count,
    parse_graph_text,
    save_graph,
    sparse_neighborhood_constant,
)
from .oracle import ExactResult, SizeGuardError, exact_max_bisection, exact_max_cut, same_side_probability_mc
from .pipeline import (
    DegreeGateError,
    PipelineConfig,
    RemovalTrace,
    SplitDiagnostics,
    bisect_c2k_free,
    bisect_c4_free,
    bisect_low_max_degree,
    dense_core_split,
    high_degree_split,
    removal_sequence,
    turan_bounds,
)
from .rounding import (
    Bisection,
    BoundReport,
    Embedding,
    best_of_rounds,
    choose_gamma,
    hyperplane_round,
    inner_product,
    sdp_bound,
    shearer_floor,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
