"""Divisor theory on vertex-weighted multigraphs and weighted tropical curves."""

from .divisor import (
    Divisor,
    JacobianStructure,
    divisor_of_function,
    format_divisor,
    has_effective_representative,
    is_equivalent,
    jacobian,
    principal_generator,
    principal_of_set,
    pullback,
    q_reduce,
    spanning_tree_count,
)
from .graph import (
    DisconnectedGraphError,
    InputError,
    Multigraph,
    VertexMap,
    WeightedGraph,
    decompose_at_cut_vertex,
    genus,
    hat,
    intersection_product,
    subdivide,
    virtual_graph,
    wedge,
    weighted_genus,
)
from .rank import (
    RankResult,
    RiemannRochReport,
    canonical,
    rank_plain,
    rank_sharp,
    rank_weighted,
    riemann_roch_check,
    rose_rank,
)
from .tropical import (
    PseudoMetricGraph,
    TropicalCurve,
    TropicalDivisor,
    epsilon_model,
    from_pseudo_metric,
    to_pseudo_metric,
    tropical_canonical,
    tropical_rank,
    tropical_rr_check,
)

__version__ = "0.1.0"
