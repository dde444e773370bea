"""Weighted girth: exact oracle and subquadratic approximations."""
from .approx import (SmallGirthSubroutine, approx_general, approx_short_close_cycle,
                     small_girth, subquadratic_approx)
from .dense import (build_prefix_subgraph, controlled_density_approx, derandomized_4eps,
                    find_c4, integer_eps)
from .graph import (Cycle, GirthEstimate, GraphError, WeightedGraph, build_graph,
                    induced_subgraph, read_edge_list, validate_cycle, write_edge_list)
from .hbd import hbd, min_detecting_threshold_grid, min_detecting_threshold_int
from .hitting import build_hitting_structure, greedy_hitting_set, r_nearest_set
from .oracle import exact_girth
from .poly_approx import poly_girth
from .reductions import ceil_weights, girth_with_reduction, scale_weights, zero_weight_reduce

__version__ = "0.1.0"

__all__ = [
    "Cycle", "GirthEstimate", "GraphError", "SmallGirthSubroutine", "WeightedGraph",
    "approx_general", "approx_short_close_cycle", "build_graph", "build_hitting_structure",
    "build_prefix_subgraph", "ceil_weights", "controlled_density_approx", "derandomized_4eps",
    "exact_girth", "find_c4", "girth_with_reduction", "greedy_hitting_set", "hbd",
    "induced_subgraph", "integer_eps", "min_detecting_threshold_grid",
    "min_detecting_threshold_int", "poly_girth", "r_nearest_set", "read_edge_list",
    "scale_weights", "small_girth", "subquadratic_approx", "validate_cycle",
    "write_edge_list", "zero_weight_reduce",
]
