"""Combinatorial and exact-numeric rigidity of periodic body-and-bar frameworks."""
from .gain_graph import (EdgeOrbit, GraphError, QuotientGraph, counting_target, cycle_gain_ranks,
                         multiplicity_profile, new_quotient_graph, random_gains)
from .pebble import SparsityParams, brute_force_sparse, is_sparse, is_tight, max_sparse_subgraph
from .matroid import Decomposition, Violation, decompose_theorem2, mixed_union_rank, n1_union_check
from .rigmat import (Realization, archetype_realization, break_loop, build_matrix, contract_to_loops,
                     exact_rank, generic_rank)
from .characterize import (AnalysisReport, check, rank_and_dof, refined_check, theorem1_check,
                           theorem2_check, theorem3_check)

__version__ = "0.1.0"
