"""Low-ply generating sets for the cycle space of a graph."""

__version__ = "0.1.0"

from .builders import (
    BuildTrace,
    apex_forest_basis,
    build_adhesion,
    build_pw4t,
    fh_generating_set,
    fundamental_generating_set,
    incremental_step,
    make_provider,
    maxply_generating_set,
    merge_bases,
    two_trees_basis,
)
from .cycle_space import (
    GeneratingSet,
    InvalidInput,
    PreconditionError,
    extract_basis,
    fundamental_basis,
    gf2_rank,
    is_generating_set,
    ply_profile,
)
from .forest import Forest, skeleton, spanning_forest, steiner_subforest
from .graph import EdgeSubgraph, Graph, GraphError, cycle_rank, symmetric_difference, veblen_decompose
from .path_decomp import PathDecomposition, exact_pathwidth, normalize, validate
from .verification import (
    AuditReport,
    brute_force_min_ply,
    old_skeleton_edge_audit,
    forest_path_ply_audit,
    verify_generating,
    verify_ply_bound,
)

__all__ = [
    "AuditReport",
    "BuildTrace",
    "EdgeSubgraph",
    "Forest",
    "GeneratingSet",
    "Graph",
    "GraphError",
    "InvalidInput",
    "PathDecomposition",
    "PreconditionError",
    "apex_forest_basis",
    "brute_force_min_ply",
    "build_adhesion",
    "build_pw4t",
    "old_skeleton_edge_audit",
    "forest_path_ply_audit",
    "cycle_rank",
    "exact_pathwidth",
    "extract_basis",
    "fh_generating_set",
    "fundamental_basis",
    "fundamental_generating_set",
    "gf2_rank",
    "incremental_step",
    "is_generating_set",
    "make_provider",
    "maxply_generating_set",
    "merge_bases",
    "normalize",
    "ply_profile",
    "skeleton",
    "spanning_forest",
    "steiner_subforest",
    "symmetric_difference",
    "two_trees_basis",
    "validate",
    "verify_generating",
    "verify_ply_bound",
]
