"""swapreach — solvers for object reachability under rational swaps on networks."""

from .core import (
    Assignment,
    CapabilityError,
    FormatError,
    Instance,
    PathInstance,
    Relabeling,
    SwapSequence,
    VerifyResult,
    admits_swap,
    apply_swap,
    canonicalize,
    canonicalize_path,
    parse_certificate,
    parse_instance,
    serialize_certificate,
    serialize_instance,
    verify_certificate,
)
from .oracle import OracleResult, oracle_decide, reachable_set
from .len3 import Len3Result, solve_len3
from .pathsolver import (
    Block,
    BlockSelection,
    ConflictSet,
    InternalInvariantError,
    ObjectTyping,
    PathResult,
    block_selections,
    compute_blocks,
    compute_subtypes,
    compute_types,
    prune_candidates,
    resolve_type0,
    selection_consistent,
    selections_compatible,
    solve_path,
    solve_path_instance,
    swap_edge,
)
from .twosat import TwoSatFormula, solve_2sat

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "CapabilityError",
    "FormatError",
    "Instance",
    "PathInstance",
    "Relabeling",
    "SwapSequence",
    "VerifyResult",
    "admits_swap",
    "apply_swap",
    "canonicalize",
    "canonicalize_path",
    "parse_certificate",
    "parse_instance",
    "serialize_certificate",
    "serialize_instance",
    "verify_certificate",
    "OracleResult",
    "oracle_decide",
    "reachable_set",
    "Len3Result",
    "solve_len3",
    "Block",
    "BlockSelection",
    "ConflictSet",
    "InternalInvariantError",
    "ObjectTyping",
    "PathResult",
    "block_selections",
    "compute_blocks",
    "compute_subtypes",
    "compute_types",
    "prune_candidates",
    "resolve_type0",
    "selection_consistent",
    "selections_compatible",
    "solve_path",
    "solve_path_instance",
    "swap_edge",
    "TwoSatFormula",
    "solve_2sat",
]
