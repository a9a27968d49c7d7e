"""Persistence pairing of critical points on Reeb graphs.

Three engines compute the same diagram: :func:`pair_multipass` (merge
trees plus essential sweeps), :func:`pair_singlepass` (one sweep with
label propagation) and :func:`oracle_diagram` (brute force, small graphs).
"""

__version__ = "0.1.0"

from .conditioning import ConditioningError, ConditioningReport, condition
from .diagram import (
    DiagramDiff,
    PairClass,
    PersistenceDiagram,
    PersistencePair,
    check_perfect_matching,
    diagram_diff,
)
from .generators import GenSpec, cut_cycles, cut_series, generate, generate_conditioned
from .graph import (
    CriticalKind,
    DegreeSignature,
    GraphError,
    ReebGraph,
    classify_node,
    connected_components,
    cycle_rank,
    split_components,
    validate_conditioned,
)
from .io import read_diagram, read_graph, write_diagram, write_graph
from .multipass import build_merge_tree, pair_essential_upfork, pair_merge_tree, pair_multipass
from .oracle import OracleError, oracle_diagram
from .singlepass import choose_sweep_direction, pair_singlepass

__all__ = [
    "ConditioningError",
    "ConditioningReport",
    "CriticalKind",
    "DegreeSignature",
    "DiagramDiff",
    "GenSpec",
    "GraphError",
    "OracleError",
    "PairClass",
    "PersistenceDiagram",
    "PersistencePair",
    "ReebGraph",
    "build_merge_tree",
    "check_perfect_matching",
    "choose_sweep_direction",
    "classify_node",
    "condition",
    "connected_components",
    "cut_cycles",
    "cut_series",
    "cycle_rank",
    "diagram_diff",
    "generate",
    "generate_conditioned",
    "oracle_diagram",
    "pair_essential_upfork",
    "pair_merge_tree",
    "pair_multipass",
    "pair_singlepass",
    "read_diagram",
    "read_graph",
    "split_components",
    "validate_conditioned",
    "write_diagram",
    "write_graph",
]
