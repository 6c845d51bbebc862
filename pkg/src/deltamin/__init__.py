"""Minimum-delta edge colouring of graphs with maximum degree three.

A proper 4-edge-colouring of such a graph uses colours alpha, beta, gamma
plus an overflow colour delta; this package computes colourings minimising
the delta class, verifies the structural properties those minima satisfy,
and ships the generators and batch tooling needed to exercise both.
"""

from .colouring import (
    Colour,
    ColouringKind,
    EdgeColouring,
    KempeComponent,
    KempeDecomposition,
    kempe_decompose,
    kempe_swap,
    properize,
)
from .errors import (
    ClassificationError,
    ContractViolationError,
    DeltaMinError,
    DomainError,
    GraphFormatError,
    ResourceLimitError,
)
from .graphs import (
    Graph,
    emit_edge_list,
    emit_graph6,
    enumerate_cubic,
    induced_subgraph,
    isomorphic,
    make_named,
    parse_edge_list,
    parse_graph6,
    random_subcubic,
)
from .solver import (
    Method,
    SolveResult,
    TwoFactor,
    enumerate_two_factors,
    find_two_factor,
    heuristic_descent,
    is_3_edge_colourable,
    lemma1_colouring,
    resistance_exact,
    solve_exact,
)
from .structure import (
    ClauseResult,
    DeltaClass,
    DeltaClassification,
    ParitySignature,
    VerificationReport,
    classify_delta_edges,
    parity_signature,
    shift_delta,
    verify_theorem1,
)

__version__ = "0.1.0"

__all__ = [
    "Colour",
    "ColouringKind",
    "EdgeColouring",
    "KempeComponent",
    "KempeDecomposition",
    "kempe_decompose",
    "kempe_swap",
    "properize",
    "ClassificationError",
    "ContractViolationError",
    "DeltaMinError",
    "DomainError",
    "GraphFormatError",
    "ResourceLimitError",
    "Graph",
    "emit_edge_list",
    "emit_graph6",
    "enumerate_cubic",
    "induced_subgraph",
    "isomorphic",
    "make_named",
    "parse_edge_list",
    "parse_graph6",
    "random_subcubic",
    "Method",
    "SolveResult",
    "TwoFactor",
    "enumerate_two_factors",
    "find_two_factor",
    "heuristic_descent",
    "is_3_edge_colourable",
    "lemma1_colouring",
    "resistance_exact",
    "solve_exact",
    "ClauseResult",
    "DeltaClass",
    "DeltaClassification",
    "ParitySignature",
    "VerificationReport",
    "classify_delta_edges",
    "parity_signature",
    "shift_delta",
    "verify_theorem1",
    "__version__",
]
