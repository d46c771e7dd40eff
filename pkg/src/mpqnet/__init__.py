"""Fork-join queueing networks with blocking, modelled in max-plus algebra.

The package evolves the vector of departure epochs of a single-class
network of FCFS single-server nodes — arbitrary topology, fork on output,
join on input, finite or infinite buffers under manufacturing or
communication blocking — exactly, in integer max-plus arithmetic, three
interchangeable ways (implicit equation solving, explicit per-event
transition matrices, and a first-order recursion on stacked history).  An
independent discrete-event simulation of the same semantics serves as a
cross-check at every step.

Layering: ``maxplus`` (algebra) < ``network`` (descriptions) < ``builder``
(evolution matrices) < ``engine`` / ``oracle`` (dynamics) < ``exporters`` /
``cli`` (I/O).
"""

from .builder import (
    DelayedAdjacency,
    SolvabilityReport,
    TransitionSet,
    build_delayed_adjacency,
    build_extended_transition,
    build_transition_matrices,
    check_solvability,
)
from .engine import (
    METHODS,
    StateTraces,
    Trajectory,
    UnsolvableNetworkError,
    run,
    step_explicit,
    step_extended,
    step_implicit,
)
from .maxplus import (
    BACKEND,
    EPS,
    ZERO,
    CyclicSystemError,
    MaxPlusMatrix,
    NonPositiveEntryError,
    analyze_acyclicity,
    associated_graph,
    is_eps,
    oplus,
    otimes,
    solve_implicit,
)
from .network import (
    INFINITE,
    Blocking,
    NetworkDocument,
    NetworkSpec,
    SeededService,
    SpecFormatError,
    SpecValidationError,
    TableExhaustedError,
    TableService,
    load_network,
    parse_network,
    validate,
)
from .oracle import DeadlockError, EventLog, MatchReport, Mismatch, as_trajectory, compare, simulate

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "EPS",
    "ZERO",
    "INFINITE",
    "__version__",
    "oplus",
    "otimes",
    "is_eps",
    "MaxPlusMatrix",
    "associated_graph",
    "analyze_acyclicity",
    "solve_implicit",
    "CyclicSystemError",
    "NonPositiveEntryError",
    "Blocking",
    "NetworkSpec",
    "NetworkDocument",
    "TableService",
    "SeededService",
    "TableExhaustedError",
    "SpecFormatError",
    "SpecValidationError",
    "validate",
    "parse_network",
    "load_network",
    "DelayedAdjacency",
    "SolvabilityReport",
    "TransitionSet",
    "build_delayed_adjacency",
    "check_solvability",
    "build_transition_matrices",
    "build_extended_transition",
    "METHODS",
    "run",
    "step_implicit",
    "step_explicit",
    "step_extended",
    "Trajectory",
    "StateTraces",
    "UnsolvableNetworkError",
    "simulate",
    "compare",
    "as_trajectory",
    "EventLog",
    "DeadlockError",
    "Mismatch",
    "MatchReport",
]
