"""Exact max-plus (tropical) algebra: scalars, matrices, graphs, solvers."""

from ._backend import BACKEND
from .graph import AcyclicityReport, AssociatedGraph, analyze_acyclicity, associated_graph
from .matrix import MaxPlusMatrix, diag_otimes
from .solve import CyclicSystemError, NonPositiveEntryError, solve_implicit
from .values import EPS, ZERO, TimeValue, is_eps, oplus, otimes

__all__ = [
    "BACKEND",
    "EPS",
    "ZERO",
    "TimeValue",
    "is_eps",
    "oplus",
    "otimes",
    "MaxPlusMatrix",
    "diag_otimes",
    "AssociatedGraph",
    "AcyclicityReport",
    "associated_graph",
    "analyze_acyclicity",
    "CyclicSystemError",
    "NonPositiveEntryError",
    "solve_implicit",
]
