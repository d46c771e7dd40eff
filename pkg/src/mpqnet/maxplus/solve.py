"""Closed-form solution of implicit max-plus equations.

``solve_implicit`` solves x = (U otimes x) oplus v for the unknown column
x.  When every entry of U is positive or eps and the precedence graph of U
is acyclic with longest path length p, the unique solution is

    x = (I oplus U)^p otimes v,

which is also the fixed point that plain substitution reaches after p
iterations.  A circuit in U makes the equation ill-posed and is rejected
with a witness.
"""

from __future__ import annotations

from .graph import analyze_acyclicity, associated_graph
from .matrix import MaxPlusMatrix
from .values import EPS


class CyclicSystemError(ValueError):
    """The precedence graph of U has a circuit; no unique solution exists."""

    def __init__(self, message: str, cycle: tuple[int, ...] | None = None):
        super().__init__(message)
        self.cycle = cycle


class NonPositiveEntryError(ValueError):
    """U carries an entry that is neither positive nor eps."""


def solve_implicit(u: MaxPlusMatrix, v: MaxPlusMatrix) -> MaxPlusMatrix:
    """Solve x = (U otimes x) oplus v; returns the unique solution column.

    Raises NonPositiveEntryError unless every entry of U is positive or
    eps, and CyclicSystemError (with a witness circuit) if the precedence
    graph of U is not acyclic.  v may hold any values, eps included.
    """
    if u.rows != u.cols:
        raise ValueError("coefficient matrix must be square")
    if v.shape != (u.rows, 1):
        raise ValueError(
            f"right-hand side must be a {u.rows}x1 column, got {v.shape[0]}x{v.shape[1]}"
        )
    for i in range(u.rows):
        for j in range(u.cols):
            entry = u.entry(i, j)
            if entry is not EPS and not entry > 0:
                raise NonPositiveEntryError(
                    f"entry ({i}, {j}) = {entry!r} is neither positive nor eps"
                )
    report = analyze_acyclicity(associated_graph(u))
    if not report.acyclic:
        cycle = report.witness_cycle
        assert cycle is not None
        pretty = " -> ".join(str(node) for node in cycle)
        raise CyclicSystemError(
            f"precedence graph has the circuit {pretty}; "
            "the implicit equation has no unique solution",
            cycle=cycle,
        )
    p = report.longest_path_length
    assert p is not None
    return _solve_by_depth(u, v, p)


def _solve_by_depth(u: MaxPlusMatrix, v: MaxPlusMatrix, p: int) -> MaxPlusMatrix:
    """Substitution form of the closed formula: p rounds of x = Ux oplus v.

    Equivalent to (I oplus U)^p otimes v but O(p n^2) instead of O(p n^3);
    the caller vouches that p bounds the longest path of U's graph.
    """
    x = v
    for _ in range(p):
        x = u.otimes(x).oplus(v)
    return x
