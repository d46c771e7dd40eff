"""From network topology to max-plus evolution matrices.

The timing coupling of a network is captured by two families of 0/eps
matrices indexed by a delay m:

* ``G[m]`` has a zero at (i, j) when the arc (i, j) exists and node j's
  initial contents equal m — node j's k-th service can only see material
  that left node i at event k - m.
* ``H[m]`` (m >= 1) has a zero at (i, j) when the arc (i, j) exists and
  node j's buffer capacity s satisfies s + 1 = m — node i gets blocked by
  j's buffer until j's departure k - m frees a space.

Infinite contents or capacities contribute no entries.  M is the largest
delay with any entry; both families are padded with all-eps matrices so
each covers 0..M (G) and 1..M (H) uniformly.

From these, per-event transition matrices T_1..T_M are assembled so that
departures obey d(k) = T_1(k) d(k-1) oplus ... oplus T_M(k) d(k-M), with
the discipline (no blocking, manufacturing, communication) deciding where
the H family enters.  The construction requires the zero-delay subgraph to
be circuit-free; ``check_solvability`` reports that, plus the longest-path
exponent the closed form needs, plus remediation hints when it fails.
"""

from __future__ import annotations

from dataclasses import dataclass

from .maxplus import MaxPlusMatrix, diag_otimes
from .maxplus.graph import AssociatedGraph, analyze_acyclicity
from .maxplus.values import EPS, TimeValue
from .network import INFINITE, Blocking, NetworkSpec


@dataclass(frozen=True)
class DelayedAdjacency:
    """Delay-indexed topology matrices of one network.

    ``g`` holds G_0..G_M, ``h`` holds H_1..H_M (so ``h[m - 1]`` is H_m);
    ``g_t`` caches the transposes of ``g``, which is the orientation the
    evolution equations consume.
    """

    node_count: int
    max_delay: int
    g: tuple[MaxPlusMatrix, ...]
    h: tuple[MaxPlusMatrix, ...]
    g_t: tuple[MaxPlusMatrix, ...]


@dataclass(frozen=True)
class SolvabilityReport:
    """Whether explicit evolution exists, and why not when it does not.

    ``longest_path_length`` is the exponent p of the closed-form solution
    (set when solvable).  ``blocking_circuit`` is a closed walk through
    zero-delay nodes (set when unsolvable), and ``remediation`` suggests
    the minimal initial-contents increase per circuit node that would cut
    the circuit.
    """

    solvable: bool
    longest_path_length: int | None = None
    blocking_circuit: tuple[int, ...] | None = None
    remediation: tuple[tuple[int, int], ...] = ()


@dataclass(frozen=True)
class TransitionSet:
    """Matrices T_1..T_M for one event index; ``matrices[m - 1]`` is T_m."""

    matrices: tuple[MaxPlusMatrix, ...]

    @property
    def max_delay(self) -> int:
        return len(self.matrices)


def build_delayed_adjacency(spec: NetworkSpec) -> DelayedAdjacency:
    """Derive the G and H families from a validated network description."""
    n = spec.node_count
    finite_r = [int(r) for r in spec.initial_contents if r != INFINITE]
    finite_s = [int(s) for s in spec.capacities if s != INFINITE]
    max_delay = max(max(finite_r, default=0), max((s + 1 for s in finite_s), default=0))

    g_data = [[EPS] * (n * n) for _ in range(max_delay + 1)]
    h_data = [[EPS] * (n * n) for _ in range(max_delay)]
    for i, j in spec.arcs:
        flat = (i - 1) * n + (j - 1)
        r = spec.initial_contents[j - 1]
        if r != INFINITE:
            g_data[int(r)][flat] = 0
        s = spec.capacities[j - 1]
        if s != INFINITE:
            h_data[int(s)][flat] = 0  # H_{s+1} lives at list index s
    g = tuple(MaxPlusMatrix(n, n, d) for d in g_data)
    h = tuple(MaxPlusMatrix(n, n, d) for d in h_data)
    return DelayedAdjacency(
        node_count=n,
        max_delay=max_delay,
        g=g,
        h=h,
        g_t=tuple(m.transpose() for m in g),
    )


def zero_delay_graph(da: DelayedAdjacency) -> AssociatedGraph:
    """The subgraph of arcs whose target node has zero initial contents."""
    arcs = set()
    n = da.node_count
    g0 = da.g[0]
    for i in range(n):
        for j in range(n):
            if g0.entry(i, j) is not EPS:
                arcs.add((i + 1, j + 1))
    return AssociatedGraph(n, frozenset(arcs))


def check_solvability(da: DelayedAdjacency) -> SolvabilityReport:
    """Decide whether the implicit evolution step has a closed form.

    It does exactly when the zero-delay subgraph is circuit-free; the
    report then carries the longest-path length p.  Otherwise it carries a
    witness circuit and, for each node on it, the suggestion to raise its
    initial contents by 1, which removes all arcs into that node from the
    zero-delay subgraph.
    """
    report = analyze_acyclicity(zero_delay_graph(da))
    if report.acyclic:
        return SolvabilityReport(
            solvable=True, longest_path_length=report.longest_path_length
        )
    cycle = report.witness_cycle
    assert cycle is not None
    distinct = sorted(set(cycle))
    return SolvabilityReport(
        solvable=False,
        blocking_circuit=cycle,
        remediation=tuple((node, 1) for node in distinct),
    )


def build_transition_matrices(
    da: DelayedAdjacency,
    blocking: Blocking,
    taus: list[TimeValue],
    p: int | None = None,
) -> TransitionSet:
    """Assemble T_1..T_M for one event from its service times ``taus``.

    ``p`` is the longest-path length from ``check_solvability``; passing
    None recomputes it (and raises UnsolvableNetworkError via the report
    when there is none).  The delay range is promoted to at least 1 so a
    network with no timing coupling still has d(k) = T_1(k) d(k-1).
    """
    if p is None:
        report = check_solvability(da)
        if not report.solvable:
            from .engine import UnsolvableNetworkError

            raise UnsolvableNetworkError(report)
        p = report.longest_path_length
        assert p is not None

    n = da.node_count
    identity = MaxPlusMatrix.identity(n)
    null = MaxPlusMatrix.null(n)
    u = diag_otimes(taus, da.g_t[0])
    q = identity.oplus(u).power(p)

    def g_t(m: int) -> MaxPlusMatrix:
        return da.g_t[m] if m <= da.max_delay else null

    def h(m: int) -> MaxPlusMatrix:
        return da.h[m - 1] if m <= da.max_delay else null

    matrices = []
    for m in range(1, max(da.max_delay, 1) + 1):
        if blocking is Blocking.NONE:
            inner = g_t(m) if m > 1 else identity.oplus(g_t(1))
            t_m = q.otimes(diag_otimes(taus, inner))
        elif blocking is Blocking.MANUFACTURING:
            scaled = diag_otimes(taus, identity.oplus(g_t(m)) if m == 1 else g_t(m))
            t_m = q.otimes(scaled.oplus(h(m)))
        else:
            inner = g_t(m).oplus(h(m))
            if m == 1:
                inner = identity.oplus(inner)
            t_m = q.otimes(diag_otimes(taus, inner))
        matrices.append(t_m)
    return TransitionSet(matrices=tuple(matrices))


def build_extended_transition(ts: TransitionSet) -> MaxPlusMatrix:
    """Companion block matrix driving the stacked history vector.

    For state [d(k); ...; d(k-M+1)] the first block row is T_1..T_M and
    each following block row is a single identity just below the diagonal,
    shifting history down one slot per event.
    """
    m_count = ts.max_delay
    n = ts.matrices[0].rows
    size = n * m_count
    data: list[TimeValue] = [EPS] * (size * size)
    for m, t_m in enumerate(ts.matrices, start=1):
        col0 = (m - 1) * n
        for i in range(n):
            row = i * size
            for j in range(n):
                data[row + col0 + j] = t_m.entry(i, j)
    for block in range(1, m_count):
        top = block * n
        left = (block - 1) * n
        for i in range(n):
            data[(top + i) * size + (left + i)] = 0
    return MaxPlusMatrix(size, size, data)
