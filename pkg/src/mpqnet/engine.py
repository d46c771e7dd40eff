"""Evolution of departure epochs, three interchangeable ways.

All three methods advance the vector of departure times d(k) (entry i is
when node i finishes its k-th customer) from the convention d(0) = 0 and
d(k) = eps for k < 0:

* ``implicit`` solves the per-event equation x = U x oplus v by bounded
  substitution, never forming transition matrices;
* ``explicit`` builds T_1(k)..T_M(k) each event and takes
  d(k) = T_1(k) d(k-1) oplus ... oplus T_M(k) d(k-M);
* ``extended`` folds the delays into one first-order recursion on the
  stacked history [d(k); ...; d(k-M+1)].

They agree entrywise on every solvable network — tests enforce that — so
the choice is about what you want to inspect, not about the answer.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .builder import (
    DelayedAdjacency,
    SolvabilityReport,
    TransitionSet,
    build_delayed_adjacency,
    build_extended_transition,
    build_transition_matrices,
    check_solvability,
)
from .maxplus import _backend
from .maxplus.matrix import MaxPlusMatrix
from .maxplus.solve import CyclicSystemError
from .maxplus.values import EPS, TimeValue
from .network import Blocking, NetworkSpec, ServiceTimeSource, validate

METHODS = ("implicit", "explicit", "extended")


class UnsolvableNetworkError(CyclicSystemError):
    """The zero-delay subgraph has a circuit; no evolution step exists."""

    def __init__(self, report: SolvabilityReport):
        cycle = report.blocking_circuit or ()
        pretty = " -> ".join(str(node) for node in cycle)
        hints = ", ".join(f"node {node}: +{inc}" for node, inc in report.remediation)
        message = f"no explicit evolution: zero-delay circuit {pretty}"
        if hints:
            message += f"; raise initial contents ({hints})"
        super().__init__(message, cycle=cycle or None)
        self.report = report


@dataclass(frozen=True)
class StateTraces:
    """Arrival, service-start and completion epochs for events 1..K.

    Each field is indexed [k - 1][i - 1]; arrivals of nodes that are never
    starved (sources, infinite initial contents) stay eps throughout.
    """

    arrivals: tuple[tuple[TimeValue, ...], ...]
    starts: tuple[tuple[TimeValue, ...], ...]
    completions: tuple[tuple[TimeValue, ...], ...]


@dataclass(frozen=True)
class Trajectory:
    """Departure epochs d(0)..d(K); ``departures[k][i - 1]`` is node i at k."""

    node_count: int
    steps: int
    method: str
    departures: tuple[tuple[TimeValue, ...], ...]
    traces: Optional[StateTraces] = None

    def departure(self, i: int, k: int) -> TimeValue:
        if not (1 <= i <= self.node_count):
            raise IndexError(f"node {i} outside 1..{self.node_count}")
        if not (0 <= k <= self.steps):
            raise IndexError(f"event {k} outside 0..{self.steps}")
        return self.departures[k][i - 1]


def step_implicit(
    da: DelayedAdjacency,
    blocking: Blocking,
    taus: Sequence[TimeValue],
    p: int,
    history: Sequence[Sequence[TimeValue]],
) -> list[TimeValue]:
    """One event of the implicit method.

    ``history[m - 1]`` must hold d(k - m); ``p`` is the longest-path
    length of the zero-delay subgraph, which bounds the substitution depth
    needed for the self-referential part x = U x oplus v to settle.
    """
    kernel = _backend.kernel
    n = da.node_count
    taus = list(taus)
    v = kernel.diag_mul(taus, list(history[0]), n, 1)

    acc: list[TimeValue] | None = None
    for m in range(1, da.max_delay + 1):
        dm = list(history[m - 1])
        if all(x is EPS for x in dm):
            continue
        if blocking is Blocking.NONE:
            term = da.g_t[m].apply(dm)
        elif blocking is Blocking.MANUFACTURING:
            # Buffer release is not stretched by the service time, so the
            # H contribution joins after scaling instead of before.
            term = da.h[m - 1].apply(dm)
            v = kernel.mat_add(
                v, kernel.diag_mul(taus, da.g_t[m].apply(dm), n, 1), n
            )
            v = kernel.mat_add(v, term, n)
            continue
        else:
            term = kernel.mat_add(da.g_t[m].apply(dm), da.h[m - 1].apply(dm), n)
        acc = term if acc is None else kernel.mat_add(acc, term, n)
    if acc is not None:
        v = kernel.mat_add(v, kernel.diag_mul(taus, acc, n, 1), n)

    g0t = da.g_t[0]
    x = v
    for _ in range(p):
        x = kernel.mat_add(kernel.diag_mul(taus, g0t.apply(x), n, 1), v, n)
    return x


def step_explicit(
    ts: TransitionSet, history: Sequence[Sequence[TimeValue]]
) -> list[TimeValue]:
    """One event of the explicit method: oplus of T_m(k) d(k - m)."""
    kernel = _backend.kernel
    out: list[TimeValue] | None = None
    for m, t_m in enumerate(ts.matrices, start=1):
        dm = list(history[m - 1])
        if all(x is EPS for x in dm):
            continue
        term = t_m.apply(dm)
        out = term if out is None else kernel.mat_add(out, term, len(term))
    if out is None:
        return [EPS] * ts.matrices[0].rows
    return out


def step_extended(
    t_hat: MaxPlusMatrix, stacked: Sequence[TimeValue]
) -> list[TimeValue]:
    """One event of the first-order method on the stacked history vector."""
    return t_hat.apply(list(stacked))


def run(
    spec: NetworkSpec,
    service: ServiceTimeSource,
    steps: int,
    method: str = "implicit",
    with_traces: bool = False,
) -> Trajectory:
    """Evolve a network for ``steps`` events with the chosen method.

    Validates the network, checks solvability (raising
    UnsolvableNetworkError with the witness circuit when the zero-delay
    subgraph is cyclic) and returns the trajectory d(0)..d(steps).
    """
    validate(spec)
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    if steps < 0:
        raise ValueError(f"steps must be non-negative, got {steps}")

    da = build_delayed_adjacency(spec)
    report = check_solvability(da)
    if not report.solvable:
        raise UnsolvableNetworkError(report)
    p = report.longest_path_length
    assert p is not None

    n = spec.node_count
    m_eff = max(da.max_delay, 1)
    zeros: list[TimeValue] = [0] * n
    eps_vec: list[TimeValue] = [EPS] * n
    departures: list[list[TimeValue]] = [zeros]

    if method == "extended":
        stacked = zeros + eps_vec * (m_eff - 1)
        for k in range(1, steps + 1):
            taus = [service.service_time(i, k) for i in range(1, n + 1)]
            ts = build_transition_matrices(da, spec.blocking, taus, p)
            stacked = step_extended(build_extended_transition(ts), stacked)
            departures.append(stacked[:n])
    else:
        history: deque[list[TimeValue]] = deque(
            [zeros] + [eps_vec] * (m_eff - 1), maxlen=m_eff
        )
        for k in range(1, steps + 1):
            taus = [service.service_time(i, k) for i in range(1, n + 1)]
            if method == "implicit":
                d_k = step_implicit(da, spec.blocking, taus, p, history)
            else:
                ts = build_transition_matrices(da, spec.blocking, taus, p)
                d_k = step_explicit(ts, history)
            departures.append(d_k)
            history.appendleft(d_k)

    traces = None
    if with_traces:
        traces = reconstruct_traces(spec, service, departures, da)
    return Trajectory(
        node_count=n,
        steps=steps,
        method=method,
        departures=tuple(tuple(d) for d in departures),
        traces=traces,
    )


def reconstruct_traces(
    spec: NetworkSpec,
    service: ServiceTimeSource,
    departures: Sequence[Sequence[TimeValue]],
    da: DelayedAdjacency | None = None,
) -> StateTraces:
    """Recover arrival/start/completion epochs from a departure trajectory."""
    if da is None:
        da = build_delayed_adjacency(spec)
    kernel = _backend.kernel
    n = spec.node_count
    eps_vec: list[TimeValue] = [EPS] * n

    def d(k: int) -> list[TimeValue]:
        return list(departures[k]) if k >= 0 else eps_vec

    arrivals = []
    starts = []
    completions = []
    for k in range(1, len(departures)):
        a = eps_vec[:]
        for m in range(0, da.max_delay + 1):
            a = kernel.mat_add(a, da.g_t[m].apply(d(k - m)), n)
        b = kernel.mat_add(a, d(k - 1), n)
        if spec.blocking is Blocking.COMMUNICATION:
            for m in range(1, da.max_delay + 1):
                b = kernel.mat_add(b, da.h[m - 1].apply(d(k - m)), n)
        taus = [service.service_time(i, k) for i in range(1, n + 1)]
        c = kernel.diag_mul(taus, b, n, 1)
        arrivals.append(tuple(a))
        starts.append(tuple(b))
        completions.append(tuple(c))
    return StateTraces(
        arrivals=tuple(arrivals),
        starts=tuple(starts),
        completions=tuple(completions),
    )
