"""Discrete-event simulation of the same networks, built independently.

This module never touches the algebra layer: it walks physical events —
joins, service starts, completions, departures — with a priority queue and
per-node counters, and exists solely to cross-check the max-plus engines.
Keep it deliberately simple; when the two sides disagree, this is the one
that gets believed first.

Semantics being simulated:

* every node is a FCFS single server; node i's k-th service takes the same
  time the engines are fed for (i, k);
* a node with finite initial contents joins one customer from each
  predecessor before admitting it (fork-join); sources and nodes with
  infinite initial contents never starve and ignore joins;
* a finite capacity s at node j constrains the i -> j sender: i may be at
  most s departures ahead of j.  Manufacturing blocking enforces that when
  the customer tries to leave i (holding the server meanwhile);
  communication blocking enforces it before i even starts serving;
* all enabling conditions are re-checked to a fixed point at each event
  time, so zero-delay chains resolve within a single timestamp.

Every node stops after ``steps`` departures; the simulation either
delivers full logs or raises DeadlockError naming the nodes that still owe
departures when no event can ever fire again.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Optional

from .engine import StateTraces, Trajectory
from .maxplus.values import EPS, TimeValue
from .network import INFINITE, Blocking, NetworkSpec, ServiceTimeSource, validate


@dataclass(frozen=True)
class EventLog:
    """Per-node event epochs; index [i - 1][k - 1] is node i's k-th event.

    ``arrivals`` rows may be longer than ``steps`` (joins are not capped)
    and hold eps placeholders for events that precede time zero; nodes
    that never starve log no arrivals at all.
    """

    node_count: int
    steps: int
    arrivals: tuple[tuple[TimeValue, ...], ...]
    starts: tuple[tuple[TimeValue, ...], ...]
    completions: tuple[tuple[TimeValue, ...], ...]
    departures: tuple[tuple[TimeValue, ...], ...]


@dataclass(frozen=True)
class Mismatch:
    node: int
    event: int
    engine_value: TimeValue
    oracle_value: TimeValue


@dataclass(frozen=True)
class MatchReport:
    matched: bool
    mismatch: Optional[Mismatch] = None
    detail: str = ""


class DeadlockError(RuntimeError):
    """No event can ever fire again, yet departures are still owed."""

    def __init__(self, blocked: tuple[int, ...], log: EventLog):
        names = ", ".join(str(i) for i in blocked)
        super().__init__(f"simulation deadlocked; starved nodes: {names}")
        self.blocked = blocked
        self.log = log


class _Node:
    __slots__ = (
        "preds",
        "unlimited",
        "ready",
        "staging",
        "started",
        "departed",
        "busy",
        "holding",
        "watch",
        "arrivals",
        "starts",
        "completions",
        "departures",
    )

    def __init__(self, spec: NetworkSpec, i: int):
        self.preds = sorted(spec.predecessors(i))
        r = spec.initial_content(i)
        self.unlimited = not self.preds or r == INFINITE
        self.ready = 0 if self.unlimited else int(r)
        self.staging = {j: 0 for j in self.preds}
        self.started = 0
        self.departed = 0
        self.busy = False
        self.holding = False
        # Successors whose finite capacity can hold this node back.
        self.watch = sorted(
            (j, int(spec.capacity(j)))
            for j in spec.successors(i)
            if spec.capacity(j) != INFINITE
        )
        self.arrivals: list[TimeValue] = []
        self.starts: list[TimeValue] = []
        self.completions: list[TimeValue] = []
        self.departures: list[TimeValue] = []
        if not self.unlimited:
            # Initial contents arrived before the clock started: events
            # 1..r-1 have no meaningful epoch, event r happened at time 0.
            self.arrivals.extend([EPS] * (int(r) - 1))
            if r > 0:
                self.arrivals.append(0)


def simulate(
    spec: NetworkSpec,
    service: ServiceTimeSource,
    steps: int,
    node_order: str = "ascending",
) -> EventLog:
    """Run the network for ``steps`` departures per node.

    ``node_order`` picks the sweep direction inside a timestamp; the
    outcome must not depend on it (a test keeps that honest).
    """
    validate(spec)
    if steps < 0:
        raise ValueError(f"steps must be non-negative, got {steps}")
    if node_order not in ("ascending", "descending"):
        raise ValueError(f"unknown node_order {node_order!r}")

    n = spec.node_count
    blocking = spec.blocking
    nodes = {i: _Node(spec, i) for i in range(1, n + 1)}
    successors = {i: sorted(spec.successors(i)) for i in range(1, n + 1)}
    order = list(range(1, n + 1))
    if node_order == "descending":
        order.reverse()
    completion_heap: list[tuple[TimeValue, int]] = []

    def window_open(i: int) -> bool:
        # Node i may move its next customer onward only while it stays at
        # most s_j departures ahead of each finite-capacity successor j.
        nd = nodes[i]
        for j, s in nd.watch:
            if nd.departed - nodes[j].departed > s:
                return False
        return True

    def settle(now: TimeValue) -> None:
        changed = True
        while changed:
            changed = False
            for i in order:
                nd = nodes[i]
                if nd.holding and (
                    blocking is not Blocking.MANUFACTURING or window_open(i)
                ):
                    nd.holding = False
                    nd.departed += 1
                    nd.departures.append(now)
                    for j in successors[i]:
                        down = nodes[j]
                        if not down.unlimited:
                            down.staging[i] += 1
                    changed = True
                if not nd.unlimited and nd.preds:
                    while all(nd.staging[j] > 0 for j in nd.preds):
                        for j in nd.preds:
                            nd.staging[j] -= 1
                        nd.ready += 1
                        nd.arrivals.append(now)
                        changed = True
                if (
                    not nd.busy
                    and not nd.holding
                    and nd.started < steps
                    and (nd.unlimited or nd.ready > 0)
                    and (
                        blocking is not Blocking.COMMUNICATION or window_open(i)
                    )
                ):
                    nd.started += 1
                    if not nd.unlimited:
                        nd.ready -= 1
                    tau = service.service_time(i, nd.started)
                    nd.starts.append(now)
                    heapq.heappush(completion_heap, (now + tau, i))
                    nd.busy = True
                    changed = True

    settle(0)
    while not all(nd.departed >= steps for nd in nodes.values()):
        if not completion_heap:
            blocked = tuple(i for i in range(1, n + 1) if nodes[i].departed < steps)
            raise DeadlockError(blocked, _collect(nodes, n, steps))
        now = completion_heap[0][0]
        while completion_heap and completion_heap[0][0] == now:
            _, i = heapq.heappop(completion_heap)
            nd = nodes[i]
            nd.busy = False
            nd.holding = True
            nd.completions.append(now)
        settle(now)
    return _collect(nodes, n, steps)


def _collect(nodes: dict[int, _Node], n: int, steps: int) -> EventLog:
    return EventLog(
        node_count=n,
        steps=steps,
        arrivals=tuple(tuple(nodes[i].arrivals) for i in range(1, n + 1)),
        starts=tuple(tuple(nodes[i].starts) for i in range(1, n + 1)),
        completions=tuple(tuple(nodes[i].completions) for i in range(1, n + 1)),
        departures=tuple(tuple(nodes[i].departures) for i in range(1, n + 1)),
    )


def as_trajectory(log: EventLog, with_traces: bool = False) -> Trajectory:
    """Reshape a complete event log into the engines' trajectory form."""
    n = log.node_count
    rows: list[tuple[TimeValue, ...]] = [tuple([0] * n)]
    for k in range(1, log.steps + 1):
        rows.append(tuple(log.departures[i - 1][k - 1] for i in range(1, n + 1)))
    traces = None
    if with_traces:
        def row(series: tuple[tuple[TimeValue, ...], ...], k: int) -> tuple:
            out = []
            for i in range(1, n + 1):
                events = series[i - 1]
                out.append(events[k - 1] if k <= len(events) else EPS)
            return tuple(out)

        ks = range(1, log.steps + 1)
        traces = StateTraces(
            arrivals=tuple(row(log.arrivals, k) for k in ks),
            starts=tuple(row(log.starts, k) for k in ks),
            completions=tuple(row(log.completions, k) for k in ks),
        )
    return Trajectory(
        node_count=n,
        steps=log.steps,
        method="oracle",
        departures=tuple(rows),
        traces=traces,
    )


def compare(trajectory: Trajectory, log: EventLog) -> MatchReport:
    """Entrywise comparison of engine departures against simulated ones.

    Reports the first divergence in (event, node) order; shape
    disagreements are reported without a per-entry mismatch.
    """
    if trajectory.node_count != log.node_count:
        return MatchReport(
            matched=False,
            detail=(
                f"node counts differ: engine {trajectory.node_count}, "
                f"oracle {log.node_count}"
            ),
        )
    if trajectory.steps != log.steps:
        return MatchReport(
            matched=False,
            detail=f"step counts differ: engine {trajectory.steps}, oracle {log.steps}",
        )
    for k in range(1, log.steps + 1):
        for i in range(1, log.node_count + 1):
            engine_value = trajectory.departure(i, k)
            oracle_value = log.departures[i - 1][k - 1]
            if not _same(engine_value, oracle_value):
                return MatchReport(
                    matched=False,
                    mismatch=Mismatch(
                        node=i,
                        event=k,
                        engine_value=engine_value,
                        oracle_value=oracle_value,
                    ),
                    detail=(
                        f"node {i}, event {k}: engine {engine_value!r}, "
                        f"oracle {oracle_value!r}"
                    ),
                )
    return MatchReport(matched=True)


def _same(x: TimeValue, y: TimeValue) -> bool:
    if x is EPS or y is EPS:
        return x is y
    return x == y
