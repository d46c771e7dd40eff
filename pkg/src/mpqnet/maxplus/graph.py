"""Precedence graphs of max-plus matrices.

A square matrix induces a directed graph on nodes 1..n with an arc (i, j)
exactly where entry (i, j) is not eps.  Whether that graph has a circuit
decides whether implicit max-plus equations over the matrix are well posed,
so this module reports either a witness circuit or the length (arc count)
of a longest path.
"""

from __future__ import annotations

from dataclasses import dataclass

from .matrix import MaxPlusMatrix
from .values import EPS


@dataclass(frozen=True)
class AssociatedGraph:
    """Directed graph on 1-based nodes."""

    node_count: int
    arcs: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        for i, j in self.arcs:
            if not (1 <= i <= self.node_count and 1 <= j <= self.node_count):
                raise ValueError(f"arc ({i}, {j}) outside 1..{self.node_count}")


@dataclass(frozen=True)
class AcyclicityReport:
    """Outcome of circuit analysis.

    Exactly one of the optional fields is populated: ``longest_path_length``
    (number of arcs on a longest path, 0 for an arcless graph) when the
    graph is acyclic, ``witness_cycle`` (a closed walk, first node repeated
    at the end) when it is not.
    """

    acyclic: bool
    longest_path_length: int | None = None
    witness_cycle: tuple[int, ...] | None = None


def associated_graph(m: MaxPlusMatrix) -> AssociatedGraph:
    """Arc (i, j) for every non-eps entry (i, j) of a square matrix."""
    if m.rows != m.cols:
        raise ValueError("associated graph requires a square matrix")
    arcs = set()
    for i in range(m.rows):
        for j in range(m.cols):
            if m.entry(i, j) is not EPS:
                arcs.add((i + 1, j + 1))
    return AssociatedGraph(m.rows, frozenset(arcs))


def analyze_acyclicity(g: AssociatedGraph) -> AcyclicityReport:
    """Detect a circuit, or measure the longest path if there is none.

    Deterministic: neighbours are visited in ascending node order from
    ascending start nodes, so the same graph always yields the same witness.
    """
    n = g.node_count
    adj: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    for i, j in sorted(g.arcs):
        adj[i].append(j)

    # Iterative three-colour DFS; a grey target marks a back arc.
    WHITE, GREY, BLACK = 0, 1, 2
    colour = {v: WHITE for v in range(1, n + 1)}
    for start in range(1, n + 1):
        if colour[start] != WHITE:
            continue
        colour[start] = GREY
        path = [start]
        stack = [(start, iter(adj[start]))]
        while stack:
            node, neighbours = stack[-1]
            advanced = False
            for nxt in neighbours:
                if colour[nxt] == GREY:
                    cycle = path[path.index(nxt) :] + [nxt]
                    return AcyclicityReport(acyclic=False, witness_cycle=tuple(cycle))
                if colour[nxt] == WHITE:
                    colour[nxt] = GREY
                    path.append(nxt)
                    stack.append((nxt, iter(adj[nxt])))
                    advanced = True
                    break
            if not advanced:
                colour[node] = BLACK
                path.pop()
                stack.pop()

    # Acyclic: longest path by dynamic programming over a topological order.
    indegree = {v: 0 for v in range(1, n + 1)}
    for _, j in g.arcs:
        indegree[j] += 1
    ready = [v for v in range(1, n + 1) if indegree[v] == 0]
    dist = {v: 0 for v in range(1, n + 1)}
    while ready:
        v = ready.pop()
        for w in adj[v]:
            if dist[v] + 1 > dist[w]:
                dist[w] = dist[v] + 1
            indegree[w] -= 1
            if indegree[w] == 0:
                ready.append(w)
    longest = max(dist.values(), default=0)
    return AcyclicityReport(acyclic=True, longest_path_length=longest)
