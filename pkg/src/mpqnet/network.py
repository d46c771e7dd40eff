"""Network descriptions: topology, buffers, blocking, service times.

A network is a directed graph of single-server FCFS nodes.  Every node i
starts with ``initial_contents[i-1]`` customers already queued (infinity
marks a node that is never starved, e.g. a source with an unbounded
backlog) and offers ``capacities[i-1]`` buffer spaces to each upstream
neighbour (infinity means never blocking).  Nodes without predecessors are
sources and must have infinite contents and capacity.

Node numbering is 1-based everywhere in this module, matching the on-disk
JSON format; matrix indices become 0-based only inside the builder.
"""

from __future__ import annotations

import enum
import hashlib
import json
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

#: Marker for an unbounded buffer or an inexhaustible initial backlog.
INFINITE = math.inf


class Blocking(enum.Enum):
    """What a full downstream buffer does to an upstream server.

    NONE: buffers are genuinely unbounded, departures equal completions.
    MANUFACTURING: a completed customer holds its server until every
        finite-capacity successor has a free space.
    COMMUNICATION: service does not even begin until the customer is
        guaranteed a space downstream on completion.
    """

    NONE = "none"
    MANUFACTURING = "manufacturing"
    COMMUNICATION = "communication"


class SpecValidationError(ValueError):
    """One or more structural rules violated; ``errors`` lists them all."""

    def __init__(self, errors: Sequence[str]):
        super().__init__("; ".join(errors))
        self.errors = tuple(errors)


class SpecFormatError(ValueError):
    """The JSON document does not encode a network."""


class TableExhaustedError(LookupError):
    """A service-time table was asked for an event index beyond its length."""


@dataclass(frozen=True)
class NetworkSpec:
    """Immutable network description; see ``validate`` for the rules."""

    node_count: int
    arcs: frozenset[tuple[int, int]]
    initial_contents: tuple[Union[int, float], ...]
    capacities: tuple[Union[int, float], ...]
    blocking: Blocking

    def predecessors(self, i: int) -> frozenset[int]:
        self._check_node(i)
        return frozenset(a for (a, b) in self.arcs if b == i)

    def successors(self, i: int) -> frozenset[int]:
        self._check_node(i)
        return frozenset(b for (a, b) in self.arcs if a == i)

    def is_source(self, i: int) -> bool:
        return not self.predecessors(i)

    def initial_content(self, i: int) -> Union[int, float]:
        self._check_node(i)
        return self.initial_contents[i - 1]

    def capacity(self, i: int) -> Union[int, float]:
        self._check_node(i)
        return self.capacities[i - 1]

    def _check_node(self, i: int) -> None:
        if not (1 <= i <= self.node_count):
            raise IndexError(f"node {i} outside 1..{self.node_count}")


def validate(spec: NetworkSpec) -> NetworkSpec:
    """Check structural consistency; returns the spec unchanged.

    Raises SpecValidationError carrying the complete list of violations:
    out-of-range or self-looping arcs, initial contents above capacity,
    sources with finite contents or capacity, and finite capacities under
    the NONE discipline (which promises unbounded buffers).
    """
    errors: list[str] = []
    n = spec.node_count
    if n < 1:
        errors.append(f"node count must be at least 1, got {n}")
        raise SpecValidationError(errors)
    if len(spec.initial_contents) != n:
        errors.append(
            f"expected {n} initial contents, got {len(spec.initial_contents)}"
        )
    if len(spec.capacities) != n:
        errors.append(f"expected {n} capacities, got {len(spec.capacities)}")
    if errors:
        raise SpecValidationError(errors)

    for i, j in sorted(spec.arcs):
        if not (1 <= i <= n and 1 <= j <= n):
            errors.append(f"arc ({i}, {j}) references a node outside 1..{n}")
        elif i == j:
            errors.append(f"arc ({i}, {j}) is a self-loop")

    for i in range(1, n + 1):
        r = spec.initial_contents[i - 1]
        s = spec.capacities[i - 1]
        if not _is_count(r):
            errors.append(f"node {i}: initial contents must be a non-negative "
                          f"integer or infinite, got {r!r}")
            continue
        if not _is_count(s):
            errors.append(f"node {i}: capacity must be a non-negative "
                          f"integer or infinite, got {s!r}")
            continue
        if r > s:
            errors.append(f"node {i}: initial contents {r} exceed capacity {s}")
        if not any(b == i for (_, b) in spec.arcs):
            if r != INFINITE or s != INFINITE:
                errors.append(
                    f"node {i}: sources must have infinite initial contents "
                    "and capacity"
                )
        if spec.blocking is Blocking.NONE and s != INFINITE:
            errors.append(
                f"node {i}: finite capacity {s} contradicts the no-blocking "
                "discipline"
            )

    if errors:
        raise SpecValidationError(errors)
    return spec


def _is_count(x: object) -> bool:
    if x == INFINITE:
        return True
    return isinstance(x, int) and not isinstance(x, bool) and x >= 0


# -- service times -----------------------------------------------------


@dataclass(frozen=True)
class TableService:
    """Explicit service times: ``rows[i-1][k-1]`` serves node i, event k."""

    rows: tuple[tuple[Union[int, float], ...], ...]

    def __post_init__(self) -> None:
        for i, row in enumerate(self.rows, start=1):
            for k, tau in enumerate(row, start=1):
                if not tau > 0:
                    raise ValueError(
                        f"service time for node {i}, event {k} must be "
                        f"positive, got {tau!r}"
                    )

    def service_time(self, i: int, k: int) -> Union[int, float]:
        if not (1 <= i <= len(self.rows)):
            raise IndexError(f"node {i} outside 1..{len(self.rows)}")
        if k < 1:
            raise IndexError(f"event index must be at least 1, got {k}")
        row = self.rows[i - 1]
        if k > len(row):
            raise TableExhaustedError(
                f"node {i} has only {len(row)} tabulated service times, "
                f"event {k} requested"
            )
        return row[k - 1]


@dataclass(frozen=True)
class SeededService:
    """Reproducible pseudo-random integer service times in 1..max_value.

    The value for (node, event) is a pure function of (seed, node, event) —
    stable across processes and platforms, independent of query order.
    """

    seed: int
    max_value: int = 9

    def __post_init__(self) -> None:
        if self.max_value < 1:
            raise ValueError(f"max_value must be at least 1, got {self.max_value}")

    def service_time(self, i: int, k: int) -> int:
        if i < 1 or k < 1:
            raise IndexError(f"node and event indices start at 1, got ({i}, {k})")
        digest = hashlib.sha256(f"{self.seed}:{i}:{k}".encode("ascii")).digest()
        return int.from_bytes(digest[:8], "big") % self.max_value + 1


ServiceTimeSource = Union[TableService, SeededService]


# -- JSON wire format ----------------------------------------------------


@dataclass(frozen=True)
class NetworkDocument:
    """A parsed spec file: the network plus its run parameters."""

    spec: NetworkSpec
    service: ServiceTimeSource
    steps: int
    name: str = field(default="network")


def parse_network(doc: Mapping, name: str = "network") -> NetworkDocument:
    """Decode the JSON object format; raises SpecFormatError on bad shape.

    Expected keys: "nodes" (int), "arcs" (list of [from, to] pairs,
    1-based), "initial_contents" and "capacities" (lists of non-negative
    ints or the string "inf"), "blocking" ("none" | "manufacturing" |
    "communication"), "service" ({"table": [[...]]} or {"seeded": {"seed":
    int, "max": int}}), "steps" (int >= 0).  Unknown keys are ignored so
    files may carry comments.
    """
    if not isinstance(doc, Mapping):
        raise SpecFormatError("top level must be a JSON object")

    nodes = doc.get("nodes")
    if not isinstance(nodes, int) or isinstance(nodes, bool) or nodes < 1:
        raise SpecFormatError('"nodes" must be a positive integer')

    raw_arcs = doc.get("arcs")
    if not isinstance(raw_arcs, list):
        raise SpecFormatError('"arcs" must be a list of [from, to] pairs')
    arcs = set()
    for idx, pair in enumerate(raw_arcs):
        if (
            not isinstance(pair, (list, tuple))
            or len(pair) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in pair)
        ):
            raise SpecFormatError(f'"arcs" entry {idx} is not a pair of integers')
        arcs.add((pair[0], pair[1]))

    contents = _parse_counts(doc.get("initial_contents"), "initial_contents", nodes)
    capacities = _parse_counts(doc.get("capacities"), "capacities", nodes)

    raw_blocking = doc.get("blocking")
    try:
        blocking = Blocking(raw_blocking)
    except ValueError:
        choices = ", ".join(repr(b.value) for b in Blocking)
        raise SpecFormatError(
            f'"blocking" must be one of {choices}, got {raw_blocking!r}'
        ) from None

    service = _parse_service(doc.get("service"), nodes)

    steps = doc.get("steps")
    if not isinstance(steps, int) or isinstance(steps, bool) or steps < 0:
        raise SpecFormatError('"steps" must be a non-negative integer')

    spec = NetworkSpec(
        node_count=nodes,
        arcs=frozenset(arcs),
        initial_contents=contents,
        capacities=capacities,
        blocking=blocking,
    )
    return NetworkDocument(spec=spec, service=service, steps=steps, name=name)


def load_network(path) -> NetworkDocument:
    """Read and decode a spec file; the document name is the file stem."""
    import pathlib

    p = pathlib.Path(path)
    try:
        with open(p, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SpecFormatError(f"{p}: not valid JSON ({exc})") from exc
    return parse_network(doc, name=p.stem)


def _parse_counts(raw, key: str, nodes: int) -> tuple:
    if not isinstance(raw, list) or len(raw) != nodes:
        raise SpecFormatError(f'"{key}" must be a list of {nodes} values')
    out = []
    for idx, v in enumerate(raw):
        if v == "inf":
            out.append(INFINITE)
        elif isinstance(v, int) and not isinstance(v, bool) and v >= 0:
            out.append(v)
        else:
            raise SpecFormatError(
                f'"{key}" entry {idx} must be a non-negative integer or "inf", '
                f"got {v!r}"
            )
    return tuple(out)


def _parse_service(raw, nodes: int) -> ServiceTimeSource:
    if not isinstance(raw, Mapping) or len(raw) != 1:
        raise SpecFormatError(
            '"service" must be an object with exactly one of "table" or "seeded"'
        )
    if "table" in raw:
        rows = raw["table"]
        if not isinstance(rows, list) or len(rows) != nodes:
            raise SpecFormatError(f'"service.table" must hold {nodes} rows')
        parsed: list[tuple] = []
        for idx, row in enumerate(rows):
            if not isinstance(row, list) or not all(
                isinstance(t, int) and not isinstance(t, bool) and t > 0 for t in row
            ):
                raise SpecFormatError(
                    f'"service.table" row {idx} must be a list of positive integers'
                )
            parsed.append(tuple(row))
        return TableService(rows=tuple(parsed))
    if "seeded" in raw:
        params = raw["seeded"]
        if not isinstance(params, Mapping):
            raise SpecFormatError('"service.seeded" must be an object')
        seed = params.get("seed")
        if not isinstance(seed, int) or isinstance(seed, bool):
            raise SpecFormatError('"service.seeded.seed" must be an integer')
        max_value = params.get("max", 9)
        if not isinstance(max_value, int) or isinstance(max_value, bool) or max_value < 1:
            raise SpecFormatError('"service.seeded.max" must be a positive integer')
        return SeededService(seed=seed, max_value=max_value)
    raise SpecFormatError('"service" must contain "table" or "seeded"')
