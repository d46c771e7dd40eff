"""Deterministic CSV/JSON rendering of trajectories and matrices.

The null element renders as the string "eps" everywhere — interchange
files never carry numeric sentinels.  Output is byte-stable: same inputs,
same bytes, no timestamps, no platform-dependent line endings (always a
single "\\n").
"""

from __future__ import annotations

import json
from typing import Mapping, Sequence

from .builder import DelayedAdjacency, TransitionSet
from .engine import Trajectory
from .maxplus.matrix import MaxPlusMatrix
from .maxplus.values import EPS, TimeValue


def render_value(v: TimeValue) -> str:
    return "eps" if v is EPS else str(v)


def jsonable_value(v: TimeValue):
    return "eps" if v is EPS else v


def matrix_to_rows(m: MaxPlusMatrix) -> list[list]:
    return [[jsonable_value(v) for v in row] for row in m.to_rows()]


def trajectory_to_csv(traj: Trajectory) -> str:
    """Rows k = 0..K with one departure column per node.

    With traces attached, arrival/start/completion columns follow; the
    k = 0 row renders those as "eps" (no events precede the first one).
    """
    n = traj.node_count
    header = ["k"] + [f"d_{i}" for i in range(1, n + 1)]
    if traj.traces is not None:
        for prefix in ("a", "b", "c"):
            header += [f"{prefix}_{i}" for i in range(1, n + 1)]
    lines = [",".join(header)]
    for k in range(traj.steps + 1):
        row = [str(k)] + [render_value(v) for v in traj.departures[k]]
        if traj.traces is not None:
            if k == 0:
                row += ["eps"] * (3 * n)
            else:
                row += [render_value(v) for v in traj.traces.arrivals[k - 1]]
                row += [render_value(v) for v in traj.traces.starts[k - 1]]
                row += [render_value(v) for v in traj.traces.completions[k - 1]]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def trajectory_to_jsonable(traj: Trajectory) -> dict:
    """JSON form; deliberately method-agnostic so matching runs match byte-wise."""
    doc: dict = {
        "nodes": traj.node_count,
        "steps": traj.steps,
        "departures": [
            [jsonable_value(v) for v in row] for row in traj.departures
        ],
    }
    if traj.traces is not None:
        doc["arrivals"] = [
            [jsonable_value(v) for v in row] for row in traj.traces.arrivals
        ]
        doc["starts"] = [
            [jsonable_value(v) for v in row] for row in traj.traces.starts
        ]
        doc["completions"] = [
            [jsonable_value(v) for v in row] for row in traj.traces.completions
        ]
    return doc


def dump_json(doc: Mapping) -> str:
    return json.dumps(doc, indent=2) + "\n"


def write_trajectory(path, traj: Trajectory, fmt: str) -> None:
    if fmt == "csv":
        text = trajectory_to_csv(traj)
    elif fmt == "json":
        text = dump_json(trajectory_to_jsonable(traj))
    else:
        raise ValueError(f"unknown format {fmt!r}")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def matrices_to_jsonable(
    da: DelayedAdjacency,
    ts: TransitionSet,
    t_hat: MaxPlusMatrix,
    p: int,
    taus: Sequence[TimeValue],
) -> dict:
    """Dump of the structural and first-event evolution matrices."""
    return {
        "nodes": da.node_count,
        "max_delay": da.max_delay,
        "longest_zero_delay_path": p,
        "service_times_event1": [jsonable_value(t) for t in taus],
        "content_delay": [matrix_to_rows(m) for m in da.g],
        "capacity_delay": [matrix_to_rows(m) for m in da.h],
        "transition_event1": [matrix_to_rows(m) for m in ts.matrices],
        "extended_event1": matrix_to_rows(t_hat),
    }
