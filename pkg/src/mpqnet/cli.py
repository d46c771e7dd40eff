"""Command-line front end.

Two commands: ``check`` reports whether a network admits an explicit
evolution (and how to repair it when not), ``run`` evolves departure
epochs by any of the three engine methods and/or the event simulation and
writes trajectory files.  ``run --method all`` cross-checks all four and
prints MATCH or the first divergence.

Exit codes: 0 success (and match), 1 unusable input, 2 no explicit
evolution / simulation deadlock, 3 engine-oracle divergence.
"""

from __future__ import annotations

import argparse
import pathlib
import sys
from typing import Optional, Sequence

from . import engine, oracle
from .builder import (
    build_delayed_adjacency,
    build_extended_transition,
    build_transition_matrices,
    check_solvability,
)
from .exporters import dump_json, matrices_to_jsonable, write_trajectory
from .network import (
    NetworkDocument,
    SeededService,
    SpecFormatError,
    SpecValidationError,
    TableExhaustedError,
    load_network,
    validate,
)

_ENGINE_METHODS = ("implicit", "explicit", "extended")


class _Parser(argparse.ArgumentParser):
    # Usage mistakes are input errors (exit 1), not solvability verdicts.
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="mpqnet",
        description=(
            "Fork-join queueing networks with blocking, evolved exactly in "
            "max-plus arithmetic and cross-checked by event simulation."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    check = sub.add_parser(
        "check", help="report whether the network admits an explicit evolution"
    )
    check.add_argument("spec", help="network description (JSON)")

    run = sub.add_parser(
        "run", help="evolve departure epochs and write trajectory files"
    )
    run.add_argument("spec", help="network description (JSON)")
    run.add_argument(
        "--method",
        choices=_ENGINE_METHODS + ("oracle", "all"),
        default="implicit",
        help="evolution method, the event simulation, or all four (default: implicit)",
    )
    run.add_argument(
        "--steps",
        type=int,
        default=None,
        metavar="K",
        help="number of departures per node (default: the spec's steps)",
    )
    run.add_argument(
        "--format",
        dest="fmt",
        choices=("csv", "json"),
        default="csv",
        help="trajectory file format (default: csv)",
    )
    run.add_argument(
        "--dump-matrices",
        action="store_true",
        help="also write the structural and first-event evolution matrices",
    )
    run.add_argument(
        "--trace",
        action="store_true",
        help="include arrival/start/completion epochs in trajectories",
    )
    run.add_argument(
        "--seed",
        type=int,
        default=None,
        help="override the seed of a spec using seeded service times",
    )
    run.add_argument(
        "--out",
        default=".",
        metavar="DIR",
        help="directory for output files (default: current directory)",
    )
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "check":
            return _cmd_check(args)
        return _cmd_run(args)
    except (SpecFormatError, SpecValidationError, TableExhaustedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except engine.UnsolvableNetworkError as exc:
        print(f"unsolvable: {exc}", file=sys.stderr)
        return 2
    except oracle.DeadlockError as exc:
        print(f"deadlock: {exc}", file=sys.stderr)
        return 2


def _cmd_check(args) -> int:
    doc = load_network(args.spec)
    validate(doc.spec)
    report = check_solvability(build_delayed_adjacency(doc.spec))
    if report.solvable:
        print(f"solvable: longest zero-delay path p = {report.longest_path_length}")
        return 0
    circuit = " -> ".join(str(i) for i in report.blocking_circuit or ())
    print(f"unsolvable: circuit: {circuit}")
    hints = ", ".join(f"node {i}: +{inc}" for i, inc in report.remediation)
    print(f"remediation: raise initial contents ({hints})")
    return 2


def _cmd_run(args) -> int:
    doc = load_network(args.spec)
    validate(doc.spec)
    doc = _apply_overrides(doc, args)
    out_dir = pathlib.Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    methods = (
        _ENGINE_METHODS + ("oracle",) if args.method == "all" else (args.method,)
    )
    trajectories: dict[str, engine.Trajectory] = {}
    for method in methods:
        if method == "oracle":
            log = oracle.simulate(doc.spec, doc.service, doc.steps)
            traj = oracle.as_trajectory(log, with_traces=args.trace)
        else:
            traj = engine.run(
                doc.spec, doc.service, doc.steps, method=method,
                with_traces=args.trace,
            )
        trajectories[method] = traj
        path = out_dir / f"{doc.name}_{method}.{args.fmt}"
        write_trajectory(path, traj, args.fmt)
        print(f"wrote {path}")

    if args.dump_matrices:
        path = out_dir / f"{doc.name}_matrices.json"
        _dump_matrices(path, doc)
        print(f"wrote {path}")

    if args.method == "all":
        return _report_agreement(trajectories)
    return 0


def _apply_overrides(doc: NetworkDocument, args) -> NetworkDocument:
    steps = doc.steps
    if args.steps is not None:
        if args.steps < 0:
            raise SpecFormatError(f"--steps must be non-negative, got {args.steps}")
        steps = args.steps
    service = doc.service
    if args.seed is not None:
        if not isinstance(service, SeededService):
            raise SpecFormatError(
                "--seed only applies to specs with seeded service times"
            )
        service = SeededService(seed=args.seed, max_value=service.max_value)
    return NetworkDocument(spec=doc.spec, service=service, steps=steps, name=doc.name)


def _dump_matrices(path, doc: NetworkDocument) -> None:
    da = build_delayed_adjacency(doc.spec)
    report = check_solvability(da)
    if not report.solvable:
        raise engine.UnsolvableNetworkError(report)
    p = report.longest_path_length
    assert p is not None
    n = doc.spec.node_count
    taus = [doc.service.service_time(i, 1) for i in range(1, n + 1)]
    ts = build_transition_matrices(da, doc.spec.blocking, taus, p)
    payload = matrices_to_jsonable(da, ts, build_extended_transition(ts), p, taus)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(dump_json(payload))


def _report_agreement(trajectories: dict[str, engine.Trajectory]) -> int:
    from .maxplus.values import EPS

    reference = trajectories["implicit"]
    for method in ("explicit", "extended", "oracle"):
        other = trajectories[method]
        for k in range(1, reference.steps + 1):
            for i in range(1, reference.node_count + 1):
                a = reference.departure(i, k)
                b = other.departure(i, k)
                same = (a is b) if (a is EPS or b is EPS) else (a == b)
                if not same:
                    print(
                        f"MISMATCH implicit vs {method}: node {i}, event {k}: "
                        f"{a!r} vs {b!r}"
                    )
                    return 3
    print("MATCH")
    return 0
