"""Acceptance gate: ten independently checkable claims about the package.

Each test covers one claim, in order, and records a PASS/FAIL verdict
line; the lines are echoed in the terminal summary (see conftest) and via
plain print for ``-s`` runs.  The randomized suites are built once and
cached at module level so later criteria reuse the earlier computations.
"""

import random
import subprocess
import sys
import time

import pytest

from netrand import (
    DISCIPLINES,
    open_chain,
    random_cyclic_spec,
    random_solvable_spec,
    with_infinite_buffers,
)

from mpqnet import engine, oracle
from mpqnet.builder import build_delayed_adjacency, build_transition_matrices, check_solvability
from mpqnet.maxplus.graph import AssociatedGraph, analyze_acyclicity
from mpqnet.maxplus.matrix import MaxPlusMatrix
from mpqnet.maxplus.solve import CyclicSystemError, solve_implicit
from mpqnet.maxplus.values import EPS, ZERO, oplus, otimes
from mpqnet.network import INFINITE, Blocking, NetworkSpec, SeededService, validate

METHODS = ("implicit", "explicit", "extended")
SUITE_SIZE = 300
STEPS = 50

_CACHE: dict = {}


def _verdict(report, num, label, check):
    try:
        check()
    except BaseException:
        line = f"criterion {num:2d}: FAIL  {label}"
        print(line)
        report.append(line)
        raise
    line = f"criterion {num:2d}: PASS  {label}"
    print(line)
    report.append(line)


def _same(a, b):
    if a is EPS or b is EPS:
        return a is b
    return a == b


# ------------------------------------------------------------------ 1


def test_criterion_01_scalar_law_suite(acceptance_report):
    def check():
        rng = random.Random(0xA001)

        def val():
            return EPS if rng.random() < 0.2 else rng.randint(-30, 30)

        laws = (
            ("sum associates", lambda a, b, c: _same(
                oplus(oplus(a, b), c), oplus(a, oplus(b, c)))),
            ("sum commutes", lambda a, b, c: _same(oplus(a, b), oplus(b, a))),
            ("sum is idempotent", lambda a, b, c: _same(oplus(a, a), a)),
            ("product associates", lambda a, b, c: _same(
                otimes(otimes(a, b), c), otimes(a, otimes(b, c)))),
            ("product commutes", lambda a, b, c: _same(
                otimes(a, b), otimes(b, a))),
            ("product distributes left", lambda a, b, c: _same(
                otimes(a, oplus(b, c)), oplus(otimes(a, b), otimes(a, c)))),
            ("product distributes right", lambda a, b, c: _same(
                otimes(oplus(b, c), a), oplus(otimes(b, a), otimes(c, a)))),
            ("bottom absorbs products", lambda a, b, c: otimes(a, EPS) is EPS
             and otimes(EPS, a) is EPS),
            ("bottom is neutral for sums", lambda a, b, c: _same(
                oplus(a, EPS), a) and _same(oplus(EPS, a), a)),
            ("unit is neutral for products", lambda a, b, c: _same(
                otimes(a, ZERO), a) and _same(otimes(ZERO, a), a)),
        )
        started = time.monotonic()
        for name, law in laws:
            for _ in range(1000):
                a, b, c = val(), val(), val()
                assert law(a, b, c), (name, a, b, c)
        assert time.monotonic() - started < 10.0

    _verdict(acceptance_report, 1, "scalar algebra laws, 1000 cases per law", check)


# ------------------------------------------------------------------ 2


def _random_square(rng, n, density=0.65, lo=-9, hi=9):
    return MaxPlusMatrix(
        n,
        n,
        [
            rng.randint(lo, hi) if rng.random() < density else EPS
            for _ in range(n * n)
        ],
    )


def test_criterion_02_iterated_closure_expansion(acceptance_report):
    def check():
        rng = random.Random(0xA002)
        for _ in range(220):
            n = rng.randint(1, 6)
            x = _random_square(rng, n)
            q = rng.randint(0, 8)
            lhs = MaxPlusMatrix.identity(n).oplus(x).power(q)
            acc = MaxPlusMatrix.identity(n)
            pw = MaxPlusMatrix.identity(n)
            for _ in range(q):
                pw = pw.otimes(x)
                acc = acc.oplus(pw)
            assert lhs == acc

    _verdict(
        acceptance_report,
        2,
        "(identity + X)^q expands to the sum of powers up to q",
        check,
    )


# ------------------------------------------------------------------ 3


def _random_acyclic_u(rng, n):
    order = list(range(1, n + 1))
    rng.shuffle(order)
    rank = {v: i for i, v in enumerate(order)}
    entries = [EPS] * (n * n)
    arcs = set()
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j and rank[i] < rank[j] and rng.random() < 0.45:
                entries[(i - 1) * n + (j - 1)] = rng.randint(1, 9)
                arcs.add((i, j))
    return MaxPlusMatrix(n, n, entries), arcs


def _random_column(rng, n):
    return MaxPlusMatrix.column(
        [EPS if rng.random() < 0.2 else rng.randint(-10, 10) for _ in range(n)]
    )


def test_criterion_03_implicit_equation_suite(acceptance_report):
    def check():
        rng = random.Random(0xA003)
        for _ in range(220):
            n = rng.randint(1, 6)
            u, arcs = _random_acyclic_u(rng, n)
            v = _random_column(rng, n)
            p = analyze_acyclicity(
                AssociatedGraph(n, frozenset(arcs))
            ).longest_path_length
            x = MaxPlusMatrix.identity(n).oplus(u).power(p).otimes(v)
            # a genuine solution of x = U x + v ...
            assert u.otimes(x).oplus(v) == x
            # ... reached by plain substitution within p + 1 rounds
            y = v
            for _ in range(p + 1):
                y = u.otimes(y).oplus(v)
            assert y == x
            # ... and identical to the solver's answer
            assert solve_implicit(u, v) == x

        rejected = 0
        while rejected < 60:
            n = rng.randint(2, 6)
            u, _ = _random_acyclic_u(rng, n)
            loop = rng.sample(range(1, n + 1), rng.randint(2, n))
            flat = list(u._data)  # noqa: SLF001 - test surgery on a copy
            for a, b in zip(loop, loop[1:] + loop[:1]):
                flat[(a - 1) * n + (b - 1)] = rng.randint(1, 9)
            with pytest.raises(CyclicSystemError):
                solve_implicit(MaxPlusMatrix(n, n, flat), _random_column(rng, n))
            rejected += 1

    _verdict(
        acceptance_report,
        3,
        "acyclic implicit systems solve exactly; cyclic ones are rejected",
        check,
    )


# ------------------------------------------------------------------ 4


_FEEDBACK_ARCS = frozenset(
    {(1, 2), (2, 3), (2, 5), (3, 4), (3, 6), (4, 2), (5, 6)}
)


def test_criterion_04_feedback_network_regression(acceptance_report):
    def check():
        stuck = validate(
            NetworkSpec(
                6,
                _FEEDBACK_ARCS,
                (INFINITE, 0, 0, 0, 0, 0),
                (INFINITE,) * 6,
                Blocking.NONE,
            )
        )
        report = check_solvability(build_delayed_adjacency(stuck))
        assert report.solvable is False
        assert report.blocking_circuit is not None
        assert set(report.blocking_circuit) == {2, 3, 4}

        repaired = validate(
            NetworkSpec(
                6,
                _FEEDBACK_ARCS,
                (INFINITE, 0, 1, 0, 0, 0),
                (INFINITE,) * 6,
                Blocking.NONE,
            )
        )
        assert check_solvability(build_delayed_adjacency(repaired)).solvable is True

    _verdict(
        acceptance_report,
        4,
        "six-node feedback net: empty loop rejected as {2,3,4}, one token repairs it",
        check,
    )


# ------------------------------------------------------------------ 5


def _suite():
    if "suite" not in _CACHE:
        rng = random.Random(0xA005)
        cases = []
        for idx in range(SUITE_SIZE):
            blocking = DISCIPLINES[idx % len(DISCIPLINES)]
            spec = random_solvable_spec(rng, blocking)
            cases.append((spec, SeededService(seed=idx + 1, max_value=9)))
        _CACHE["suite"] = tuple(cases)
    return _CACHE["suite"]


def _engine_runs():
    if "engine" not in _CACHE:
        started = time.monotonic()
        suite = _suite()
        results = tuple(
            {
                method: engine.run(spec, service, STEPS, method=method)
                for method in METHODS
            }
            for spec, service in suite
        )
        _CACHE["engine"] = (results, time.monotonic() - started)
    return _CACHE["engine"]


def test_criterion_05_three_way_engine_equivalence(acceptance_report):
    def check():
        results, elapsed = _engine_runs()
        assert len(results) >= 300
        for trajs in results:
            reference = trajs["implicit"].departures
            assert trajs["explicit"].departures == reference
            assert trajs["extended"].departures == reference
        assert elapsed < 60.0, f"engine suite took {elapsed:.1f}s"

    _verdict(
        acceptance_report,
        5,
        f"{SUITE_SIZE} random nets: all three evolution methods coincide",
        check,
    )


# ------------------------------------------------------------------ 6


def test_criterion_06_simulation_equivalence(acceptance_report):
    def check():
        results, _ = _engine_runs()
        suite = _suite()
        assert {spec.blocking for spec, _ in suite} == set(DISCIPLINES)
        for (spec, service), trajs in zip(suite, results):
            log = oracle.simulate(spec, service, STEPS)
            for method in METHODS:
                report = oracle.compare(trajs[method], log)
                assert report.matched, report.detail

    _verdict(
        acceptance_report,
        6,
        "event simulation reproduces every engine trajectory entrywise",
        check,
    )


# ------------------------------------------------------------------ 7


def test_criterion_07_open_chain_reduction(acceptance_report):
    def check():
        chains = [(open_chain(n), 100 + n) for n in range(2, 7)]
        for blocking in (Blocking.MANUFACTURING, Blocking.COMMUNICATION):
            for n in (2, 4, 6):
                tight = open_chain(
                    n, blocking, capacities=(INFINITE,) + (0,) * (n - 1)
                )
                chains.append((tight, 200 + n))
        for spec, seed in chains:
            service = SeededService(seed=seed, max_value=9)
            da = build_delayed_adjacency(spec)
            solv = check_solvability(da)
            assert solv.solvable
            n = spec.node_count
            d = [ZERO] * n
            history = [list(d)]
            for k in range(1, STEPS + 1):
                taus = [
                    service.service_time(i, k) for i in range(1, n + 1)
                ]
                ts = build_transition_matrices(
                    da, spec.blocking, taus, solv.longest_path_length
                )
                # single-delay shape: exactly one evolution matrix
                assert ts.max_delay == 1
                assert len(ts.matrices) == 1
                d = ts.matrices[0].apply(d)
                history.append(list(d))
            log = oracle.simulate(spec, service, STEPS)
            for i in range(1, n + 1):
                for k in range(1, STEPS + 1):
                    assert history[k][i - 1] == log.departures[i - 1][k - 1]

    _verdict(
        acceptance_report,
        7,
        "open chains collapse to d(k) = T1(k) d(k-1), matching simulation",
        check,
    )


# ------------------------------------------------------------------ 8


def test_criterion_08_buffer_limits_only_delay(acceptance_report):
    def check():
        results, _ = _engine_runs()
        suite = _suite()
        for (spec, service), trajs in zip(suite, results):
            relaxed = engine.run(
                with_infinite_buffers(spec), service, STEPS, method="implicit"
            )
            bounded = trajs["implicit"]
            for k in range(1, STEPS + 1):
                for i in range(1, spec.node_count + 1):
                    assert relaxed.departure(i, k) <= bounded.departure(i, k)

    _verdict(
        acceptance_report,
        8,
        "removing buffer limits never postpones any departure",
        check,
    )


# ------------------------------------------------------------------ 9


def test_criterion_09_deadlock_correspondence(acceptance_report):
    def check():
        rng = random.Random(0xA009)
        for idx in range(120):
            blocking = DISCIPLINES[idx % len(DISCIPLINES)]
            spec = random_cyclic_spec(rng, blocking)
            service = SeededService(seed=5000 + idx, max_value=9)
            for method in METHODS:
                with pytest.raises(CyclicSystemError):
                    engine.run(spec, service, 5, method=method)
            with pytest.raises(oracle.DeadlockError):
                oracle.simulate(spec, service, 5)

    _verdict(
        acceptance_report,
        9,
        "empty-loop nets: simulation deadlocks iff engines reject, every case",
        check,
    )


# ------------------------------------------------------------------ 10


def test_criterion_10_cli_determinism(acceptance_report, fixtures_dir, tmp_path):
    def check():
        spec = fixtures_dir / "tandem_open.json"
        outputs = []
        for label in ("first", "second"):
            out_dir = tmp_path / label
            out_dir.mkdir()
            proc = subprocess.run(
                [
                    sys.executable,
                    "-m",
                    "mpqnet",
                    "run",
                    str(spec),
                    "--method",
                    "all",
                    "--seed",
                    "7",
                ],
                cwd=out_dir,
                capture_output=True,
            )
            assert proc.returncode == 0, proc.stderr.decode()
            assert b"MATCH" in proc.stdout
            files = {
                f.name: f.read_bytes() for f in sorted(out_dir.iterdir())
            }
            assert len(files) == 4
            outputs.append((proc.stdout, files))
        assert outputs[0] == outputs[1]

    _verdict(
        acceptance_report,
        10,
        "two identical CLI runs produce byte-identical files, exit 0",
        check,
    )
