"""Topology-to-matrix construction: delay families, solvability, transitions."""

import pytest

from mpqnet.builder import (
    build_delayed_adjacency,
    build_extended_transition,
    build_transition_matrices,
    check_solvability,
    zero_delay_graph,
)
from mpqnet.engine import UnsolvableNetworkError
from mpqnet.maxplus.matrix import MaxPlusMatrix
from mpqnet.maxplus.values import EPS
from mpqnet.network import INFINITE, Blocking, NetworkSpec, validate

FEEDBACK_ARCS = frozenset(
    {(1, 2), (2, 3), (2, 5), (3, 4), (3, 6), (4, 2), (5, 6)}
)


def feedback_spec(contents):
    return validate(
        NetworkSpec(
            node_count=6,
            arcs=FEEDBACK_ARCS,
            initial_contents=tuple(contents),
            capacities=(INFINITE,) * 6,
            blocking=Blocking.NONE,
        )
    )


def tandem_spec(blocking=Blocking.NONE, capacities=(INFINITE, INFINITE)):
    return validate(
        NetworkSpec(
            node_count=2,
            arcs=frozenset({(1, 2)}),
            initial_contents=(INFINITE, 0),
            capacities=capacities,
            blocking=blocking,
        )
    )


def _arcs_of(matrix):
    return {
        (i + 1, j + 1)
        for i in range(matrix.rows)
        for j in range(matrix.cols)
        if matrix.entry(i, j) is not EPS
    }


def test_feedback_zero_delay_family_with_one_preloaded_node():
    da = build_delayed_adjacency(feedback_spec((INFINITE, 0, 1, 0, 0, 0)))
    assert da.node_count == 6
    assert da.max_delay == 1
    # Zero-delay arcs point at empty nodes; (2, 3) moved up to delay 1.
    assert _arcs_of(da.g[0]) == {(1, 2), (4, 2), (3, 4), (2, 5), (5, 6), (3, 6)}
    assert _arcs_of(da.g[1]) == {(2, 3)}
    assert all(m.is_null() for m in da.h)
    assert da.g_t[0] == da.g[0].transpose()


def test_feedback_zero_delay_family_when_loop_starts_empty():
    da = build_delayed_adjacency(feedback_spec((INFINITE, 0, 0, 0, 0, 0)))
    assert da.max_delay == 0
    assert _arcs_of(da.g[0]) == set(FEEDBACK_ARCS)
    assert da.h == ()


def test_capacity_family_placement():
    # A two-space buffer at the downstream node releases the sender at
    # delay s + 1 = 3.
    spec = tandem_spec(Blocking.MANUFACTURING, capacities=(INFINITE, 2))
    da = build_delayed_adjacency(spec)
    assert da.max_delay == 3
    assert _arcs_of(da.g[0]) == {(1, 2)}
    assert all(m.is_null() for m in (da.g[1], da.g[2], da.g[3]))
    assert all(m.is_null() for m in (da.h[0], da.h[1]))
    assert _arcs_of(da.h[2]) == {(1, 2)}


def test_solvability_of_the_feedback_variants():
    solvable = check_solvability(
        build_delayed_adjacency(feedback_spec((INFINITE, 0, 1, 0, 0, 0)))
    )
    assert solvable.solvable
    assert solvable.longest_path_length == 4
    assert solvable.blocking_circuit is None
    assert solvable.remediation == ()

    deadlocked = check_solvability(
        build_delayed_adjacency(feedback_spec((INFINITE, 0, 0, 0, 0, 0)))
    )
    assert not deadlocked.solvable
    assert deadlocked.blocking_circuit == (2, 3, 4, 2)
    assert set(deadlocked.blocking_circuit) == {2, 3, 4}
    assert deadlocked.remediation == ((2, 1), (3, 1), (4, 1))


def test_zero_delay_graph_matches_contents():
    da = build_delayed_adjacency(feedback_spec((INFINITE, 0, 1, 0, 0, 0)))
    g = zero_delay_graph(da)
    assert g.arcs == frozenset(
        {(1, 2), (4, 2), (3, 4), (2, 5), (5, 6), (3, 6)}
    )


def test_tandem_transition_matrix_frozen_value():
    # 1 -> 2, zero-delay coupling, services (1, 2): the one-event-back
    # transition matrix worked out by hand.
    da = build_delayed_adjacency(tandem_spec())
    report = check_solvability(da)
    assert report.longest_path_length == 1
    ts = build_transition_matrices(
        da, Blocking.NONE, [1, 2], report.longest_path_length
    )
    assert ts.max_delay == 1
    assert ts.matrices[0].to_rows() == [[1, EPS], [3, 2]]


def test_blocking_disciplines_place_the_capacity_terms_differently():
    # Zero buffer ahead of node 2 (capacity 0 -> delay 1), services (1, 2).
    # Under manufacturing blocking the release term stays unscaled; under
    # communication blocking it is stretched by the service time.
    manuf = build_delayed_adjacency(tandem_spec(Blocking.MANUFACTURING, (INFINITE, 0)))
    comm = build_delayed_adjacency(tandem_spec(Blocking.COMMUNICATION, (INFINITE, 0)))
    t_manuf = build_transition_matrices(manuf, Blocking.MANUFACTURING, [1, 2], 1)
    t_comm = build_transition_matrices(comm, Blocking.COMMUNICATION, [1, 2], 1)
    assert t_manuf.matrices[0].to_rows() == [[1, 0], [3, 2]]
    assert t_comm.matrices[0].to_rows() == [[1, 1], [3, 3]]


def test_transition_requires_solvable_topology():
    da = build_delayed_adjacency(feedback_spec((INFINITE, 0, 0, 0, 0, 0)))
    with pytest.raises(UnsolvableNetworkError) as exc_info:
        build_transition_matrices(da, Blocking.NONE, [1] * 6)
    assert exc_info.value.report.blocking_circuit == (2, 3, 4, 2)


def test_degenerate_network_is_promoted_to_one_delay():
    spec = validate(
        NetworkSpec(
            node_count=1,
            arcs=frozenset(),
            initial_contents=(INFINITE,),
            capacities=(INFINITE,),
            blocking=Blocking.NONE,
        )
    )
    da = build_delayed_adjacency(spec)
    assert da.max_delay == 0
    ts = build_transition_matrices(da, Blocking.NONE, [4], 0)
    assert ts.max_delay == 1
    assert ts.matrices[0] == MaxPlusMatrix.diagonal([4])


def test_extended_transition_of_single_delay_is_t1():
    da = build_delayed_adjacency(tandem_spec())
    ts = build_transition_matrices(da, Blocking.NONE, [1, 2], 1)
    assert build_extended_transition(ts) == ts.matrices[0]


def test_extended_transition_block_layout():
    spec = tandem_spec(Blocking.MANUFACTURING, capacities=(INFINITE, 2))
    da = build_delayed_adjacency(spec)
    report = check_solvability(da)
    ts = build_transition_matrices(da, Blocking.MANUFACTURING, [1, 2], report.longest_path_length)
    assert ts.max_delay == 3
    t_hat = build_extended_transition(ts)
    n = 2
    assert t_hat.shape == (n * 3, n * 3)
    for m, t_m in enumerate(ts.matrices, start=1):
        for i in range(n):
            for j in range(n):
                assert t_hat.entry(i, (m - 1) * n + j) == t_m.entry(i, j)
    for block in range(1, 3):
        for i in range(n):
            for j in range(n * 3):
                expected = 0 if j == (block - 1) * n + i else EPS
                got = t_hat.entry(block * n + i, j)
                if expected is EPS:
                    assert got is EPS
                else:
                    assert got == 0
