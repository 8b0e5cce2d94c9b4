from fractions import Fraction

import pytest

from fockchern.errors import WindowError
from fockchern.operators import chern_eigenvalue, epsilon0_eigenvalue
from fockchern.partitions import Partition, partition_count
from fockchern.series import Series, SeriesRing
from fockchern.special import exp_series, inv_varsigma, varsigma
from fockchern.traces import (TraceRequest, bloch_okounkov_rhs, jacobi_product, jacobi_sum,
                              q_pochhammer, q_pochhammer_inverse, q_trace, theta, trace,
                              total_degree_ring, trace_theorem_rhs)
from fockchern.verify import bo_pairs, theorem_trace_pairs


def part(series, var, power):
    """Coefficient of ``var**power`` in the ring without ``var``."""
    ring = series.ring
    rest = SeriesRing(tuple(v for v in ring.vars if v.name != var))
    return series.component(var, power).restrict(rest)


def test_pochhammer_examples():
    ring = SeriesRing.of(("q", 0, 5))
    inv = q_pochhammer_inverse(ring)
    assert [inv.coefficient(q=n) for n in range(6)] == [1, 1, 2, 3, 5, 7]
    r3 = SeriesRing.of(("q", 0, 3))
    assert [q_pochhammer(r3).coefficient(q=n) for n in range(4)] == [1, -1, -1, 0]
    rz = SeriesRing.of(("z", 0, 4), ("q", 0, 2))
    first = part(q_pochhammer(rz, 1, 1, "z"), "q", 1)
    assert first == -exp_series(SeriesRing.of(("z", 0, 4)), "z", 1)


def test_theta_examples():
    th = theta("z", 8, 4)
    zring = SeriesRing.of(("z", 0, 8))
    assert part(th, "q", 0) == varsigma(zring, "z")
    assert all(e[0] != 0 for e in th.terms)
    s = varsigma(zring, "z")
    want = s * (2 - exp_series(zring, "z", 1) - exp_series(zring, "z", -1))
    assert part(th, "q", 1) == want


def test_jacobi_triple_product():
    ring = SeriesRing.of(("z", 0, 8), ("q", 0, 10))
    assert jacobi_sum(ring) == jacobi_product(ring)


def test_identity_trace_counts_partitions():
    ring = SeriesRing.of(("q", 0, 20))
    t = q_trace(TraceRequest((), ring, 20))
    assert t == q_pochhammer_inverse(ring)
    assert [t.coefficient(q=n) for n in range(21)] == [partition_count(n) for n in range(21)]


def test_single_operator_traces():
    ring = SeriesRing.of(("z", 1, 6), ("q", 0, 2))
    zr = SeriesRing.of(("z", 1, 6))
    assert part(trace("epsilon0", ["z"], ring), "q", 0) == inv_varsigma(zr, "z")
    cring = SeriesRing.of(("z", 0, 6), ("q", 0, 2))
    zc = SeriesRing.of(("z", 0, 6))
    t = trace("chern", ["z"], cring)
    assert part(t, "q", 1) == zc.one()
    q2 = chern_eigenvalue(Partition([2]), zc) + chern_eigenvalue(Partition([1, 1]), zc)
    assert part(t, "q", 2) == q2
    assert (q2.constant_term, q2.coefficient(z=1), q2.coefficient(z=2)) == (4, 0, 1)


def test_trace_window_error():
    ring = SeriesRing.of(("q", 0, 5))
    with pytest.raises(WindowError):
        q_trace(TraceRequest((), ring, 3))


def test_bloch_okounkov_one_point():
    rhs = bloch_okounkov_rhs(["z"], 6, 4)
    q0 = part(rhs, "q", 0)
    assert q0 == inv_varsigma(SeriesRing.of(("z", 1, 6)), "z").restrict(q0.ring)


@pytest.mark.parametrize("case", [(1, 8, 6), (2, 6, 6), (3, 4, 4)])
def test_bloch_okounkov(case):
    for label, a, b in bo_pairs([case]):
        assert a == b, label


@pytest.mark.parametrize("case", [(1, 6, 6), (2, 5, 4)])
def test_trace_theorem(case):
    for label, a, b in theorem_trace_pairs([case]):
        assert a == b, label
