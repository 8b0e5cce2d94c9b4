"""Acceptance criteria at full size, one PASS/FAIL line each.

Every check is an exact coefficient comparison with a wall-clock budget.
Run under pytest (lines appear in the terminal summary) or directly as a
script.
"""

from __future__ import annotations

import time
from fractions import Fraction

import pytest

from fockchern import operators, toda, verify
from fockchern.partitions import partition_count
from fockchern.series import SeriesRing, first_difference
from fockchern.special import exp_series
from fockchern.traces import TraceRequest, jacobi_product, jacobi_sum, q_pochhammer_inverse, q_trace

RESULTS: list[str] = []


def _series_pairs(pairs):
    for label, a, b in pairs:
        d = first_difference(a, b)
        if d is not None:
            return f"{label}: {verify._describe(d)}"
    return None


def _bools(items):
    for label, ok in items:
        if not ok:
            return label
    return None


def heisenberg():
    return _bools(verify.heisenberg_failures(8, 5))


def pairing():
    return _bools(verify.pairing_failures(8))


def identify():
    return _series_pairs(verify.identify_failures(12, 12))


def one_point_routes():
    return _series_pairs(verify.one_point_routes(8, 10))


def one_point_theorem():
    return _series_pairs(verify.theorem_routes(8, 10))


def inclusion_exclusion():
    return _series_pairs(verify.inclusion_exclusion_routes(6, 6, 3))


def jacobi():
    ring = SeriesRing.of(("z", 0, 10), ("q", 0, 12))
    return _series_pairs([("q^12 z^10", jacobi_sum(ring), jacobi_product(ring))])


def bloch_okounkov():
    return _series_pairs(verify.bo_pairs([(1, 10, 8), (2, 10, 8), (3, 6, 6)]))


def trace_theorem():
    return _series_pairs(verify.theorem_trace_pairs([(1, 8, 8), (2, 8, 8)]))


def identity_trace():
    ring = SeriesRing.of(("q", 0, 20))
    t = q_trace(TraceRequest((), ring, 20))
    bad = _series_pairs([("closed form", t, q_pochhammer_inverse(ring))])
    return bad or _bools((f"p({n})", t.coefficient(q=n) == partition_count(n)) for n in range(21))


def toda_lowest():
    for m in (-1, 0, 1):
        rep = toda.toda_residual(toda.TauRequest(m, 3, 4, 4))
        if not rep.passed:
            return f"m={m}: residual nonzero up to degree {rep.max_nonzero_degree}"
    return None


def toda_reduced():
    res = toda.reduced_residual(4, 6)
    if not res.is_zero():
        return f"residual has {len(res)} terms"
    t = toda.reduced_tau(4, 6)
    ring = SeriesRing.of(("x1", 0, 6))
    got = t.component("w", 2).restrict(ring)
    cosh = (exp_series(ring, "x1", 1) + exp_series(ring, "x1", -1)).scale(Fraction(1, 4))
    return _series_pairs([("n=2 coefficient", got, cosh)])


def c_constants():
    bad = _bools((f"m={m}", operators.c_constant_coeffs(m, 6)[0] == m) for m in range(-5, 6))
    return bad or _bools([("m=0", all(c == 0 for c in toda.c_constants(0, 10)))])


CRITERIA = [
    ("Heisenberg relations, |lam| <= 8, |m|,|n| <= 5", heisenberg, 5),
    ("pairing and fixed-point orthonormality, |lam| <= 8", pairing, 5),
    ("chern = regularized epsilon0, |lam| <= 12, z^12", identify, 10),
    ("one-point closed form = diagonal = commutator, |lam| <= 8, z^10", one_point_routes, 60),
    ("one-point G theorem and relation, |lam| <= 8", one_point_theorem, 30),
    ("inclusion-exclusion = direct, N <= 3, |lam| <= 6, z^6", inclusion_exclusion, 60),
    ("Jacobi triple product, q^12 z^10", jacobi, 10),
    ("Bloch-Okounkov determinant = direct trace, N <= 3", bloch_okounkov, 300),
    ("trace theorem for Chern products, N <= 2, q^8", trace_theorem, 120),
    ("Tr_q I = 1/(q;q), p(n) for n <= 20", identity_trace, 1),
    ("lowest Toda equation, m in {-1,0,1}, K=3, D=4, n_max=4", toda_lowest, 300),
    ("reduced Toda identity through w^4 x^6, n=2 is cosh/2", toda_reduced, 60),
    ("c-constant residue m for |m| <= 5, c^(0) = 0", c_constants, 1),
]


def evaluate(name, fn, limit):
    operators.clear_caches()
    start = time.perf_counter()
    problem = fn()
    elapsed = time.perf_counter() - start
    if problem is None and elapsed > limit:
        problem = f"took {elapsed:.1f} s, budget {limit} s"
    line = f"{'PASS' if problem is None else 'FAIL'} {name} [{elapsed:.2f} s]"
    if problem:
        line += f"  {problem}"
    RESULTS.append(line)
    print(line)
    return problem


@pytest.mark.parametrize("name,fn,limit", CRITERIA, ids=[c[1].__name__ for c in CRITERIA])
def test_criterion(name, fn, limit):
    problem = evaluate(name, fn, limit)
    assert problem is None, problem


if __name__ == "__main__":
    failures = sum(evaluate(*c) is not None for c in CRITERIA)
    raise SystemExit(1 if failures else 0)
