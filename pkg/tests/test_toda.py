from fractions import Fraction
from math import factorial

import pytest

from fockchern import operators, toda
from fockchern.errors import WindowError
from fockchern.partitions import Partition
from fockchern.series import SeriesRing, series_exp, substitute_zero
from fockchern.special import exp_series
from fockchern.toda import (TauRequest, c_constants, reduced_residual, reduced_tau, tau,
                            toda_residual)

import oracles


def part(series, var, power):
    """Coefficient of ``var**power`` in the ring without ``var``."""
    ring = series.ring
    rest = SeriesRing(tuple(v for v in ring.vars if v.name != var))
    return series.component(var, power).restrict(rest)


def test_c_constant_examples():
    assert c_constants(0, 6) == [0] * 7
    assert c_constants(1, 3) == [Fraction(1, 2), Fraction(1, 12), 0, Fraction(-1, 120)]
    assert c_constants(2, 2) == [2, Fraction(7, 6), 1]


@pytest.mark.parametrize("m", range(-5, 6))
def test_c_constants_oracle(m):
    want = oracles.twist_laurent(m, 5)
    assert c_constants(m, 5) == [want.get(k, 0) * factorial(k) for k in range(6)]


def test_tau_slices():
    req = TauRequest(0, 2, 2, 4)
    t = tau(req)
    names = [f"x{k}" for k in range(3)]
    ring = req.ring
    want = series_exp(ring.gen("t1") * ring.gen("s1") + (ring.gen("t2") * ring.gen("s2")).scale(Fraction(1, 2)))
    assert substitute_zero(t, names) == want
    assert t.coefficient(t1=1, s1=1) == 1
    assert t.coefficient(t1=1, s1=1, x0=1) == 1
    only = substitute_zero(t, names + ["t2", "s2"])
    assert all(e[0] == e[2] and c == Fraction(1, factorial(e[0])) for e, c in only.terms.items())


@pytest.mark.parametrize("m", [-1, 0, 1])
def test_lowest_toda_equation(m):
    rep = toda_residual(TauRequest(m, 2, 3, 3))
    assert rep.passed and rep.max_nonzero_degree is None


def test_small_windows():
    assert toda_residual(TauRequest(0, 3, 2, 2)).passed
    assert toda_residual(TauRequest(1, 3, 3, 3)).passed
    with pytest.raises(WindowError):
        TauRequest(0, 0, 2, 2)


def test_wrong_twist_breaks_toda(monkeypatch):
    # negative control: drop the twist so tau(m) no longer depends on m
    real = toda.twisted_coefficients
    monkeypatch.setattr(toda, "twisted_coefficients", lambda nu, m, K: real(nu, 0, K))
    rep = toda_residual(TauRequest(0, 2, 2, 2))
    assert not rep.passed


def test_factorial_twist_breaks_toda(monkeypatch):
    # the k!-scaled constants are not the ones the equation wants
    real = toda.twisted_coefficients

    def scaled(nu, m, K):
        base = real(nu, 0, K)
        shift = real(Partition([]), m, K)
        return [b + s * factorial(k) for k, (b, s) in enumerate(zip(base, shift))]
    ref = [real(Partition([]), 1, 3)[k] for k in range(4)]
    assert ref[3] != ref[3] * factorial(3)
    monkeypatch.setattr(toda, "twisted_coefficients", scaled)
    assert not toda_residual(TauRequest(0, 2, 4, 2)).passed


def test_reduced_tau():
    t = reduced_tau(4, 6)
    ring = SeriesRing.of(("x1", 0, 6))
    assert part(t, "w", 0) == ring.one()
    assert part(t, "w", 1) == ring.one()
    cosh = (exp_series(ring, "x1", 1) + exp_series(ring, "x1", -1)).scale(Fraction(1, 4))
    assert part(t, "w", 2) == cosh
    x0 = substitute_zero(t, ["x1"])
    assert all(c == Fraction(1, factorial(e[0])) for e, c in x0.terms.items())
    assert reduced_residual(4, 6).is_zero()
