from fractions import Fraction

import pytest

from fockchern.errors import DomainError, WindowError
from fockchern.fock import FIXED_POINT, FockVector, basis_change
from fockchern.operators import (DiagonalOperator, apply_diagonal, c_constant_coeffs,
                                 chern_eigenvalue, epsilon0_eigenvalue, epsilon_product_vev,
                                 master_eigenvalue, twisted_eigenvalue)
from fockchern.partitions import Partition, partitions_up_to
from fockchern.series import Series, SeriesRing
from fockchern.special import exp_series, inv_varsigma, varsigma

import oracles

P = Partition
Z8 = SeriesRing.of(("z", 0, 8))
L8 = SeriesRing.of(("z", 1, 8))


def test_chern_examples():
    assert chern_eigenvalue(P([1]), Z8) == Z8.one()
    assert chern_eigenvalue(P([2]), Z8) == 1 + exp_series(Z8, "z", 1)
    e = chern_eigenvalue(P([2, 1]), Z8)
    assert e == 1 + exp_series(Z8, "z", 1) + exp_series(Z8, "z", -1)
    assert (e.constant_term, e.coefficient(z=2), e.coefficient(z=4)) == (3, 1, Fraction(1, 12))


def test_epsilon0_examples():
    inv = inv_varsigma(L8, "z")
    assert epsilon0_eigenvalue(P([]), L8) == inv
    assert epsilon0_eigenvalue(P([1]), L8) == varsigma(L8, "z") + inv
    want = exp_series(L8, "z", Fraction(3, 2)) - exp_series(L8, "z", Fraction(-1, 2)) + inv
    assert epsilon0_eigenvalue(P([2]), L8) == want
    with pytest.raises(WindowError):
        epsilon0_eigenvalue(P([1]), Z8)


def test_master_examples():
    assert master_eigenvalue(P([]), Z8).is_zero()
    assert master_eigenvalue(P([1]), Z8) == Z8.one()
    assert master_eigenvalue(P([2, 1]), Z8) == chern_eigenvalue(P([2, 1]), Z8)


@pytest.mark.parametrize("lam", partitions_up_to(7))
def test_master_equals_chern(lam):
    assert master_eigenvalue(lam, Z8) == chern_eigenvalue(lam, Z8)


def _twist_tail(m, ring):
    """``(e^{mz}-1)/varsigma^2 - m/z`` from the long-division oracle."""
    return Series(ring, {(k,): c for k, c in oracles.twist_laurent(m, 8).items() if k >= 0})


def test_twisted_examples():
    for lam in partitions_up_to(4):
        assert twisted_eigenvalue(lam, 0, Z8) == chern_eigenvalue(lam, Z8)
    tail = _twist_tail(1, Z8)
    assert twisted_eigenvalue(P([]), 1, Z8) == tail
    assert tail.constant_term == Fraction(1, 2) and tail.coefficient(z=1) == Fraction(1, 12)
    assert twisted_eigenvalue(P([1]), 1, Z8) == exp_series(Z8, "z", 1) + tail


@pytest.mark.parametrize("m", range(-5, 6))
def test_twist_constants_match_long_division(m):
    residue, coeffs = c_constant_coeffs(m, 6)
    want = oracles.twist_laurent(m, 6)
    assert residue == m == want.get(-1, 0)
    assert all(coeffs.get(k, 0) == want.get(k, 0) for k in range(7))


def test_apply_diagonal_examples():
    chern = DiagonalOperator("chern", "z")
    assert apply_diagonal([chern], FockVector.basis_vector(P([1])), Z8).terms == {P([1]): Z8.one()}
    eps = DiagonalOperator("epsilon0", "z")
    assert apply_diagonal([eps], FockVector.vacuum(), L8).terms == {P([]): inv_varsigma(L8, "z")}
    got = basis_change(apply_diagonal([chern], FockVector.basis_vector(P([2])), Z8), FIXED_POINT)
    half = Fraction(1, 2)
    assert got.terms == {P([2]): (1 + exp_series(Z8, "z", 1)).scale(half),
                         P([1, 1]): (1 + exp_series(Z8, "z", -1)).scale(-half)}
    with pytest.raises(DomainError):
        DiagonalOperator("bogus", "z")


def test_commutator_examples():
    ring = SeriesRing.of(("z", 1, 8))
    inv = inv_varsigma(ring, "z")
    assert epsilon_product_vev(P([]), P([]), [0], ["z"], ring) == inv
    assert epsilon_product_vev(P([1]), P([1]), [0], ["z"], ring) == varsigma(ring, "z") + inv
    want = (varsigma(ring, "z", 2) * varsigma(ring, "z")).scale(Fraction(1, 4))
    assert epsilon_product_vev(P([2]), P([1, 1]), [0], ["z"], ring) == want
