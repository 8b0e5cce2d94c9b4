from fractions import Fraction

import pytest

from fockchern.correlators import (coefficient_table, f_bullet, g_from_relation, g_npoint,
                                   g_one_point_theorem, one_point_closed_form)
from fockchern.errors import DomainError, WindowError
from fockchern.partitions import Partition, partitions_of
from fockchern.series import SeriesRing
from fockchern.special import inv_varsigma, varsigma
from fockchern.verify import _swap

P = Partition
L8 = SeriesRing.of(("z", 1, 8))
Z8 = SeriesRing.of(("z", 0, 8))
# wider windows so products of truncated varsigmas stay exact through z^8
W = SeriesRing.of(("z", 2, 10))


def _fit(s, ring):
    return s.restrict(ring)


def test_zero_points():
    assert f_bullet(P([2, 1]), P([2, 1]), [], L8) == L8.const(Fraction(1, 2))
    assert g_npoint(P([2]), P([1, 1]), [], Z8).is_zero()


def test_f_examples():
    inv = inv_varsigma(W, "z")
    assert f_bullet(P([1]), P([1]), ["z"], L8) == _fit(varsigma(W, "z") + inv, L8)
    want = (varsigma(W, "z", 2) * varsigma(W, "z")).scale(Fraction(1, 4))
    assert f_bullet(P([2]), P([1, 1]), ["z"], L8) == _fit(want, L8)
    assert f_bullet(P([2]), P([1, 1]), ["z"], L8, "commutator") == _fit(want, L8)


def test_closed_form_examples():
    inv = inv_varsigma(W, "z")
    assert one_point_closed_form(P([1]), P([1]), L8) == _fit(inv + varsigma(W, "z"), L8)
    # weight 1/(z_lam z_rest) = 1/4 on the U={1} term
    want = inv.scale(Fraction(1, 2)) + (varsigma(W, "z", 2) ** 2 * inv).scale(Fraction(1, 4))
    assert one_point_closed_form(P([2]), P([2]), L8) == _fit(want, L8)


def test_g_examples():
    inv = inv_varsigma(W, "z")
    assert g_npoint(P([1]), P([1]), ["z"], Z8) == Z8.one()
    same = (varsigma(W, "z", 2) ** 2 * inv * inv).scale(Fraction(1, 4))
    assert g_npoint(P([2]), P([2]), ["z"], Z8) == _fit(same, Z8)
    assert g_one_point_theorem(P([2]), P([2]), Z8) == _fit(same, Z8)
    # rest = (1,1) contributes varsigma(z)^2, leaving varsigma(2z)/4
    cross = varsigma(W, "z", 2).scale(Fraction(1, 4))
    assert g_one_point_theorem(P([2]), P([1, 1]), Z8) == _fit(cross, Z8)
    assert g_npoint(P([2]), P([1, 1]), ["z"], Z8) == _fit(cross, Z8)


@pytest.mark.parametrize("n", range(0, 6))
def test_routes_agree(n):
    for a in partitions_of(n):
        for b in partitions_of(n):
            d = f_bullet(a, b, ["z"], L8)
            assert one_point_closed_form(a, b, L8) == d
            assert f_bullet(a, b, ["z"], L8, "commutator") == d
            g = g_npoint(a, b, ["z"], Z8)
            assert g_one_point_theorem(a, b, Z8) == g
            assert g_from_relation(a, b, Z8) == g


@pytest.mark.parametrize("n", range(0, 5))
def test_two_point_properties(n):
    r = SeriesRing.of(("z1", 1, 4), ("z2", 1, 4))
    swapped = SeriesRing.of(("z2", 1, 4), ("z1", 1, 4))
    g_ring = SeriesRing.of(("z1", 0, 4), ("z2", 0, 4))
    for a in partitions_of(n):
        for b in partitions_of(n):
            f = f_bullet(a, b, ["z1", "z2"], r)
            assert f == f_bullet(b, a, ["z1", "z2"], r)
            assert f == _swap(f_bullet(a, b, ["z2", "z1"], swapped).restrict(r), r)
            assert f == f_bullet(a, b, ["z1", "z2"], r, "commutator")
            g = g_npoint(a, b, ["z1", "z2"], g_ring)
            assert g.is_pole_free()
            assert g == g_npoint(a, b, ["z1", "z2"], g_ring, "inclusion_exclusion")


def test_errors():
    with pytest.raises(DomainError):
        f_bullet(P([2]), P([1]), ["z"], L8)
    with pytest.raises(WindowError):
        f_bullet(P([1]), P([1]), ["z"], Z8)
    with pytest.raises(DomainError):
        f_bullet(P([1]), P([1]), ["z1", "z2"], SeriesRing.of(("z1", 1, 2), ("z2", 1, 2)), "closed_form")


def test_coefficient_table():
    rows = coefficient_table(g_npoint(P([1]), P([1]), ["z"], Z8))
    assert rows == [{"k": [0], "value": "1/1"}]
