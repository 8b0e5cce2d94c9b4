"""N-point functions F and G between Heisenberg basis states.

``F(lam, mu; z_1..z_N) = <p_{-lam}, eps0(z_1)...eps0(z_N) p_{-mu}>`` and
``G`` is the same with the master operator in place of ``eps0``.  The
diagonal route expands both states in the fixed-point basis:

    F = sum_nu chi^nu(lam) chi^nu(mu) / (z_lam z_mu) * prod_j eps0(nu, z_j)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import lcm
from typing import Sequence

import numpy as np

from .errors import DomainError, WindowError
from .operators import (_master_univariate, epsilon0_coeffs, epsilon_product_vev, fit)
from .partitions import (Partition, char_table, combine, contains, subpartition, subtract,
                         z_factor)
from .series import Series, SeriesRing
from .special import embed, inv_varsigma, varsigma, varsigma_partition

METHODS = ("diagonal", "commutator", "closed_form")


@dataclass(frozen=True)
class CorrelatorRequest:
    lam: Partition
    mu: Partition
    zs: tuple[str, ...]
    ring: SeriesRing
    method: str = "diagonal"

    def __post_init__(self):
        object.__setattr__(self, "lam", Partition(self.lam))
        object.__setattr__(self, "mu", Partition(self.mu))
        object.__setattr__(self, "zs", tuple(self.zs))
        if self.method not in METHODS:
            raise DomainError(f"unknown method {self.method!r}")
        if self.method == "closed_form" and len(self.zs) > 1:
            raise DomainError("closed forms exist only for N <= 1")
        _check_sizes(self.lam, self.mu)


def _check_sizes(lam: Partition, mu: Partition) -> None:
    if lam.size != mu.size:
        raise DomainError(f"size mismatch: |{list(lam)}| != |{list(mu)}|")


def _weights(lam: Partition, mu: Partition) -> list[tuple[Partition, Fraction]]:
    table = char_table(lam.size)
    pref = Fraction(1, z_factor(lam) * z_factor(mu))
    out = []
    for nu in table.partitions:
        w = table.table[nu, lam] * table.table[nu, mu]
        if w:
            out.append((nu, pref * w))
    return out


def _diagonal_sum(lam, mu, zs, ring, coeff_fn) -> Series:
    """Sum of weighted outer products, done on integer tensors over a common denominator."""
    weights = _weights(lam, mu)
    if not weights:
        return ring.zero()
    spans = []
    for z in zs:
        spec = ring.spec(z)
        spans.append((spec.max_pole, spec.max_pole + spec.max_degree + 1))
    tables = [[coeff_fn(nu, z) for z in zs] for nu, _ in weights]
    dens = []
    for j in range(len(zs)):
        d = 1
        for row in tables:
            for c in row[j].values():
                d = lcm(d, c.denominator)
        dens.append(d)
    wden = 1
    for _, w in weights:
        wden = lcm(wden, w.denominator)
    total = None
    for (nu, w), row in zip(weights, tables):
        t = np.array(int(w * wden), dtype=object)
        for j, coeffs in enumerate(row):
            pole, width = spans[j]
            vec = np.zeros(width, dtype=object)
            for k, c in coeffs.items():
                vec[k + pole] = c.numerator * (dens[j] // c.denominator)
            t = np.multiply.outer(t, vec)
        total = t if total is None else total + t
    den = wden
    for d in dens:
        den *= d
    idx = [ring.index(z) for z in zs]
    k = len(ring.vars)
    out = {}
    for pos in zip(*np.nonzero(total != 0)):
        e = [0] * k
        for i, p, (pole, _) in zip(idx, pos, spans):
            e[i] = int(p) - pole
        e = tuple(e)
        if ring.admits(e):
            out[e] = Fraction(int(total[pos]), den)
    return Series(ring, out)


def _windowed(coeffs: dict[int, Fraction], ring: SeriesRing, z: str) -> dict[int, Fraction]:
    spec = ring.spec(z)
    return {k: c for k, c in coeffs.items() if -spec.max_pole <= k <= spec.max_degree}


def f_bullet(lam, mu, zs: Sequence[str], ring: SeriesRing, method: str = "diagonal") -> Series:
    """Disconnected N-point series ``<p_{-lam}, eps0(z_1)...eps0(z_N) p_{-mu}>``."""
    req = CorrelatorRequest(lam, mu, tuple(zs), ring, method)
    for z in req.zs:
        if ring.spec(z).max_pole < 1:
            raise WindowError(f"F needs max_pole >= 1 in {z}")
    if not req.zs:
        return ring.const(Fraction(1, z_factor(req.lam)) if req.lam == req.mu else 0)
    if method == "commutator":
        return epsilon_product_vev(req.lam, req.mu, [0] * len(req.zs), req.zs, ring)
    if method == "closed_form":
        return one_point_closed_form(req.lam, req.mu, ring, req.zs[0])
    return _diagonal_sum(req.lam, req.mu, req.zs, ring,
                         lambda nu, z: _windowed(epsilon0_coeffs(nu, ring.spec(z).max_degree), ring, z))


def one_point_closed_form(lam, mu, ring: SeriesRing, var: str = "z") -> Series:
    """Sum over index subsets ``U`` with ``lam`` contained in ``lam_U + mu``."""
    lam, mu = Partition(lam), Partition(mu)
    _check_sizes(lam, mu)
    degree = ring.spec(var).max_degree
    work = SeriesRing.of((var, 1, degree + 1))
    inv = inv_varsigma(work, var)
    total = work.zero()
    for r in range(len(lam) + 1):
        for U in combinations(range(1, len(lam) + 1), r):
            lam_u = subpartition(lam, U)
            merged = combine(lam_u, mu)
            if not contains(lam, merged):
                continue
            rest = subtract(merged, lam)
            num = varsigma_partition(lam_u, work, var) * varsigma_partition(rest, work, var)
            total = total + num.scale(Fraction(1, z_factor(lam) * z_factor(rest)))
    return fit(total * inv, ring)


def g_npoint(lam, mu, zs: Sequence[str], ring: SeriesRing, method: str = "direct") -> Series:
    """``<p_{-lam}, H(z_1)...H(z_N) p_{-mu}>``; ``method`` is direct or inclusion_exclusion."""
    lam, mu = Partition(lam), Partition(mu)
    _check_sizes(lam, mu)
    zs = tuple(zs)
    if method == "direct":
        if not zs:
            return ring.const(Fraction(1, z_factor(lam)) if lam == mu else 0)
        return _diagonal_sum(lam, mu, zs, ring, lambda nu, z: _master_coeffs(nu, z, ring))
    if method == "inclusion_exclusion":
        return _g_inclusion_exclusion(lam, mu, zs, ring)
    raise DomainError(f"unknown method {method!r}")


def _master_coeffs(nu: Partition, z: str, ring: SeriesRing) -> dict[int, Fraction]:
    s = _master_univariate(nu, z, ring.spec(z).max_degree)
    return _windowed({e[0]: c for e, c in s.terms.items()}, ring, z)


def _g_inclusion_exclusion(lam, mu, zs, ring) -> Series:
    n = len(zs)
    if n == 0:
        return g_npoint(lam, mu, zs, ring)
    work = SeriesRing.of(*[(z, 2, ring.spec(z).max_degree + 2) for z in zs])
    inner = SeriesRing.of(*[(z, 1, ring.spec(z).max_degree + 2) for z in zs])
    inv = {z: inv_varsigma(work, z) for z in zs}
    total = work.zero()
    for r in range(n + 1):
        for U in combinations(zs, r):
            term = f_bullet(lam, mu, U, inner).restrict(work)
            for z in zs:
                if z not in U:
                    term = term * inv[z]
            total = total + (term if (n - r) % 2 == 0 else -term)
    for z in zs:
        total = total * inv[z]
    return fit(total, ring)


def g_one_point_theorem(lam, mu, ring: SeriesRing, var: str = "z") -> Series:
    """Closed form ``(1/(z_lam varsigma^2)) (sum_U ... - delta)`` for the 1-point G."""
    lam, mu = Partition(lam), Partition(mu)
    _check_sizes(lam, mu)
    degree = ring.spec(var).max_degree
    work = SeriesRing.of((var, 2, degree + 2))
    inv = inv_varsigma(work, var)
    inner = work.zero()
    for r in range(len(lam) + 1):
        for U in combinations(range(1, len(lam) + 1), r):
            lam_u = subpartition(lam, U)
            merged = combine(lam_u, mu)
            if not contains(lam, merged):
                continue
            rest = subtract(merged, lam)
            num = varsigma_partition(lam_u, work, var) * varsigma_partition(rest, work, var)
            inner = inner + num.scale(Fraction(1, z_factor(rest)))
    if lam == mu:
        inner = inner - 1
    return fit((inner * inv * inv).scale(Fraction(1, z_factor(lam))), ring)


def g_from_relation(lam, mu, ring: SeriesRing, var: str = "z") -> Series:
    """``G(z) = (1/varsigma)(F(z) - F()/varsigma)``."""
    lam, mu = Partition(lam), Partition(mu)
    degree = ring.spec(var).max_degree
    work = SeriesRing.of((var, 2, degree + 1))
    inv = inv_varsigma(work, var)
    f1 = f_bullet(lam, mu, [var], SeriesRing.of((var, 1, degree + 1))).restrict(work)
    f0 = Fraction(1, z_factor(lam)) if lam == mu else 0
    return fit(inv * (f1 - inv * f0), ring)


def coefficient_table(series: Series) -> list[dict]:
    """Flat ``{"k": exponents, "value": "p/q"}`` rows in exponent order."""
    from .series import format_fraction
    return [{"k": list(e), "value": format_fraction(c)} for e, c in series.items()]
