"""Tau functions of charge m, the lowest 2-Toda equation, and the reduced tau.

In the fixed-point basis the vacuum pairing factorizes:

    tau(m) = sum_nu S_nu(t) S_nu(s) exp(sum_k x_k e_k^{(m)}(nu)),
    S_nu(t) = sum_lam chi^nu(lam) t_lam / z_lam,

where ``e_k^{(m)}(nu)`` is the ``z**k`` coefficient of the charge-m twisted
eigenvalue.  Truncation: t-weight ``sum k*deg(t_k) <= n_max``, the same for
s, and total x-degree ``<= D``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import DomainError, WindowError
from .operators import _twisted_univariate, c_constant_coeffs, chern_coeffs
from .partitions import Partition, char_table, partitions_of, z_factor
from .series import (Cap, Series, SeriesRing, partial_derivative, series_log)
from .special import exp_series


def c_constants(m: int, k_max: int) -> list[Fraction]:
    """``c_k^{(m)}`` for ``k <= k_max``: ``(e^{mz}-1)/varsigma^2 = m/z + sum c_k z^k/k!``."""
    if k_max < 0:
        raise DomainError("k_max must be nonnegative")
    residue, coeffs = c_constant_coeffs(int(m), k_max)
    if residue != m:
        raise WindowError(f"residue {residue} != {m}")  # pragma: no cover
    return [coeffs[k] * factorial(k) for k in range(k_max + 1)]


@dataclass(frozen=True)
class TauRequest:
    m: int = 0
    K: int = 3
    total_degree: int = 4
    n_max: int = 4

    def __post_init__(self):
        if self.K < 1 or self.total_degree < 0 or self.n_max < 0:
            raise WindowError("K >= 1, total_degree >= 0 and n_max >= 0 are required")

    @property
    def ring(self) -> SeriesRing:
        return tau_ring(self.K, self.total_degree, self.n_max)


@lru_cache(maxsize=None)
def tau_ring(K: int, total_degree: int, n_max: int) -> SeriesRing:
    specs = ([(f"t{k}", 0, n_max // k) for k in range(1, K + 1)]
             + [(f"s{k}", 0, n_max // k) for k in range(1, K + 1)]
             + [(f"x{k}", 0, total_degree) for k in range(K + 1)])
    caps = (Cap.of({f"t{k}": k for k in range(1, K + 1)}, n_max),
            Cap.of({f"s{k}": k for k in range(1, K + 1)}, n_max),
            Cap.of({f"x{k}": 1 for k in range(K + 1)}, total_degree))
    return SeriesRing.of(*specs, caps=caps)


def schur_in(prefix: str, nu: Partition, K: int, ring: SeriesRing) -> Series:
    """``sum_lam chi^nu(lam) p_lam / z_lam`` with ``p_k -> prefix+k``, parts ``<= K``."""
    table = char_table(nu.size)
    terms = {}
    for lam in partitions_of(nu.size, K):
        chi = table.table[nu, lam]
        if not chi:
            continue
        powers = {}
        for part in lam:
            powers[f"{prefix}{part}"] = powers.get(f"{prefix}{part}", 0) + 1
        mono = ring.monomial(powers, Fraction(chi, z_factor(lam)))
        for e, c in mono.terms.items():
            terms[e] = terms.get(e, 0) + c
    return Series(ring, terms)


def twisted_coefficients(nu: Partition, m: int, K: int) -> list[Fraction]:
    """``z**k`` coefficients, ``k <= K``, of the charge-m twisted eigenvalue."""
    s = _twisted_univariate(Partition(nu), int(m), "z", K)
    return [s.coefficient(z=k) for k in range(K + 1)]


def _exp_x(coeffs: list[Fraction], ring: SeriesRing) -> Series:
    out = ring.one()
    for k, c in enumerate(coeffs):
        if c:
            out = out * exp_series(ring, f"x{k}", c)
    return out


def tau(request: TauRequest) -> Series:
    ring = request.ring
    total = ring.zero()
    for n in range(request.n_max + 1):
        for nu in partitions_of(n):
            st = schur_in("t", nu, request.K, ring)
            if st.is_zero():
                continue
            ss = schur_in("s", nu, request.K, ring)
            total = total + st * ss * _exp_x(twisted_coefficients(nu, request.m, request.K), ring)
    return total


@dataclass(frozen=True)
class TodaReport:
    residual: Series
    max_nonzero_degree: int | None
    passed: bool


def toda_residual(request: TauRequest) -> TodaReport:
    """``tau(m)^2 d_t1 d_s1 ln tau(m) - tau(m+1) tau(m-1)`` on the exact window."""
    if request.total_degree < 2 and request.n_max < 2:
        raise WindowError("the residual needs total_degree >= 2 or n_max >= 2")
    mid = tau(request)
    up = tau(TauRequest(request.m + 1, request.K, request.total_degree, request.n_max))
    down = tau(TauRequest(request.m - 1, request.K, request.total_degree, request.n_max))
    if mid.constant_term != 1:
        raise DomainError("tau must have constant term 1")
    d2 = partial_derivative(partial_derivative(series_log(mid), "t1"), "s1")
    ring = d2.ring
    m2 = mid.restrict(ring)
    residual = m2 * m2 * d2 - up.restrict(ring) * down.restrict(ring)
    deg = residual.total_degree() if not residual.is_zero() else None
    return TodaReport(residual, deg, residual.is_zero())


# -- reduced tau -------------------------------------------------------------------

def reduced_ring(w_order: int, x_order: int) -> SeriesRing:
    return SeriesRing.of(("w", 0, w_order), ("x1", 0, x_order))


def reduced_tau(w_order: int, x_order: int, n_max: int | None = None) -> Series:
    """``sum_n w^n <p_{-(1^n)}, exp(x1 G_1) p_{-(1^n)}>`` with ``w = e^u``."""
    ring = reduced_ring(w_order, x_order)
    n_max = w_order if n_max is None else n_max
    if n_max < w_order:
        raise WindowError(f"n_max={n_max} is below the w window {w_order}")
    total = ring.zero()
    for n in range(w_order + 1):
        ones = Partition([1] * n)
        table = char_table(n)
        for nu in table.partitions:
            dim = table.table[nu, ones]
            weight = Fraction(dim, factorial(n)) ** 2
            g1 = chern_coeffs(nu, 1).get(1, Fraction(0))
            total = total + (exp_series(ring, "x1", g1) * ring.monomial({"w": n})).scale(weight)
    return total


def shift_w(f: Series, sign: int) -> Series:
    """Substitute ``w -> w e^{sign x1}``."""
    ring = f.ring
    wi = ring.index("w")
    out = ring.zero()
    by_power: dict[int, dict] = {}
    for e, c in f.terms.items():
        by_power.setdefault(e[wi], {})[e] = c
    for n, terms in by_power.items():
        out = out + Series(ring, terms) * exp_series(ring, "x1", sign * n)
    return out


def w_derivative(f: Series) -> Series:
    """``w d/dw`` (keeps the ring)."""
    wi = f.ring.index("w")
    return Series(f.ring, {e: c * e[wi] for e, c in f.terms.items()})


def reduced_residual(w_order: int, x_order: int) -> Series:
    """``tau^2 (w d/dw)^2 ln tau - w tau(w e^{x1}) tau(w e^{-x1})``."""
    t = reduced_tau(w_order, x_order)
    ring = t.ring
    lhs = t * t * w_derivative(w_derivative(series_log(t)))
    rhs = ring.gen("w") * shift_w(t, 1) * shift_w(t, -1)
    return lhs - rhs
