"""Univariate building blocks: e^{cz}, varsigma(az) = e^{az/2} - e^{-az/2}, 1/varsigma(z).

Coefficients are computed once per degree as plain lists of Fractions and
embedded into whatever ring the caller works in.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Mapping

from .errors import WindowError
from .series import Series, SeriesRing, as_fraction


def embed(ring: SeriesRing, var: str, coeffs: Mapping[int, Fraction]) -> Series:
    """Series ``sum_k coeffs[k] var**k`` in ``ring`` (out-of-window powers dropped)."""
    i = ring.index(var)
    spec = ring.vars[i]
    base = [0] * len(ring.vars)
    terms = {}
    for k, c in coeffs.items():
        if c and -spec.max_pole <= k <= spec.max_degree:
            e = list(base)
            e[i] = k
            if ring.admits(tuple(e)):
                terms[tuple(e)] = c
    return Series._make(ring, terms)


@lru_cache(maxsize=None)
def exp_coeffs(c: Fraction, degree: int) -> tuple[Fraction, ...]:
    c = as_fraction(c)
    return tuple(c ** k / factorial(k) for k in range(degree + 1))


@lru_cache(maxsize=None)
def varsigma_coeffs(a: Fraction, degree: int) -> dict[int, Fraction]:
    """Coefficients of varsigma(a z) through ``z**degree``."""
    a = as_fraction(a)
    return {k: 2 * (a / 2) ** k / factorial(k) for k in range(1, degree + 1, 2)}


@lru_cache(maxsize=None)
def inv_varsigma_coeffs(degree: int) -> dict[int, Fraction]:
    """Coefficients of 1/varsigma(z) for powers ``-1 .. degree``."""
    n = degree + 2
    # varsigma(z)/z = sum b_j z^j, invert as a power series
    b = [Fraction(0)] * n
    for j in range(0, n, 2):
        b[j] = 2 * Fraction(1, 2) ** (j + 1) / factorial(j + 1)
    inv = [Fraction(0)] * n
    inv[0] = 1 / b[0]
    for k in range(1, n):
        inv[k] = -sum(b[j] * inv[k - j] for j in range(1, k + 1)) / b[0]
    return {k - 1: c for k, c in enumerate(inv) if c}


@lru_cache(maxsize=None)
def varsigma_ratio_coeffs(a: int, degree: int) -> dict[int, Fraction]:
    """varsigma(a z)/varsigma(z) for a nonzero integer ``a``: a finite sum of exponentials."""
    sign = 1 if a > 0 else -1
    a = abs(a)
    out = [Fraction(0)] * (degree + 1)
    for i in range(a):
        for k, c in enumerate(exp_coeffs(Fraction(a - 1, 2) - i, degree)):
            out[k] += c
    return {k: sign * c for k, c in enumerate(out) if c}


def exp_series(ring: SeriesRing, var: str, c) -> Series:
    spec = ring.spec(var)
    return embed(ring, var, dict(enumerate(exp_coeffs(as_fraction(c), spec.max_degree))))


def varsigma(ring: SeriesRing, var: str, a=1) -> Series:
    return embed(ring, var, varsigma_coeffs(as_fraction(a), ring.spec(var).max_degree))


def inv_varsigma(ring: SeriesRing, var: str) -> Series:
    spec = ring.spec(var)
    if spec.max_pole < 1:
        raise WindowError(f"1/varsigma({var}) needs max_pole >= 1 in {var}")
    return embed(ring, var, inv_varsigma_coeffs(spec.max_degree))


def varsigma_partition(parts, ring: SeriesRing, var: str) -> Series:
    """``prod_i varsigma(parts[i] * var)``; the empty product is 1."""
    out = ring.one()
    for p in parts:
        out = out * varsigma(ring, var, p)
    return out


def exp_combo(ring: SeriesRing, combo: Mapping[str, Fraction]) -> Series:
    """``exp(sum_v combo[v] * v)`` as a product of univariate exponentials."""
    out = ring.one()
    for v, c in combo.items():
        if c:
            out = out * exp_series(ring, v, c)
    return out


def varsigma_combo(ring: SeriesRing, combo: Mapping[str, int]) -> Series:
    """varsigma evaluated at the linear form ``sum_v combo[v] * v``."""
    live = {v: c for v, c in combo.items() if c}
    if len(live) == 1:
        (v, c), = live.items()
        return varsigma(ring, v, c)
    half = {v: Fraction(c, 2) for v, c in live.items()}
    return exp_combo(ring, half) - exp_combo(ring, {v: -c for v, c in half.items()})
