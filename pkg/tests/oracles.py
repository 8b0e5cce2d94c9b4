"""Independent reference computations on plain lists of Fractions.

Nothing here imports the package: these are the yardsticks the tests hold
the library against.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product
from math import factorial


def exp_coeffs(c, order):
    c = Fraction(c)
    return [c ** n / factorial(n) for n in range(order + 1)]


def mul(a, b, order):
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if x:
            for j, y in enumerate(b[: order + 1 - i]):
                out[i + j] += x * y
    return out


def reciprocal(a, order):
    """Long division ``1 / a`` for a power series with ``a[0] != 0``."""
    out = [Fraction(0)] * (order + 1)
    for n in range(order + 1):
        acc = Fraction(int(n == 0))
        for k in range(1, n + 1):
            if k < len(a):
                acc -= a[k] * out[n - k]
        out[n] = acc / a[0]
    return out


def varsigma_squared(order):
    """Factorial-sum expansion of ``(e^{z/2} - e^{-z/2})^2``."""
    half = [(Fraction(1, 2) ** a - Fraction(-1, 2) ** a) / factorial(a) for a in range(order + 1)]
    return [sum(half[a] * half[n - a] for a in range(n + 1)) for n in range(order + 1)]


def varsigma_over_z(order):
    """``varsigma(z) / z`` as coefficients: ``(1/2^{2j}) / (2j+1)!`` on even powers."""
    return [Fraction(1, 2 ** n * factorial(n + 1)) if n % 2 == 0 else Fraction(0)
            for n in range(order + 1)]


def inverse_varsigma(order):
    """Coefficients of ``1/varsigma`` as ``{power: value}``, powers ``-1 .. order``."""
    r = reciprocal(varsigma_over_z(order + 1), order + 1)
    return {n - 1: c for n, c in enumerate(r) if c}


def twist_laurent(m, order):
    """``(e^{mz}-1)/varsigma^2`` as ``{power: value}``, powers ``-1 .. order``."""
    num = exp_coeffs(m, order + 2)[1:]  # (e^{mz}-1)/z
    den = reciprocal(mul(varsigma_over_z(order + 2), varsigma_over_z(order + 2), order + 2), order + 2)
    q = mul(num, den, order + 1)  # times z^{-1}
    return {n - 1: c for n, c in enumerate(q) if c}


# -- characters by counting tabloids ---------------------------------------------

def _perm_of_type(mu):
    perm, start = [], 0
    for part in mu:
        cycle = list(range(start, start + part))
        perm.extend(cycle[1:] + cycle[:1])
        start += part
    return perm


def tabloid_character(rows, mu):
    """Fixed tabloids of row sizes ``rows`` under a permutation of cycle type ``mu``."""
    n = sum(mu)
    perm = _perm_of_type(mu)
    count = 0
    for labels in product(range(len(rows)), repeat=n):
        if any(labels.count(r) != size for r, size in enumerate(rows)):
            continue
        if all(labels[perm[i]] == labels[i] for i in range(n)):
            count += 1
    return count


def _sign(w):
    s, seen = 1, set()
    for i in range(len(w)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = w[j]
            length += 1
        s *= (-1) ** (length - 1)
    return s


def brute_character(lam, mu):
    """``chi^lam(mu)`` as an alternating sum of permutation characters."""
    lam = list(lam)
    if not lam:
        return 1
    total = 0
    for w in permutations(range(len(lam))):
        rows = [lam[i] - i + w[i] for i in range(len(lam))]
        if any(r < 0 for r in rows):
            continue
        total += _sign(w) * tabloid_character([r for r in rows if r], mu)
    return total
