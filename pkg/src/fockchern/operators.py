"""Diagonal operators on the fixed-point basis and the epsilon commutator calculus.

Eigenvalues on ``[lam]`` (``varsigma(z) = e^{z/2} - e^{-z/2}``):

* chern:    ``sum_box e^{z c_box}``
* epsilon0: ``sum_{i<=len} (e^{z(lam_i-i+1/2)} - e^{z(-i+1/2)}) + 1/varsigma(z)``
* master:   ``(1/varsigma)(epsilon0 - 1/varsigma)``, equal to chern
* twisted:  ``e^{mz} master + (e^{mz}-1)/varsigma^2`` with its ``m/z`` pole removed

Each is computed in a private univariate working ring and then placed into
the caller's ring, so callers never size intermediate pole windows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Sequence

from .errors import DomainError, StructuralError, WindowError
from .fock import FIXED_POINT, FockVector, basis_change
from .partitions import Partition, z_factor
from .series import Series, SeriesRing
from .special import (embed, exp_coeffs, exp_series, inv_varsigma, inv_varsigma_coeffs,
                      varsigma_combo, varsigma_ratio_coeffs)

KINDS = ("chern", "epsilon0", "master", "chern_twisted")


def fit(series: Series, ring: SeriesRing) -> Series:
    """Restrict to ``ring``; a pole that the window cannot hold is an error, not a truncation.

    Terms outside the window for other reasons (degree or cap) are dropped silently:
    they lie beyond the exact range of the computation.
    """
    src = series.ring.names
    pos = [ring.index(n) if n in ring else None for n in src]
    lo, hi = ring.lo, ring.hi
    for e in series.terms:
        f = [0] * len(ring.vars)
        for x, p in zip(e, pos):
            if p is not None:
                f[p] = x
        bad = [ring.names[i] for i, x in enumerate(f) if x < lo[i]]
        if not bad or any(x > hi[i] for i, x in enumerate(f)):
            continue
        if all(sum(w * f[ring.index(k)] for k, w in cap.weights) <= cap.limit for cap in ring.caps):
            name = bad[0]
            raise WindowError(f"result has a pole of order {-f[ring.index(name)]} in {name}; "
                              f"window allows {ring.spec(name).max_pole}")
    return series.restrict(ring)


def _univariate(var: str, pole: int, degree: int) -> SeriesRing:
    return SeriesRing.of((var, pole, degree))


# -- eigenvalue coefficient tables --------------------------------------------

@lru_cache(maxsize=None)
def chern_coeffs(lam: Partition, degree: int) -> dict[int, Fraction]:
    cs = [j - i for i in range(len(lam)) for j in range(lam[i])]
    out = {}
    for k in range(degree + 1):
        c = Fraction(sum(x ** k for x in cs), factorial(k))
        if c:
            out[k] = c
    return out


@lru_cache(maxsize=None)
def epsilon0_coeffs(lam: Partition, degree: int) -> dict[int, Fraction]:
    out = dict(inv_varsigma_coeffs(degree))
    for i, part in enumerate(lam, start=1):
        up = exp_coeffs(Fraction(2 * part - 2 * i + 1, 2), degree)
        down = exp_coeffs(Fraction(-2 * i + 1, 2), degree)
        for k in range(degree + 1):
            out[k] = out.get(k, 0) + up[k] - down[k]
    return {k: c for k, c in out.items() if c}


@lru_cache(maxsize=None)
def _master_univariate(lam: Partition, var: str, degree: int) -> Series:
    work = _univariate(var, 2, degree + 1)
    inv = inv_varsigma(work, var)
    eps = embed(work, var, epsilon0_coeffs(lam, degree + 1))
    out = inv * (eps - inv)
    if not out.is_pole_free():
        raise WindowError("master eigenvalue kept a pole")  # pragma: no cover
    return out


@lru_cache(maxsize=None)
def twist_series(m: int, var: str, degree: int) -> Series:
    """``(e^{mz}-1)/varsigma(z)^2`` as a Laurent series (pole order 1)."""
    work = _univariate(var, 2, degree + 2)
    inv = inv_varsigma(work, var)
    return fit((exp_series(work, var, m) - 1) * inv * inv, _univariate(var, 1, degree))


@lru_cache(maxsize=None)
def _twisted_univariate(lam: Partition, m: int, var: str, degree: int) -> Series:
    work = _univariate(var, 2, degree + 2)
    inv = inv_varsigma(work, var)
    eps = embed(work, var, epsilon0_coeffs(lam, degree + 2))
    em = exp_series(work, var, m)
    full = em * inv * (eps - inv) + (em - 1) * inv * inv
    residue = full.coefficient({var: -1})
    if residue != m:
        raise WindowError(f"twisted eigenvalue residue {residue} != {m}")  # pragma: no cover
    out = full - work.monomial({var: -1}, m)
    return out.restrict(_univariate(var, 0, degree))


# -- public eigenvalues ---------------------------------------------------------

def chern_eigenvalue(lam, ring: SeriesRing, var: str = "z") -> Series:
    lam = Partition(lam)
    return embed(ring, var, chern_coeffs(lam, ring.spec(var).max_degree))


def epsilon0_eigenvalue(lam, ring: SeriesRing, var: str = "z") -> Series:
    lam = Partition(lam)
    spec = ring.spec(var)
    if spec.max_pole < 1:
        raise WindowError(f"epsilon0 eigenvalue needs max_pole >= 1 in {var}")
    return embed(ring, var, epsilon0_coeffs(lam, spec.max_degree))


def master_eigenvalue(lam, ring: SeriesRing, var: str = "z") -> Series:
    lam = Partition(lam)
    return _master_univariate(lam, var, ring.spec(var).max_degree).restrict(ring)


def twisted_eigenvalue(lam, m: int, ring: SeriesRing, var: str = "z") -> Series:
    """Charge-``m`` eigenvalue of the twisted Chern operator, ``m/z`` pole removed."""
    lam = Partition(lam)
    return _twisted_univariate(lam, int(m), var, ring.spec(var).max_degree).restrict(ring)


def c_constant_coeffs(m: int, degree: int) -> tuple[Fraction, dict[int, Fraction]]:
    """Residue and Taylor coefficients of ``(e^{mz}-1)/varsigma^2``."""
    s = twist_series(m, "z", degree)
    return s.coefficient(z=-1), {k: s.coefficient(z=k) for k in range(degree + 1)}


# -- diagonal operators ---------------------------------------------------------

@dataclass(frozen=True)
class DiagonalOperator:
    kind: str
    var: str = "z"
    m: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown operator kind {self.kind!r}")

    def eigenvalue(self, lam, ring: SeriesRing) -> Series:
        if self.kind == "chern":
            return chern_eigenvalue(lam, ring, self.var)
        if self.kind == "epsilon0":
            return epsilon0_eigenvalue(lam, ring, self.var)
        if self.kind == "master":
            return master_eigenvalue(lam, ring, self.var)
        return twisted_eigenvalue(lam, self.m, ring, self.var)


def eigenvalue_product(ops: Sequence[DiagonalOperator], lam, ring: SeriesRing) -> Series:
    """Product of eigenvalues; distinct variables multiply exactly in ``ring``."""
    names = [op.var for op in ops]
    if len(set(names)) != len(names):
        raise StructuralError("each diagonal factor needs its own variable")
    out = ring.one()
    for op in ops:
        out = out * op.eigenvalue(lam, ring)
    return out


def apply_diagonal(ops: Sequence[DiagonalOperator], v: FockVector, ring: SeriesRing) -> FockVector:
    fixed = basis_change(v, FIXED_POINT)
    out = {lam: eigenvalue_product(ops, lam, ring) * c for lam, c in fixed.terms.items()}
    return basis_change(FockVector(FIXED_POINT, out), v.basis)


# -- commutator route -----------------------------------------------------------
#
# Words are tuples of ("p", k) for the Heisenberg p_k and ("e", r, Z) for
# epsilon_r(Z), Z an integer vector over the z variables.  A vacuum
# expectation is a map from (numerators, denominators) to a rational, each
# entry a sorted tuple of Z-vectors standing for varsigma(Z . z).

def _index(op) -> int:
    return op[1]


def _canon(vec: tuple[int, ...]) -> tuple[tuple[int, ...], int]:
    for x in vec:
        if x:
            return (vec, 1) if x > 0 else (tuple(-y for y in vec), -1)
    return vec, 0


def _scale(result: dict, coef: Fraction, num=None, den=None) -> dict:
    out = {}
    for (nums, dens), c in result.items():
        if num is not None:
            nums = tuple(sorted(nums + (num,)))
        if den is not None:
            dens = tuple(sorted(dens + (den,)))
        out[nums, dens] = c * coef
    return out


def _accumulate(into: dict, part: dict) -> None:
    for k, c in part.items():
        v = into.get(k, 0) + c
        if v:
            into[k] = v
        else:
            into.pop(k, None)


def _commute(a, b):
    """``[a, b]`` for ``a`` of positive index: ``(scalar, numerator vector, new op)``."""
    if a[0] == "p" and b[0] == "p":
        return (Fraction(a[1]), None, None) if a[1] == -b[1] else None
    if a[0] == "p":
        vec = tuple(a[1] * x for x in b[2])
        return Fraction(1), vec, ("e", a[1] + b[1], b[2])
    if b[0] == "p":
        vec = tuple(-b[1] * x for x in a[2])
        return Fraction(1), vec, ("e", a[1] + b[1], a[2])
    vec = tuple(a[1] * w - b[1] * z for z, w in zip(a[2], b[2]))
    return Fraction(1), vec, ("e", a[1] + b[1], tuple(z + w for z, w in zip(a[2], b[2])))


@lru_cache(maxsize=None)
def _vev(word: tuple) -> tuple:
    if not word:
        return ((((), ()), Fraction(1)),)
    first, last = word[0], word[-1]
    if _index(first) < 0 or _index(last) > 0:
        return ()
    if first[0] == "e" and first[1] == 0:
        return tuple(_scale(dict(_vev(word[1:])), Fraction(1), den=first[2]).items())
    if last[0] == "e" and last[1] == 0:
        return tuple(_scale(dict(_vev(word[:-1])), Fraction(1), den=last[2]).items())
    out: dict = {}
    for j in range(1, len(word)):
        got = _commute(first, word[j])
        if got is None:
            continue
        scalar, vec, new = got
        sign = 1
        if vec is not None:
            vec, sign = _canon(vec)
            if not sign:
                continue
        rest = word[1:j] + ((new,) if new is not None else ()) + word[j + 1:]
        sub = dict(_vev(rest))
        if sub:
            _accumulate(out, _scale(sub, scalar * sign, num=vec))
    return tuple(out.items())


def epsilon_vev_symbolic(lam, mu, rs: Sequence[int], n_vars: int | None = None) -> dict:
    """Symbolic ``<p_{-lam}, eps_{r_1}(z_1) ... eps_{r_N}(z_N) p_{-mu}>``."""
    lam, mu = Partition(lam), Partition(mu)
    n = len(rs) if n_vars is None else n_vars
    units = [tuple(int(i == j) for i in range(n)) for j in range(len(rs))]
    word = (tuple(("p", k) for k in lam)
            + tuple(("e", r, u) for r, u in zip(rs, units))
            + tuple(("p", -k) for k in reversed(mu)))
    pref = Fraction(1, z_factor(lam) * z_factor(mu))
    return {k: c * pref for k, c in _vev(word)}


def _evaluate(symbolic: dict, zs: Sequence[str], ring: SeriesRing) -> Series:
    """Turn the symbolic varsigma products into a Series in ``ring``."""
    plans = []
    poles = {z: 0 for z in zs}
    for (nums, dens), c in symbolic.items():
        nums = list(nums)
        ratios, singles = [], []
        for d in dens:
            match = None
            for i, v in enumerate(nums):
                a = _multiple(v, d)
                if a:
                    match = (i, a)
                    break
            if match is not None:
                ratios.append((match[1], d))
                nums.pop(match[0])
            elif sum(1 for x in d if x) == 1 and max(d) == 1:
                singles.append(zs[d.index(1)])
            else:
                raise DomainError(f"unpaired composite denominator {d}")
        for z in singles:
            poles[z] = max(poles[z], singles.count(z))
        plans.append((c, nums, ratios, singles))
    work = SeriesRing.of(*[(z, poles[z], ring.spec(z).max_degree + poles[z]) for z in zs])
    total = work.zero()
    for c, nums, ratios, singles in plans:
        term = work.const(c)
        for v in nums:
            term = term * _num_factor(work, tuple(zs), v)
        for a, d in ratios:
            term = term * _ratio_factor(work, tuple(zs), a, d)
        for z in singles:
            term = term * inv_varsigma(work, z)
        total = total + term
    return fit(total, ring)


def _multiple(v, d) -> int:
    """Integer ``a`` with ``v = a*d`` (0 if none)."""
    a = None
    for x, y in zip(v, d):
        if y == 0:
            if x:
                return 0
            continue
        if x % y:
            return 0
        q = x // y
        if a is None:
            a = q
        elif a != q:
            return 0
    return a or 0


@lru_cache(maxsize=4096)
def _num_factor(work: SeriesRing, zs: tuple, v) -> Series:
    return varsigma_combo(work, dict(zip(zs, v)))


@lru_cache(maxsize=4096)
def _ratio_factor(work: SeriesRing, zs: tuple, a: int, d) -> Series:
    """``varsigma(a Z)/varsigma(Z)`` at ``Z = d . z`` as a finite sum of exponentials."""
    sign = 1 if a > 0 else -1
    out = work.zero()
    for i in range(abs(a)):
        shift = Fraction(abs(a) - 1, 2) - i
        term = work.one()
        for z, x in zip(zs, d):
            if x:
                term = term * exp_series(work, z, shift * x)
        out = out + term
    return out if sign > 0 else -out


def epsilon_product_vev(lam, mu, rs: Sequence[int], zs: Sequence[str], ring: SeriesRing) -> Series:
    """``<p_{-lam}, eps_{r_1}(z_1) ... eps_{r_N}(z_N) p_{-mu}>`` by commutator recursion."""
    lam, mu = Partition(lam), Partition(mu)
    if len(rs) != len(zs):
        raise DomainError("need one variable per epsilon factor")
    if lam.size - mu.size != sum(rs):
        if lam.size != mu.size:
            raise DomainError(f"size mismatch: |{list(lam)}| != |{list(mu)}| + sum(r)")
        return ring.zero()
    for z in zs:
        if ring.spec(z).max_pole < 1 and 0 in rs:
            raise WindowError(f"epsilon0 factors need max_pole >= 1 in {z}")
    return _evaluate(epsilon_vev_symbolic(lam, mu, rs), list(zs), ring)


def clear_caches() -> None:
    _vev.cache_clear()
    _num_factor.cache_clear()
    _ratio_factor.cache_clear()
