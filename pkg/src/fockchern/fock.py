"""Bosonic Fock space with the Heisenberg action in the normalized basis.

Basis vectors are ``p_{-lam} = (1/z_lam) prod_r p_{-r}^{m_r} |0>``, with
pairing ``<p_{-lam}, p_{-mu}> = delta / z_lam``.  In this basis

* ``p_{-k} p_{-lam} = (z_{lam+(k)} / z_lam) p_{-(lam+(k))}``
* ``p_k p_{-lam} = p_{-(lam-(k))}`` when ``k`` is a part of ``lam``, else 0.

The annihilation scalar is exactly 1: ``z_lam / z_{lam-(k)} = k m_k`` cancels
the ``k m_k`` produced by commuting ``p_k`` through the raw monomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .errors import DomainError, StructuralError
from .partitions import (EMPTY, Partition, fixed_to_power_terms, power_to_fixed_terms,
                         z_factor)
from .series import Series, as_fraction, format_fraction

POWER_SUM = "power_sum"
FIXED_POINT = "fixed_point"
BASES = (POWER_SUM, FIXED_POINT)


def _is_zero(c) -> bool:
    return c.is_zero() if isinstance(c, Series) else c == 0


def _normalize(c):
    return c if isinstance(c, Series) else as_fraction(c)


@dataclass(frozen=True)
class FockVector:
    basis: str
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.basis not in BASES:
            raise DomainError(f"unknown basis {self.basis!r}")
        clean = {}
        ring = None
        for lam, c in self.terms.items():
            if _is_zero(c):
                continue
            if isinstance(c, Series):
                if ring is None:
                    ring = c.ring
                elif c.ring != ring:
                    raise StructuralError("Fock vector coefficients live in different rings")
            clean[Partition(lam)] = _normalize(c)
        object.__setattr__(self, "terms", clean)

    # -- constructors --------------------------------------------------
    @classmethod
    def vacuum(cls, basis: str = POWER_SUM) -> "FockVector":
        return cls(basis, {EMPTY: Fraction(1)})

    @classmethod
    def basis_vector(cls, lam, basis: str = POWER_SUM, coef=1) -> "FockVector":
        return cls(basis, {Partition(lam): coef})

    @classmethod
    def zero(cls, basis: str = POWER_SUM) -> "FockVector":
        return cls(basis, {})

    # -- structure -----------------------------------------------------
    @property
    def ring(self):
        for c in self.terms.values():
            if isinstance(c, Series):
                return c.ring
        return None

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, lam):
        return self.terms.get(Partition(lam), Fraction(0))

    def degrees(self) -> set[int]:
        return {lam.size for lam in self.terms}

    def truncate(self, degree_cap: int) -> "FockVector":
        return FockVector(self.basis, {l: c for l, c in self.terms.items() if l.size <= degree_cap})

    def map_coefficients(self, fn: Callable) -> "FockVector":
        return FockVector(self.basis, {l: fn(c) for l, c in self.terms.items()})

    def _merge(self, other: "FockVector", sign: int) -> "FockVector":
        if not isinstance(other, FockVector):
            return NotImplemented
        if other.basis != self.basis:
            other = basis_change(other, self.basis)
        out = dict(self.terms)
        for lam, c in other.terms.items():
            out[lam] = out[lam] + sign * c if lam in out else sign * c
        return FockVector(self.basis, out)

    def __add__(self, other):
        return self._merge(other, 1)

    def __sub__(self, other):
        return self._merge(other, -1)

    def __neg__(self):
        return self.map_coefficients(lambda c: -c)

    def __mul__(self, scalar):
        if isinstance(scalar, FockVector):
            return NotImplemented
        return self.map_coefficients(lambda c: c * scalar)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        if other.basis != self.basis:
            other = basis_change(other, self.basis)
        return self.terms == other.terms

    __hash__ = None

    def items(self):
        """Terms in reverse-lexicographic partition order (by degree first)."""
        return sorted(self.terms.items(), key=lambda kv: (kv[0].size, [-p for p in kv[0]]))

    def to_json(self) -> dict:
        def enc(c):
            return c.to_json() if isinstance(c, Series) else format_fraction(c)
        return {"basis": self.basis,
                "terms": [{"partition": list(l), "coef": enc(c)} for l, c in self.items()]}

    @classmethod
    def from_json(cls, data: Mapping) -> "FockVector":
        def dec(c):
            return Series.from_json(c) if isinstance(c, Mapping) else Fraction(c)
        return cls(data["basis"], {Partition(t["partition"]): dec(t["coef"]) for t in data["terms"]})


def basis_change(v: FockVector, target: str) -> FockVector:
    if target not in BASES:
        raise DomainError(f"unknown basis {target!r}")
    if v.basis == target:
        return v
    if target == FIXED_POINT:
        return FockVector(FIXED_POINT, power_to_fixed_terms(v.terms))
    return FockVector(POWER_SUM, fixed_to_power_terms(v.terms))


def _require_power(v: FockVector) -> FockVector:
    if v.basis != POWER_SUM:
        raise StructuralError("operation needs a vector in the power_sum basis")
    return v


def apply_p(k: int, v: FockVector) -> FockVector:
    """Heisenberg operator ``p_k``; ``p_0`` acts as zero."""
    _require_power(v)
    if k == 0:
        return FockVector.zero(POWER_SUM)
    out: dict = {}
    if k < 0:
        for lam, c in v.terms.items():
            nu = Partition(lam + (-k,))
            scalar = Fraction(z_factor(nu), z_factor(lam))
            out[nu] = out[nu] + c * scalar if nu in out else c * scalar
    else:
        for lam, c in v.terms.items():
            if k in lam:
                parts = list(lam)
                parts.remove(k)
                nu = Partition(parts)
                out[nu] = out[nu] + c if nu in out else c
    return FockVector(POWER_SUM, out)


def inner_product(v: FockVector, w: FockVector):
    """Bilinear form with ``<p_{-lam}, p_{-mu}> = delta / z_lam``."""
    v = basis_change(v, POWER_SUM)
    w = basis_change(w, POWER_SUM)
    total = Fraction(0)
    for lam, c in v.terms.items():
        d = w.terms.get(lam)
        if d is not None:
            total = (c * d) * Fraction(1, z_factor(lam)) + total
    return total


def _exp_action(values: Mapping[int, object], v: FockVector, degree_cap: int | None,
                sign: int) -> FockVector:
    result = _require_power(v)
    if degree_cap is not None:
        result = result.truncate(degree_cap)
    for k in sorted(values):
        s = values[k]
        if _is_zero(s):
            continue
        if k <= 0:
            raise DomainError(f"vertex operator indices must be positive, got {k}")
        acc = result
        term = result
        j = 0
        while True:
            j += 1
            term = apply_p(sign * k, term) * (s * Fraction(1, k * j))
            if degree_cap is not None:
                term = term.truncate(degree_cap)
            if term.is_zero():
                break
            acc = acc + term
        result = acc
    return result


def gamma_minus(s_values: Mapping[int, object], v: FockVector, degree_cap: int) -> FockVector:
    """``exp(sum_k s_k p_{-k} / k) v`` keeping Fock degrees ``<= degree_cap``."""
    return _exp_action(s_values, v, degree_cap, -1)


def gamma_plus(t_values: Mapping[int, object], v: FockVector,
               degree_cap: int | None = None) -> FockVector:
    """``exp(sum_k t_k p_k / k) v``; the adjoint of :func:`gamma_minus`."""
    return _exp_action(t_values, v, degree_cap, 1)


def spanning_defect(n: int) -> list[Partition]:
    """Basis vectors of degree ``n`` not reached by creation operators from the vacuum."""
    from .partitions import partitions_of
    reached = set()
    for lam in partitions_of(n):
        w = FockVector.vacuum()
        for part in lam:
            w = apply_p(-part, w)
        reached |= set(w.terms)
    return [lam for lam in partitions_of(n) if lam not in reached]


def operator_word(ks: Iterable[int], v: FockVector) -> FockVector:
    """Apply ``p_{k_1} p_{k_2} ... p_{k_r}`` (rightmost first)."""
    for k in reversed(list(ks)):
        v = apply_p(k, v)
    return v
