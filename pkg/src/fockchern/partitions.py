"""Partitions, their statistics, and symmetric-group characters.

Partitions are stored canonically as weakly decreasing tuples of positive
integers.  Characters come from the Murnaghan-Nakayama rule evaluated on
beta-sets (rim hooks become bead moves), memoized per ``(lambda, mu)``.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Mapping

from .errors import DomainError


class Partition(tuple):
    """Weakly decreasing tuple of positive integers; ``Partition()`` is the empty partition."""

    def __new__(cls, parts: Iterable[int] = ()):
        if isinstance(parts, Partition):
            return parts
        parts = tuple(sorted((int(p) for p in parts), reverse=True))
        if parts and parts[-1] <= 0:
            raise DomainError(f"partition parts must be positive: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def multiplicities(self) -> Counter:
        return Counter(self)

    def transpose(self) -> "Partition":
        if not self:
            return self
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def __repr__(self) -> str:
        return f"Partition({list(self)})"


EMPTY = Partition()


def parse_partition(text: str) -> Partition:
    """Parse ``"3,1,1"`` (or ``""``/``"0"`` for the empty partition)."""
    text = text.strip().strip("[]()")
    if text in ("", "0"):
        return EMPTY
    return Partition(int(p) for p in text.replace(" ", "").split(",") if p)


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for k in range(min(n, largest), 0, -1):
        out.extend((k,) + rest for rest in _partitions(n - k, k))
    return tuple(out)


@lru_cache(maxsize=None)
def partitions_of(n: int, max_part: int | None = None) -> tuple[Partition, ...]:
    """All partitions of ``n`` in reverse-lexicographic order.

    ``max_part`` optionally bounds the largest part.
    """
    if n < 0:
        raise DomainError(f"cannot partition a negative number: {n}")
    return tuple(Partition(p) for p in _partitions(n, n if max_part is None else max_part))


def partitions_up_to(n: int) -> list[Partition]:
    return [p for k in range(n + 1) for p in partitions_of(k)]


def partition_count(n: int) -> int:
    return len(partitions_of(n))


@lru_cache(maxsize=None)
def z_factor(lam: Partition) -> int:
    """Centralizer order ``prod r**m_r * m_r!``."""
    out = 1
    for r, m in Counter(lam).items():
        out *= r ** m * factorial(m)
    return out


def hook_lengths(lam: Partition) -> list[int]:
    lam = Partition(lam)
    conj = lam.transpose()
    return [(lam[i] - j - 1) + (conj[j] - i - 1) + 1 for i in range(len(lam)) for j in range(lam[i])]


@lru_cache(maxsize=None)
def hook_product(lam: Partition) -> int:
    out = 1
    for h in hook_lengths(lam):
        out *= h
    return out


def contents(lam: Partition) -> list[int]:
    """Contents ``column - row`` of every box, row by row."""
    return [j - i for i in range(len(lam)) for j in range(lam[i])]


# -- multiplicity algebra ---------------------------------------------------

def combine(lam: Partition, mu: Partition) -> Partition:
    return Partition(tuple(lam) + tuple(mu))


def contains(lam: Partition, mu: Partition) -> bool:
    """``lam`` is contained in ``mu`` multiplicity-wise."""
    big = Counter(mu)
    return all(big[p] >= m for p, m in Counter(lam).items())


def subtract(lam: Partition, mu: Partition) -> Partition:
    """Remove the parts of ``mu`` from ``lam``; requires ``mu`` contained in ``lam``."""
    if not contains(mu, lam):
        raise DomainError(f"{list(mu)} is not contained in {list(lam)}")
    left = Counter(lam)
    left.subtract(Counter(mu))
    return Partition(p for p, m in left.items() for _ in range(m))


def partition_algebra(lam: Partition, mu: Partition, op: str):
    if op == "combine":
        return combine(lam, mu)
    if op == "contains":
        return contains(lam, mu)
    if op == "subtract":
        return subtract(lam, mu)
    raise DomainError(f"unknown partition operation {op!r}")


def subpartition(lam: Partition, indices: Iterable[int]) -> Partition:
    """Parts at the given 1-based positions (equal parts are distinct by position)."""
    idx = set(indices)
    bad = [i for i in idx if not 1 <= i <= len(lam)]
    if bad:
        raise DomainError(f"indices {sorted(bad)} out of range for {list(lam)}")
    return Partition(lam[i - 1] for i in sorted(idx))


def complement_subpartition(lam: Partition, indices: Iterable[int]) -> Partition:
    idx = set(indices)
    return subpartition(lam, [i for i in range(1, len(lam) + 1) if i not in idx])


# -- characters -------------------------------------------------------------

@lru_cache(maxsize=None)
def _mn(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    if not mu:
        return 1 if not lam else 0
    r, rest = mu[0], mu[1:]
    ell = len(lam)
    beta = [lam[i] + ell - 1 - i for i in range(ell)]
    beads = set(beta)
    total = 0
    for b in beta:
        nb = b - r
        if nb < 0 or nb in beads:
            continue
        sign = -1 if sum(1 for x in beta if nb < x < b) % 2 else 1
        moved = sorted([x for x in beta if x != b] + [nb], reverse=True)
        parts = tuple(p for p in (moved[i] - (ell - 1 - i) for i in range(ell)) if p > 0)
        total += sign * _mn(parts, rest)
    return total


def mn_character(lam: Partition, mu: Partition) -> int:
    """Irreducible character value chi^lam at cycle type mu."""
    if sum(lam) != sum(mu):
        raise DomainError(f"size mismatch: |{list(lam)}| != |{list(mu)}|")
    return _mn(tuple(lam), tuple(mu))


class CharTable:
    """Character table of S_n, rows and columns in reverse-lex partition order."""

    def __init__(self, n: int):
        self.n = n
        self.partitions = partitions_of(n)
        self.table = {(lam, mu): mn_character(lam, mu)
                      for lam in self.partitions for mu in self.partitions}

    def __getitem__(self, key: tuple[Partition, Partition]) -> int:
        lam, mu = key
        return self.table[Partition(lam), Partition(mu)]

    def column_orthogonality_defects(self) -> list[tuple[Partition, Partition, int, int]]:
        out = []
        for mu in self.partitions:
            for nu in self.partitions:
                got = sum(self.table[lam, mu] * self.table[lam, nu] for lam in self.partitions)
                want = z_factor(mu) if mu == nu else 0
                if got != want:
                    out.append((mu, nu, got, want))
        return out


@lru_cache(maxsize=None)
def char_table(n: int) -> CharTable:
    return CharTable(n)


# -- basis transition on coefficient maps -----------------------------------

def fixed_to_power_terms(terms: Mapping[Partition, object]) -> dict[Partition, object]:
    """``[lam] = sum_mu chi^lam(mu) p_{-mu}`` applied to a coefficient map."""
    out: dict[Partition, object] = {}
    for lam, c in terms.items():
        table = char_table(lam.size)
        for mu in table.partitions:
            chi = table.table[lam, mu]
            if chi:
                out[mu] = out.get(mu, 0) + c * chi
    return out


def power_to_fixed_terms(terms: Mapping[Partition, object]) -> dict[Partition, object]:
    """``p_{-mu} = sum_lam chi^lam(mu) / z_mu [lam]`` applied to a coefficient map."""
    out: dict[Partition, object] = {}
    for mu, c in terms.items():
        table = char_table(mu.size)
        zmu = z_factor(mu)
        for lam in table.partitions:
            chi = table.table[lam, mu]
            if chi:
                out[lam] = out.get(lam, 0) + c * Fraction(chi, zmu)
    return out
