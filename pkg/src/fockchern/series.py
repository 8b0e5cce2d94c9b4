"""Sparse truncated multivariate Laurent series over the rationals.

A :class:`SeriesRing` fixes an ordered list of variables, each with a window
``[-max_pole, max_degree]`` on its exponent, plus optional weighted caps
``sum(w_i * e_i) <= limit``.  A :class:`Series` is an immutable map from
exponent tuples to :class:`fractions.Fraction`; every operation keeps only
terms inside the ring's window.

Stored terms are treated as exact.  Truncation is a ring homomorphism only
for pole-free series, so callers that multiply Laurent series compute in a
wider working ring and :meth:`Series.restrict` the answer afterwards.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from . import _kernels
from .errors import DivisionError, DomainError, StructuralError, WindowError

Exp = tuple[int, ...]
Scalar = int | Fraction

_SMALL_PRODUCT = 400  # below this many pairs the plain double loop wins
_KEY_LIMIT = 1 << 62


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def format_fraction(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class VarSpec:
    """One variable and its exponent window."""

    name: str
    max_pole: int = 0
    max_degree: int = 0

    def __post_init__(self):
        if self.max_pole < 0 or self.max_degree < 0:
            raise WindowError(f"negative window for {self.name}")
        if self.max_pole > 0 and not self.name.startswith("z"):
            # only correlation variables ever carry poles
            raise WindowError(f"variable {self.name!r} may not have poles")


@dataclass(frozen=True)
class Cap:
    """Weighted degree bound ``sum(weight[v] * e_v) <= limit``."""

    weights: tuple[tuple[str, int], ...]
    limit: int

    @classmethod
    def of(cls, weights: Mapping[str, int], limit: int) -> "Cap":
        return cls(tuple(sorted((k, int(w)) for k, w in weights.items() if w)), int(limit))

    def weight_of(self, name: str) -> int:
        for k, w in self.weights:
            if k == name:
                return w
        return 0


@dataclass(frozen=True)
class SeriesRing:
    vars: tuple[VarSpec, ...]
    caps: tuple[Cap, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        object.__setattr__(self, "caps", tuple(self.caps))
        names = [v.name for v in self.vars]
        if len(set(names)) != len(names):
            raise StructuralError(f"duplicate variable names in {names}")
        for cap in self.caps:
            for k, w in cap.weights:
                if k not in names:
                    raise StructuralError(f"cap refers to unknown variable {k!r}")
                if w < 0:
                    raise WindowError("cap weights must be nonnegative")

    @classmethod
    def of(cls, *specs, caps: Iterable[Cap] = ()) -> "SeriesRing":
        """Build from ``VarSpec`` objects or ``(name, max_pole, max_degree)`` tuples."""
        vs = tuple(s if isinstance(s, VarSpec) else VarSpec(*s) for s in specs)
        return cls(vs, tuple(caps))

    # -- shape -------------------------------------------------------------
    @cached_property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.vars)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {n: i for i, n in enumerate(self.names)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise StructuralError(f"unknown variable {name!r}; ring has {self.names}") from None

    def spec(self, name: str) -> VarSpec:
        return self.vars[self.index(name)]

    def __contains__(self, name: str) -> bool:
        return name in self._index

    @cached_property
    def lo(self) -> np.ndarray:
        return np.array([-v.max_pole for v in self.vars], dtype=np.int64)

    @cached_property
    def hi(self) -> np.ndarray:
        return np.array([v.max_degree for v in self.vars], dtype=np.int64)

    @cached_property
    def cap_matrix(self) -> np.ndarray:
        mat = np.zeros((len(self.caps), len(self.vars)), dtype=np.int64)
        for c, cap in enumerate(self.caps):
            for k, w in cap.weights:
                mat[c, self.index(k)] = w
        return mat

    @cached_property
    def cap_limits(self) -> np.ndarray:
        return np.array([c.limit for c in self.caps], dtype=np.int64)

    @cached_property
    def _bounds(self) -> tuple[tuple[int, int], ...]:
        return tuple((-v.max_pole, v.max_degree) for v in self.vars)

    @cached_property
    def _cap_rows(self) -> tuple[tuple[tuple[int, ...], int], ...]:
        return tuple((tuple(int(w) for w in row), int(lim))
                     for row, lim in zip(self.cap_matrix, self.cap_limits))

    @cached_property
    def _strides(self):
        strides, total = [], 1
        for v in self.vars:
            strides.append(total)
            total *= v.max_pole + v.max_degree + 1
        if total >= _KEY_LIMIT:
            return None
        return np.array(strides, dtype=np.int64)

    def admits(self, e: Exp) -> bool:
        for x, (lo, hi) in zip(e, self._bounds):
            if x < lo or x > hi:
                return False
        for row, lim in self._cap_rows:
            if sum(w * x for w, x in zip(row, e)) > lim:
                return False
        return True

    # -- derived rings -----------------------------------------------------
    def with_var(self, name: str, **changes) -> "SeriesRing":
        i = self.index(name)
        vs = list(self.vars)
        vs[i] = replace(vs[i], **changes)
        return SeriesRing(tuple(vs), self.caps)

    def widened(self, degree: int = 0, pole: int | None = None, cap: int = 0,
                names: Iterable[str] | None = None) -> "SeriesRing":
        """Extra degree (and optionally a new pole bound) on the named variables."""
        chosen = set(self.names if names is None else names)
        vs = []
        for v in self.vars:
            if v.name in chosen:
                v = replace(v, max_degree=v.max_degree + degree,
                            max_pole=v.max_pole if pole is None else max(v.max_pole, pole))
            vs.append(v)
        caps = tuple(Cap(c.weights, c.limit + cap) for c in self.caps)
        return SeriesRing(tuple(vs), caps)

    def without_caps(self) -> "SeriesRing":
        return SeriesRing(self.vars, ())

    # -- constructors ------------------------------------------------------
    def zero(self) -> "Series":
        return Series._make(self, {})

    def one(self) -> "Series":
        return self.const(1)

    def const(self, c) -> "Series":
        return Series(self, {(0,) * len(self.vars): c})

    def gen(self, name: str) -> "Series":
        return self.monomial({name: 1})

    def monomial(self, powers: Mapping[str, int] | Exp, coef=1) -> "Series":
        if isinstance(powers, Mapping):
            e = [0] * len(self.vars)
            for k, p in powers.items():
                e[self.index(k)] = p
            powers = tuple(e)
        return Series(self, {tuple(powers): coef})

    def to_json(self) -> dict:
        out = {"vars": [{"name": v.name, "max_pole": v.max_pole, "max_degree": v.max_degree}
                        for v in self.vars]}
        if self.caps:
            out["caps"] = [{"weights": dict(c.weights), "limit": c.limit} for c in self.caps]
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "SeriesRing":
        vs = tuple(VarSpec(d["name"], int(d["max_pole"]), int(d["max_degree"])) for d in data["vars"])
        caps = tuple(Cap.of(c["weights"], c["limit"]) for c in data.get("caps", ()))
        return cls(vs, caps)


class _Packed:
    __slots__ = ("exps", "keys", "capw", "nums", "den")

    def __init__(self, series: "Series"):
        ring = series.ring
        items = list(series.terms.items())
        self.exps = np.array([e for e, _ in items], dtype=np.int64).reshape(len(items), len(ring.vars))
        self.keys = self.exps @ ring._strides
        self.capw = self.exps @ ring.cap_matrix.T if ring.caps else np.zeros((len(items), 0), np.int64)
        den = 1
        for _, c in items:
            den = math.lcm(den, c.denominator)
        self.den = den
        self.nums = np.empty(len(items), dtype=object)
        self.nums[:] = [c.numerator * (den // c.denominator) for _, c in items]


class Series:
    """Immutable truncated Laurent series; see module docstring."""

    __slots__ = ("ring", "terms", "_packed")

    def __init__(self, ring: SeriesRing, terms: Mapping[Exp, Scalar] | None = None):
        clean = {}
        k = len(ring.vars)
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != k:
                raise StructuralError(f"exponent {e} has wrong arity for {ring.names}")
            c = as_fraction(c)
            if c and ring.admits(e):
                clean[e] = clean.get(e, 0) + c
        self.ring = ring
        self.terms = {e: c for e, c in clean.items() if c}
        self._packed = None

    @classmethod
    def _make(cls, ring: SeriesRing, terms: dict) -> "Series":
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        obj._packed = None
        return obj

    # -- inspection --------------------------------------------------------
    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def items(self) -> list[tuple[Exp, Fraction]]:
        """Terms in lexicographic exponent order."""
        return sorted(self.terms.items())

    def coefficient(self, exp: Mapping[str, int] | Exp | None = None, **powers) -> Fraction:
        if exp is None or isinstance(exp, Mapping):
            e = [0] * len(self.ring.vars)
            for name, p in {**(exp or {}), **powers}.items():
                e[self.ring.index(name)] = p
            exp = tuple(e)
        return self.terms.get(tuple(exp), Fraction(0))

    @property
    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.ring.vars), Fraction(0))

    def min_exponent(self, name: str) -> int | None:
        i = self.ring.index(name)
        return min((e[i] for e in self.terms), default=None)

    def max_exponent(self, name: str) -> int | None:
        i = self.ring.index(name)
        return max((e[i] for e in self.terms), default=None)

    def is_pole_free(self) -> bool:
        return all(x >= 0 for e in self.terms for x in e)

    def component(self, name: str, power: int) -> "Series":
        """Coefficient of ``name**power`` as a series (same ring, that exponent zeroed)."""
        i = self.ring.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] == power:
                out[e[:i] + (0,) + e[i + 1:]] = c
        return Series._make(self.ring, out)

    def total_degree(self, names: Iterable[str] | None = None) -> int | None:
        idx = [self.ring.index(n) for n in names] if names is not None else range(len(self.ring.vars))
        return max((sum(e[i] for i in idx) for e in self.terms), default=None)

    # -- ring plumbing -----------------------------------------------------
    def _check(self, other: "Series"):
        if self.ring != other.ring:
            raise StructuralError(
                f"ring mismatch: {self.ring.names} {self.ring.to_json()} vs "
                f"{other.ring.names} {other.ring.to_json()}")

    def _coerce(self, other) -> "Series":
        if isinstance(other, Series):
            self._check(other)
            return other
        return self.ring.const(other)

    def restrict(self, ring: SeriesRing) -> "Series":
        """Re-express in ``ring`` (matched by variable name), dropping out-of-window terms.

        Variables absent from ``ring`` must not occur with nonzero exponent.
        """
        if ring == self.ring:
            return self
        src = self.ring.names
        pos = [ring.index(n) if n in ring else None for n in src]
        k = len(ring.vars)
        out = {}
        for e, c in self.terms.items():
            f = [0] * k
            for x, p, n in zip(e, pos, src):
                if p is None:
                    if x:
                        raise StructuralError(f"variable {n!r} missing from target ring")
                    continue
                f[p] = x
            f = tuple(f)
            if ring.admits(f):
                out[f] = c
        return Series._make(ring, out)

    # -- arithmetic --------------------------------------------------------
    def __neg__(self) -> "Series":
        return Series._make(self.ring, {e: -c for e, c in self.terms.items()})

    def __add__(self, other) -> "Series":
        if not isinstance(other, (Series, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Series._make(self.ring, out)

    __radd__ = __add__

    def __sub__(self, other) -> "Series":
        if not isinstance(other, (Series, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Series":
        return (-self) + other

    def scale(self, c) -> "Series":
        c = as_fraction(c)
        if not c:
            return self.ring.zero()
        return Series._make(self.ring, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other) -> "Series":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Series):
            return NotImplemented
        self._check(other)
        return _multiply(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Series":
        if isinstance(other, (int, Fraction)):
            if not other:
                raise DivisionError("division of a series by zero")
            return self.scale(1 / as_fraction(other))
        if isinstance(other, Series):
            return self * series_invert(other)
        return NotImplemented

    def __pow__(self, n: int) -> "Series":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return series_invert(self) ** (-n)
        result, base = self.ring.one(), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Series):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    __hash__ = None

    def derivative(self, name: str) -> "Series":
        return partial_derivative(self, name)

    # -- text & json -------------------------------------------------------
    def __repr__(self) -> str:
        if not self.terms:
            return "Series(0)"
        parts = []
        for e, c in self.items()[:12]:
            mono = "*".join(n if x == 1 else f"{n}^{x}"
                            for n, x in zip(self.ring.names, e) if x)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        more = " + ..." if len(self.terms) > 12 else ""
        return "Series(" + " + ".join(parts) + more + ")"

    def to_json(self) -> dict:
        out = self.ring.to_json()
        out["terms"] = [{"exp": list(e), "coef": format_fraction(c)} for e, c in self.items()]
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "Series":
        ring = SeriesRing.from_json(data)
        return cls(ring, {tuple(t["exp"]): Fraction(t["coef"]) for t in data["terms"]})


def _multiply(a: Series, b: Series) -> Series:
    ring = a.ring
    if not a.terms or not b.terms:
        return ring.zero()
    if len(a.terms) * len(b.terms) <= _SMALL_PRODUCT or ring._strides is None:
        return _multiply_loop(a, b)
    pa = a._packed or _Packed(a)
    pb = b._packed or _Packed(b)
    a._packed, b._packed = pa, pb
    ii, jj, kk = _kernels.pair_products(
        pa.exps, pb.exps, ring.lo, ring.hi, pa.capw, pb.capw, ring.cap_limits, pa.keys, pb.keys)
    if len(kk) == 0:
        return ring.zero()
    prods = pa.nums[ii] * pb.nums[jj]
    order = np.argsort(kk, kind="stable")
    kk = kk[order]
    prods = prods[order]
    starts = np.flatnonzero(np.concatenate(([True], kk[1:] != kk[:-1])))
    sums = np.add.reduceat(prods, starts)
    keys = kk[starts] - int(ring.lo @ ring._strides)
    radix = ring.hi - ring.lo + 1
    digits = (keys[:, None] // ring._strides[None, :]) % radix[None, :] + ring.lo[None, :]
    den = pa.den * pb.den
    out = {}
    for row, s in zip(digits.tolist(), sums):
        if s:
            out[tuple(row)] = Fraction(int(s), den)
    return Series._make(ring, out)


def _multiply_loop(a: Series, b: Series) -> Series:
    ring = a.ring
    admits = ring.admits
    add = operator.add
    out: dict[Exp, Fraction] = {}
    for ea, ca in a.terms.items():
        for eb, cb in b.terms.items():
            e = tuple(map(add, ea, eb))
            if admits(e):
                out[e] = out.get(e, 0) + ca * cb
    return Series._make(ring, {e: c for e, c in out.items() if c})


# ---------------------------------------------------------------------------
# public operations


def series_arith(a: Series, b: Series, op: str) -> Series:
    """``op`` is one of ``add``, ``sub``, ``mul``."""
    if not isinstance(a, Series) or not isinstance(b, Series):
        raise StructuralError("series_arith expects two Series")
    a._check(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise DomainError(f"unknown op {op!r}")


def _leading(a: Series) -> Exp:
    low = min(sum(e) for e in a.terms)
    lows = [e for e in a.terms if sum(e) == low]
    if len(lows) != 1:
        raise DomainError(f"no unique lowest-order term among {sorted(lows)}")
    return lows[0]


def power_series_inverse(b: Series) -> Series:
    """Inverse of a pole-free series with constant term 1 (Newton iteration)."""
    if b.constant_term != 1 or not b.is_pole_free():
        raise DomainError("power_series_inverse needs constant term 1 and no poles")
    one = b.ring.one()
    y = one
    for _ in range(64):
        nxt = y + y * (one - b * y)
        if nxt == y:
            return y
        y = nxt
    raise DomainError("inverse iteration did not stabilise")  # pragma: no cover


def series_invert(a: Series, ring: SeriesRing | None = None) -> Series:
    """Multiplicative inverse of ``a``, returned in ``ring`` (default ``a.ring``).

    ``a`` is factored as ``c * x**e * b`` with ``x**e`` its unique lowest-order
    monomial; ``b`` must then be a power series.
    """
    target = ring or a.ring
    if not a.terms:
        raise DivisionError("inverse of the zero series")
    if set(a.ring.names) - set(target.names):
        raise StructuralError("target ring lacks variables of the operand")
    e0 = _leading(a)
    c0 = a.terms[e0]
    lead = dict(zip(a.ring.names, e0))
    for name, x in lead.items():
        if x > 0 and target.spec(name).max_pole < x:
            raise WindowError(f"inverse has a pole of order {x} in {name}, window allows "
                              f"{target.spec(name).max_pole}")
    # working power-series ring: target window shifted by the leading monomial
    vs = []
    for v in target.vars:
        shift = lead.get(v.name, 0)
        vs.append(VarSpec(v.name, 0, max(0, v.max_degree + shift)))
    caps = tuple(Cap(c.weights, c.limit + sum(w * lead.get(k, 0) for k, w in c.weights))
                 for c in target.caps)
    work = SeriesRing(tuple(vs), caps)
    shifted = {}
    for e, c in a.terms.items():
        f = {n: x - lead[n] for n, x in zip(a.ring.names, e)}
        if any(x < 0 for x in f.values()):
            raise DomainError("series is not a monomial times a power series")
        shifted[tuple(f.get(n, 0) for n in work.names)] = c / c0
    y = power_series_inverse(Series(work, shifted))
    out = {}
    for e, c in y.terms.items():
        f = tuple(x - lead.get(n, 0) for n, x in zip(work.names, e))
        if target.admits(f):
            out[f] = c / c0
    return Series._make(target, out)


def series_exp(a: Series) -> Series:
    if a.constant_term:
        raise DomainError("exp needs a zero constant term")
    if not a.is_pole_free():
        raise DomainError("exp of a series with poles")
    result = a.ring.one()
    term = result
    n = 0
    while True:
        n += 1
        term = (term * a).scale(Fraction(1, n))
        if not term.terms:
            return result
        result = result + term


def series_log(a: Series) -> Series:
    if a.constant_term != 1:
        raise DomainError("log needs constant term 1")
    if not a.is_pole_free():
        raise DomainError("log of a series with poles")
    y = a - 1
    result = a.ring.zero()
    power = a.ring.one()
    n = 0
    while True:
        n += 1
        power = power * y
        if not power.terms:
            return result
        result = result + power.scale(Fraction((-1) ** (n + 1), n))


def exp_linear(c, var: str, order: int, ring: SeriesRing | None = None) -> Series:
    """``sum_k (c*var)**k / k!`` for ``k <= order``."""
    ring = ring or SeriesRing.of((var, 0, order))
    i = ring.index(var)
    if order > ring.vars[i].max_degree:
        raise WindowError(f"order {order} exceeds window of {var}")
    c = as_fraction(c)
    k = len(ring.vars)
    terms = {}
    coef = Fraction(1)
    for d in range(order + 1):
        if d:
            coef = coef * c / d
        if coef:
            e = [0] * k
            e[i] = d
            terms[tuple(e)] = coef
    return Series(ring, terms)


def partial_derivative(a: Series, var: str) -> Series:
    """Term-wise derivative; the result lives in a ring one degree narrower in ``var``."""
    ring = a.ring
    i = ring.index(var)
    spec = ring.vars[i]
    new_spec = replace(spec, max_degree=max(0, spec.max_degree - 1),
                       max_pole=spec.max_pole + 1 if spec.max_pole else 0)
    vs = list(ring.vars)
    vs[i] = new_spec
    caps = tuple(Cap(c.weights, c.limit - c.weight_of(var)) for c in ring.caps)
    out_ring = SeriesRing(tuple(vs), caps)
    out = {}
    for e, c in a.terms.items():
        if e[i]:
            f = e[:i] + (e[i] - 1,) + e[i + 1:]
            if out_ring.admits(f):
                out[f] = c * e[i]
    return Series._make(out_ring, out)


def compose_linear(f: Series, var: str, combo: Mapping[str, int], ring: SeriesRing) -> Series:
    """Substitute ``var -> sum(combo[n] * n)`` into ``f``; result lives in ``ring``.

    Other variables of ``f`` are carried over by name.
    """
    i = f.ring.index(var)
    by_power: dict[int, dict] = {}
    rest_names = [n for n in f.ring.names if n != var]
    for e, c in f.terms.items():
        if e[i] < 0:
            raise DomainError(f"cannot substitute into a pole in {var}")
        rest = tuple(x for j, x in enumerate(e) if j != i)
        by_power.setdefault(e[i], {})[rest] = c
    rest_ring = SeriesRing(tuple(v for v in f.ring.vars if v.name != var))
    lin = ring.zero()
    for name, w in combo.items():
        if w:
            lin = lin + ring.gen(name).scale(w)
    result = ring.zero()
    power = ring.one()
    for d in range(max(by_power, default=-1) + 1):
        if d:
            power = power * lin
            if not power.terms:
                break
        if d in by_power:
            coef = Series._make(rest_ring, by_power[d]).restrict(ring) if rest_names else \
                ring.const(by_power[d][()])
            result = result + coef * power
    return result


def substitute_zero(a: Series, names: Iterable[str]) -> Series:
    """Set the named variables to zero (keeps the ring)."""
    idx = [a.ring.index(n) for n in names]
    return Series._make(a.ring, {e: c for e, c in a.terms.items() if not any(e[i] for i in idx)})


def first_difference(a: Series, b: Series):
    """First exponent (lexicographic) where ``a`` and ``b`` differ, with both values."""
    a._check(b)
    for e in sorted(set(a.terms) | set(b.terms)):
        x, y = a.terms.get(e, Fraction(0)), b.terms.get(e, Fraction(0))
        if x != y:
            return e, x, y
    return None
