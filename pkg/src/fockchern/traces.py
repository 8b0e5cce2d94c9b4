"""q-traces of diagonal operators, the theta function, and the determinant formula.

Theta is the normalized product form

    Theta(z; q) = varsigma(z) (q e^z; q)_inf (q e^-z; q)_inf / (q; q)_inf^2

with all fractional q-powers cancelled.  Several z variables are truncated
by total z-degree (a ring cap), since the determinant formula evaluates
Theta at sums ``z_a + z_b + ...``.

The determinant side divides by Theta at such sums.  Writing
``Theta(Z) = Z * U(Z)`` with ``U(0) = 1``, each term becomes a power series
over a product of linear forms; all terms are brought over the common
denominator, the non-monomial linear forms are divided out exactly, and the
remaining monomial ``z_1 ... z_N`` becomes the pole.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from math import factorial
from typing import Sequence

from .errors import DivisionError, DomainError, WindowError
from .operators import DiagonalOperator, chern_coeffs, epsilon0_coeffs, fit
from .partitions import partitions_of
from .series import (Cap, Series, SeriesRing, compose_linear, partial_derivative,
                     power_series_inverse)
from .special import exp_series, inv_varsigma, varsigma

THETA_VAR = "zeta"


def total_degree_ring(zs: Sequence[str], z_order: int, q_order: int, pole: int = 1,
                      qvar: str = "q", slack: int | None = None) -> SeriesRing:
    """z variables with a shared total-degree cap ``z_order`` and a q window."""
    n = len(zs)
    per_var = z_order + pole * max(n - 1, 0) if slack is None else z_order + slack
    specs = [(z, pole, per_var) for z in zs] + [(qvar, 0, q_order)]
    caps = (Cap.of({z: 1 for z in zs}, z_order),) if n > 1 else ()
    return SeriesRing.of(*specs, caps=caps)


# -- q-products and theta ----------------------------------------------------------

def q_pochhammer(ring: SeriesRing, q_shift: int = 1, z_coef: int = 0, var: str | None = None,
                 qvar: str = "q") -> Series:
    """``(a; q)_inf`` with ``a = q**q_shift * e**(z_coef * var)``, truncated by the q window."""
    qdeg = ring.spec(qvar).max_degree
    if q_shift < 1:
        raise DomainError("q_pochhammer needs q_shift >= 1 so the product is finite mod q^N")
    ez = exp_series(ring, var, z_coef) if (var is not None and z_coef) else ring.one()
    out = ring.one()
    for j in range(q_shift, qdeg + 1):
        out = out * (ring.one() - ring.monomial({qvar: j}) * ez)
    return out


def q_pochhammer_inverse(ring: SeriesRing, qvar: str = "q") -> Series:
    return power_series_inverse(q_pochhammer(ring, qvar=qvar))


@lru_cache(maxsize=None)
def theta(var: str, z_degree: int, q_degree: int, qvar: str = "q") -> Series:
    ring = SeriesRing.of((var, 0, z_degree), (qvar, 0, q_degree))
    qq = q_pochhammer_inverse(ring, qvar)
    return (varsigma(ring, var) * q_pochhammer(ring, 1, 1, var, qvar)
            * q_pochhammer(ring, 1, -1, var, qvar) * qq * qq)


@lru_cache(maxsize=None)
def theta_deriv(k: int, var: str, z_degree: int, q_degree: int, qvar: str = "q") -> Series:
    """``d^k/dz^k Theta`` through ``z**z_degree``; zero for ``k < 0``."""
    ring = SeriesRing.of((var, 0, z_degree), (qvar, 0, q_degree))
    if k < 0:
        return ring.zero()
    out = theta(var, z_degree + k, q_degree, qvar)
    for _ in range(k):
        out = partial_derivative(out, var)
    return out.restrict(ring)


def jacobi_sum(ring: SeriesRing, var: str = "z", qvar: str = "q") -> Series:
    """``sum_m (-1)^m q^{m(m+1)/2} e^{(m+1/2) z}`` (q^{1/8} stripped)."""
    qdeg = ring.spec(qvar).max_degree
    out = ring.zero()
    m = 0
    while True:
        hit = False
        for mm in {m, -m - 1}:
            p = mm * (mm + 1) // 2
            if p <= qdeg:
                hit = True
                term = exp_series(ring, var, Fraction(2 * mm + 1, 2)) * ring.monomial({qvar: p})
                out = out + (term if mm % 2 == 0 else -term)
        if not hit:
            return out
        m += 1


def jacobi_product(ring: SeriesRing, var: str = "z", qvar: str = "q") -> Series:
    """``(q;q) varsigma(z) (q e^z;q) (q e^-z;q)``."""
    return (q_pochhammer(ring, qvar=qvar) * varsigma(ring, var)
            * q_pochhammer(ring, 1, 1, var, qvar) * q_pochhammer(ring, 1, -1, var, qvar))


# -- direct trace ----------------------------------------------------------------------

@dataclass(frozen=True)
class TraceRequest:
    ops: tuple[DiagonalOperator, ...]
    ring: SeriesRing
    n_max: int
    qvar: str = "q"

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))
        if self.n_max < self.ring.spec(self.qvar).max_degree:
            raise WindowError(f"n_max={self.n_max} is below the q window "
                              f"{self.ring.spec(self.qvar).max_degree}")
        for op in self.ops:
            if op.kind not in ("epsilon0", "chern"):
                raise DomainError(f"trace factors are epsilon0 or chern, not {op.kind}")


def _eig_coeffs(op: DiagonalOperator, lam, ring: SeriesRing) -> dict[int, Fraction]:
    spec = ring.spec(op.var)
    if op.kind == "chern":
        raw = chern_coeffs(lam, spec.max_degree)
    else:
        if spec.max_pole < 1:
            raise WindowError(f"epsilon0 trace needs max_pole >= 1 in {op.var}")
        raw = epsilon0_coeffs(lam, spec.max_degree)
    return {k: c for k, c in raw.items() if -spec.max_pole <= k}


def q_trace(request: TraceRequest) -> Series:
    """``sum_lam q^{|lam|} prod_j eigenvalue_j(lam)`` over ``|lam| <= q window``."""
    ring, qvar = request.ring, request.qvar
    qi = ring.index(qvar)
    idx = [ring.index(op.var) for op in request.ops]
    k = len(ring.vars)
    total: dict = {}
    for n in range(ring.spec(qvar).max_degree + 1):
        for lam in partitions_of(n):
            tables = [list(_eig_coeffs(op, lam, ring).items()) for op in request.ops]
            for combo in product(*tables):
                e = [0] * k
                e[qi] = n
                c = Fraction(1)
                for i, (p, v) in zip(idx, combo):
                    e[i] = p
                    c *= v
                e = tuple(e)
                if ring.admits(e):
                    total[e] = total.get(e, 0) + c
    return Series(ring, total)


def trace(kind: str, zs: Sequence[str], ring: SeriesRing, n_max: int | None = None,
          qvar: str = "q") -> Series:
    n_max = ring.spec(qvar).max_degree if n_max is None else n_max
    return q_trace(TraceRequest(tuple(DiagonalOperator(kind, z) for z in zs), ring, n_max, qvar))


# -- determinant formula -------------------------------------------------------------

def _z_degree(e, zi) -> int:
    return sum(e[i] for i in zi)


def _divide_linear(terms: dict, idx: list[int], zi: list[int], bound: int) -> dict:
    """``g`` with ``(sum_{i in idx} z_i) * g = f``; ``f`` exact through z-degree ``bound``."""
    if bound < 0:
        return {}
    a = idx[0]
    if len(idx) == 1:
        out = {}
        for e, c in terms.items():
            if _z_degree(e, zi) > bound:
                continue
            if e[a] == 0:
                raise DivisionError(f"series is not divisible by the linear form (term {e})")
            f = list(e)
            f[a] -= 1
            out[tuple(f)] = c
        return out
    rest = idx[1:]
    groups: dict[int, dict] = {}
    for e, c in terms.items():
        if _z_degree(e, zi) > bound:
            continue
        f = list(e)
        f[a] = 0
        groups.setdefault(e[a], {})[tuple(f)] = c
    top = max(groups, default=-1)
    g: dict = {}
    prev: dict = {}
    k = 0
    while k <= top or prev:
        h = dict(groups.get(k, {}))
        for e, c in prev.items():
            v = h.get(e, 0) - c
            if v:
                h[e] = v
            else:
                h.pop(e, None)
        gk = _divide_linear(h, rest, zi, bound - k)
        for e, c in gk.items():
            f = list(e)
            f[a] = k
            g[tuple(f)] = c
        prev = gk
        k += 1
        if bound - k < 0:
            break
    return g


def _compose(f: Series, var: str, combo: dict, ring: SeriesRing) -> Series:
    if not any(combo.values()):
        return _at_zero(f, var, ring)
    return compose_linear(f, var, combo, ring)


def _at_zero(f: Series, var: str, ring: SeriesRing) -> Series:
    i = f.ring.index(var)
    terms = {tuple(x for j, x in enumerate(e) if j != i): c for e, c in f.terms.items() if e[i] == 0}
    sub = SeriesRing(tuple(v for v in f.ring.vars if v.name != var))
    return Series(sub, terms).restrict(ring)


def _det(matrix: list[list[Series | None]], ring: SeriesRing) -> Series:
    k = len(matrix)
    out = ring.zero()
    for perm in permutations(range(k)):
        term = None
        for i, j in enumerate(perm):
            entry = matrix[i][j]
            if entry is None:
                term = None
                break
            term = entry if term is None else term * entry
        if term is None:
            continue
        inv = sum(1 for x in range(k) for y in range(x + 1, k) if perm[x] > perm[y])
        out = out + (term if inv % 2 == 0 else -term)
    return out


def _sigma_sums(zs: Sequence[str], z_order: int, q_order: int, qvar: str) -> Series:
    """``(q;q)_inf * sum_sigma det M / Theta_sigma`` in a total-degree ring (pole 1 per z)."""
    zs = list(zs)
    n = len(zs)
    target = total_degree_ring(zs, z_order, q_order, 1, qvar)
    if n == 0:
        return target.one()
    forms = [frozenset(c) for r in range(1, n + 1) for c in combinations(zs, r)]
    composite = [L for L in forms if len(L) > 1]
    t_num = z_order + n + len(composite)
    work = SeriesRing.of(*[(z, 0, t_num) for z in zs], (qvar, 0, q_order),
                         caps=(Cap.of({z: 1 for z in zs}, t_num),))
    th = theta(THETA_VAR, t_num + 1, q_order, qvar)
    ring1 = th.ring
    # U(w) = Theta(w)/w and its inverse
    u_terms = {}
    for e, c in th.terms.items():
        u_terms[(e[0] - 1, e[1])] = c
    u = Series(SeriesRing.of((THETA_VAR, 0, t_num), (qvar, 0, q_order)), u_terms)
    u_inv = power_series_inverse(u)
    entries = {}

    def entry(order: int, arg: frozenset) -> Series | None:
        if order < 0:
            return None
        key = (order, arg)
        if key not in entries:
            d = theta_deriv(order, THETA_VAR, t_num, q_order, qvar).scale(Fraction(1, factorial(order)))
            entries[key] = _compose(d, THETA_VAR, {z: 1 for z in arg}, work)
        return entries[key]

    u_cache = {}

    def u_at(arg: frozenset) -> Series:
        if arg not in u_cache:
            u_cache[arg] = compose_linear(u_inv, THETA_VAR, {z: 1 for z in arg}, work)
        return u_cache[arg]

    lin = {L: sum((work.gen(z) for z in L), work.zero()) for L in forms}
    numer = work.zero()
    for order in permutations(zs):
        chain = [frozenset(order[:r]) for r in range(1, n + 1)]
        matrix = [[entry(j - i + 1, frozenset(order[:n - j])) for j in range(1, n + 1)]
                  for i in range(1, n + 1)]
        term = _det(matrix, work)
        for L in chain:
            term = term * u_at(L)
        for L in forms:
            if L not in chain:
                term = term * lin[L]
        numer = numer + term
    zi = [work.index(z) for z in zs]
    terms = dict(numer.terms)
    bound = t_num
    for L in composite:
        terms = _divide_linear(terms, [work.index(z) for z in sorted(L)], zi, bound)
        bound -= 1
    out = {}
    for e, c in terms.items():
        f = tuple(x - 1 if i in zi else x for i, x in enumerate(e))
        if target.admits(f):
            out[f] = c
    return Series(target, out)


def bloch_okounkov_rhs(zs: Sequence[str], z_order: int, q_order: int,
                       qvar: str = "q") -> Series:
    """Determinant side for ``Tr_q(eps0(z_1)...eps0(z_N))`` in :func:`total_degree_ring`."""
    core = _sigma_sums(zs, z_order, q_order, qvar)
    return core * q_pochhammer_inverse(core.ring, qvar)


def trace_theorem_rhs(zs: Sequence[str], z_order: int, q_order: int,
                      qvar: str = "q") -> Series:
    """Inclusion-exclusion over subsets for ``Tr_q(G_{z_1}...G_{z_N})`` (pole-free ring)."""
    zs = list(zs)
    n = len(zs)
    target = total_degree_ring(zs, z_order, q_order, 0, qvar)
    margin = 2 * n
    cap = z_order + margin
    work = SeriesRing.of(*[(z, 2, cap + 2 * n) for z in zs], (qvar, 0, q_order),
                         caps=(Cap.of({z: 1 for z in zs}, cap),) if n > 1 else ())
    inv = {z: inv_varsigma(work, z) for z in zs}
    total = work.zero()
    for r in range(n + 1):
        for U in combinations(zs, r):
            part = _sigma_sums(U, cap, q_order, qvar).restrict(work) if U else work.one()
            for z in zs:
                if z not in U:
                    part = part * inv[z]
            total = total + (part if (n - r) % 2 == 0 else -part)
    for z in zs:
        total = total * inv[z]
    total = total * q_pochhammer_inverse(work, qvar)
    return fit(total, target)
