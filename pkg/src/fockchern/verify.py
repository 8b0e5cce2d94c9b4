"""Verification suites: every module's invariants as exact coefficient checks.

Each check yields a :class:`Check`; a failure carries the first offending
exponent vector with both values.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import factorial
from typing import Callable, Iterator

from . import correlators as cor
from . import fock as fk
from . import operators as ops
from . import partitions as pt
from . import toda as td
from . import traces as tr
from .series import (Series, SeriesRing, first_difference, format_fraction, partial_derivative,
                     series_exp, series_invert, series_log)
from .special import exp_series, varsigma

SUITES = ("arith", "partitions", "fock", "operators", "correlators", "traces", "toda")


@dataclass
class Check:
    module: str
    identity: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f"  {self.detail}" if self.detail and not self.passed else ""
        return f"{status} {self.module}: {self.identity}{tail}"


def _describe(diff) -> str:
    e, x, y = diff
    return f"first difference at {list(e)}: {format_fraction(x)} vs {format_fraction(y)}"


class _Collector:
    def __init__(self, module: str):
        self.module = module
        self.checks: list[Check] = []

    def series_equal(self, identity: str, pairs: Iterator[tuple[str, Series, Series]]) -> None:
        for label, a, b in pairs:
            if a.ring != b.ring:
                self.checks.append(Check(self.module, identity, False, f"{label}: ring mismatch"))
                return
            d = first_difference(a, b)
            if d is not None:
                self.checks.append(Check(self.module, identity, False, f"{label}: {_describe(d)}"))
                return
        self.checks.append(Check(self.module, identity, True))

    def truth(self, identity: str, items: Iterator[tuple[str, bool]]) -> None:
        for label, ok in items:
            if not ok:
                self.checks.append(Check(self.module, identity, False, label))
                return
        self.checks.append(Check(self.module, identity, True))


# -- arith -----------------------------------------------------------------------

def _random_series(rng: random.Random, ring: SeriesRing, n_terms: int, pole_free=True) -> Series:
    terms = {}
    for _ in range(n_terms):
        e = tuple(rng.randint(0 if pole_free else -v.max_pole, v.max_degree) for v in ring.vars)
        terms[e] = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    return Series(ring, terms)


def suite_arith(max_n: int) -> list[Check]:
    col = _Collector("arith")
    rng = random.Random(0)
    ring = SeriesRing.of(("z", 0, 5), ("q", 0, 4))

    def axioms():
        for i in range(30):
            a, b, c = (_random_series(rng, ring, 5) for _ in range(3))
            yield f"assoc #{i}", (a * b) * c, a * (b * c)
            yield f"distrib #{i}", a * (b + c), a * b + a * c
            yield f"commute #{i}", a * b, b * a
    col.series_equal("ring axioms", axioms())

    def inverses():
        for i in range(20):
            a = _random_series(rng, ring, 4) + 1
            if a.constant_term:
                yield f"#{i}", a * series_invert(a), ring.one()
    col.series_equal("invert(a) * a = 1", inverses())

    def exp_log():
        for i in range(15):
            a = _random_series(rng, ring, 3)
            a = a - a.constant_term
            yield f"log exp #{i}", series_log(series_exp(a)), a
            yield f"exp log #{i}", series_exp(series_log(a + 1)), a + 1
    col.series_equal("exp/log round trip", exp_log())

    def leibniz():
        for i in range(15):
            a, b = _random_series(rng, ring, 4), _random_series(rng, ring, 4)
            lhs = partial_derivative(a * b, "z")
            rhs = (partial_derivative(a, "z") * b.restrict(lhs.ring)
                   + a.restrict(lhs.ring) * partial_derivative(b, "z"))
            yield f"#{i}", lhs, rhs
    col.series_equal("Leibniz rule", leibniz())

    def round_trip():
        laurent = SeriesRing.of(("z", 2, 4), ("q", 0, 3))
        for i in range(10):
            a = _random_series(rng, laurent, 6, pole_free=False)
            yield f"#{i}", a.to_json() == Series.from_json(a.to_json()).to_json()
    col.truth("serialization round trip", round_trip())

    z6 = SeriesRing.of(("z", 0, 6))
    want = Series(z6, {(2,): Fraction(1), (4,): Fraction(1, 12), (6,): Fraction(1, 360)})
    col.series_equal("varsigma squared", iter([("z^6", varsigma(z6, "z") ** 2, want)]))
    return col.checks


# -- partitions -------------------------------------------------------------------

def suite_partitions(max_n: int) -> list[Check]:
    col = _Collector("partitions")
    top = max(max_n, 1)
    col.truth("column orthogonality",
              ((f"n={n}", not pt.char_table(n).column_orthogonality_defects()) for n in range(top + 1)))
    col.truth("sum of squared dimensions is n!",
              ((f"n={n}", sum((factorial(n) // pt.hook_product(l)) ** 2 for l in pt.partitions_of(n))
                == factorial(n)) for n in range(top + 1)))
    col.truth("hook formula equals character at identity",
              ((f"{list(l)}", pt.mn_character(l, pt.Partition([1] * n)) == factorial(n) // pt.hook_product(l))
               for n in range(top + 1) for l in pt.partitions_of(n)))
    col.truth("contents of transpose are negated",
              ((f"{list(l)}", sorted(pt.contents(l.transpose())) == sorted(-c for c in pt.contents(l)))
               for n in range(top + 1) for l in pt.partitions_of(n)))

    def round_trips():
        for n in range(top + 1):
            for l in pt.partitions_of(n):
                for basis in fk.BASES:
                    v = fk.FockVector.basis_vector(l, basis)
                    other = fk.FIXED_POINT if basis == fk.POWER_SUM else fk.POWER_SUM
                    back = fk.basis_change(fk.basis_change(v, other), basis)
                    yield f"{basis} {list(l)}", back.terms == v.terms
    col.truth("basis change round trip", round_trips())
    return col.checks


# -- fock -------------------------------------------------------------------------

def heisenberg_failures(max_deg: int, max_k: int = 5) -> Iterator[tuple[str, bool]]:
    for n in range(max_deg + 1):
        for lam in pt.partitions_of(n):
            v = fk.FockVector.basis_vector(lam)
            for m in range(-max_k, max_k + 1):
                for k in range(-max_k, max_k + 1):
                    lhs = fk.operator_word([m, k], v) - fk.operator_word([k, m], v)
                    want = v * (m if m == -k else 0)
                    yield f"[p_{m}, p_{k}] on {list(lam)}", (lhs - want).is_zero()


def pairing_failures(max_deg: int) -> Iterator[tuple[str, bool]]:
    parts = pt.partitions_up_to(max_deg)
    for a in parts:
        va = fk.FockVector.basis_vector(a)
        fa = fk.FockVector.basis_vector(a, fk.FIXED_POINT)
        for b in parts:
            vb = fk.FockVector.basis_vector(b)
            fb = fk.FockVector.basis_vector(b, fk.FIXED_POINT)
            want = Fraction(1, pt.z_factor(a)) if a == b else 0
            yield f"<p_{list(a)}, p_{list(b)}>", fk.inner_product(va, vb) == want
            yield f"<[{list(a)}], [{list(b)}]>", fk.inner_product(fa, fb) == (1 if a == b else 0)


def suite_fock(max_n: int) -> list[Check]:
    col = _Collector("fock")
    deg = min(max_n, 8)
    col.truth("Heisenberg relations", heisenberg_failures(deg))
    col.truth("pairing and fixed-point orthonormality", pairing_failures(deg))

    def adjoint():
        parts = pt.partitions_up_to(deg)
        for k in range(1, 5):
            for a in parts:
                for b in parts:
                    if a.size - k != b.size:
                        continue
                    va, vb = fk.FockVector.basis_vector(a), fk.FockVector.basis_vector(b)
                    yield (f"k={k} {list(a)} {list(b)}",
                           fk.inner_product(fk.apply_p(k, va), vb) == fk.inner_product(va, fk.apply_p(-k, vb)))
    col.truth("p_k adjoint to p_{-k}", adjoint())
    col.truth("vacuum annihilated",
              ((f"k={k}", fk.apply_p(k, fk.FockVector.vacuum()).is_zero()) for k in range(1, 6)))
    col.truth("creation operators span", ((f"n={n}", not fk.spanning_defect(n)) for n in range(deg + 1)))

    ring = SeriesRing.of(("t1", 0, 3), ("t2", 0, 3), ("s1", 0, 3), ("s2", 0, 3))
    t = {1: ring.gen("t1"), 2: ring.gen("t2")}
    s = {1: ring.gen("s1"), 2: ring.gen("s2")}

    def gamma_adjoint():
        for n in range(4):
            for a in pt.partitions_of(n):
                for b in pt.partitions_up_to(3):
                    va, vb = fk.FockVector.basis_vector(a), fk.FockVector.basis_vector(b)
                    lhs = fk.inner_product(fk.gamma_plus(t, va), vb)
                    rhs = fk.inner_product(va, fk.gamma_minus(t, vb, 3))
                    lhs = lhs if isinstance(lhs, Series) else ring.const(lhs)
                    rhs = rhs if isinstance(rhs, Series) else ring.const(rhs)
                    yield f"{list(a)} {list(b)}", lhs, rhs
    col.series_equal("Gamma_+ adjoint to Gamma_-", gamma_adjoint())

    vac = fk.FockVector.vacuum()
    pair = fk.inner_product(fk.gamma_minus(t, vac, 9), fk.gamma_minus(s, vac, 9))
    want = series_exp(ring.gen("t1") * ring.gen("s1") + (ring.gen("t2") * ring.gen("s2")).scale(Fraction(1, 2)))
    col.series_equal("<Gamma_+(t) Gamma_-(s)> = exp(sum t_k s_k / k)", iter([("", pair, want)]))
    return col.checks


# -- operators ----------------------------------------------------------------------

def identify_failures(max_n: int, z_order: int) -> Iterator[tuple[str, Series, Series]]:
    ring = SeriesRing.of(("z", 0, z_order))
    work = SeriesRing.of(("z", 2, z_order + 1))
    from .special import inv_varsigma
    inv = inv_varsigma(work, "z")
    for n in range(max_n + 1):
        for lam in pt.partitions_of(n):
            eps = ops.epsilon0_eigenvalue(lam, work)
            lhs = ops.fit(inv * (eps - inv), ring)
            yield f"{list(lam)} regularized", lhs, ops.chern_eigenvalue(lam, ring)
            yield f"{list(lam)} master", ops.master_eigenvalue(lam, ring), ops.chern_eigenvalue(lam, ring)


def suite_operators(max_n: int) -> list[Check]:
    col = _Collector("operators")
    top = min(max_n, 12)
    col.series_equal("chern equals regularized epsilon0 (identify)", identify_failures(top, 12))
    lring = SeriesRing.of(("z", 1, 8))
    col.truth("epsilon0 residue is 1",
              ((f"{list(l)}", ops.epsilon0_eigenvalue(l, lring).coefficient(z=-1) == 1)
               for l in pt.partitions_up_to(top)))
    col.truth("chern constant term is |lam|",
              ((f"{list(l)}", ops.chern_eigenvalue(l, lring).constant_term == l.size)
               for l in pt.partitions_up_to(top)))
    ring = SeriesRing.of(("z", 0, 8))
    col.series_equal("twist m=0 is chern",
                     ((f"{list(l)}", ops.twisted_eigenvalue(l, 0, ring), ops.chern_eigenvalue(l, ring))
                      for l in pt.partitions_up_to(min(top, 10))))

    def twist_one():
        shift = ops.twist_series(1, "z", 8).restrict(SeriesRing.of(("z", 1, 8)))
        tail = (shift - SeriesRing.of(("z", 1, 8)).monomial({"z": -1})).restrict(ring)
        ez = exp_series(ring, "z", 1)
        for l in pt.partitions_up_to(min(top, 10)):
            yield f"{list(l)}", ops.twisted_eigenvalue(l, 1, ring) - tail, ez * ops.chern_eigenvalue(l, ring)
    col.series_equal("charge-1 twist is e^z times the charge-0 eigenvalue", twist_one())

    def routes():
        for n_eps in (1, 2, 3):
            zs = ["z"] if n_eps == 1 else [f"z{i}" for i in range(1, n_eps + 1)]
            order = 6 if n_eps < 3 else 4
            r = SeriesRing.of(*[(z, 1, order) for z in zs])
            deg = min(max_n, 6 if n_eps < 3 else 4)
            for n in range(deg + 1):
                for a in pt.partitions_of(n):
                    for b in pt.partitions_of(n):
                        yield (f"N={n_eps} {list(a)} {list(b)}",
                               ops.epsilon_product_vev(a, b, [0] * n_eps, zs, r),
                               cor.f_bullet(a, b, zs, r))
    col.series_equal("commutator route equals diagonal route", routes())

    def apply_route():
        r = SeriesRing.of(("z", 1, 6))
        op = ops.DiagonalOperator("epsilon0", "z")
        for n in range(min(max_n, 5) + 1):
            for a in pt.partitions_of(n):
                for b in pt.partitions_of(n):
                    w = ops.apply_diagonal([op], fk.FockVector.basis_vector(b), r)
                    val = fk.inner_product(fk.FockVector.basis_vector(a), w)
                    val = val if isinstance(val, Series) else r.const(val)
                    yield f"{list(a)} {list(b)}", val, cor.f_bullet(a, b, ["z"], r)
    col.series_equal("apply_diagonal pairing equals F", apply_route())
    return col.checks


# -- correlators ---------------------------------------------------------------------

def one_point_routes(max_n: int, z_order: int) -> Iterator[tuple[str, Series, Series]]:
    r = SeriesRing.of(("z", 1, z_order))
    for n in range(max_n + 1):
        for a in pt.partitions_of(n):
            for b in pt.partitions_of(n):
                d = cor.f_bullet(a, b, ["z"], r)
                yield f"closed {list(a)} {list(b)}", cor.one_point_closed_form(a, b, r), d
                yield f"commutator {list(a)} {list(b)}", cor.f_bullet(a, b, ["z"], r, "commutator"), d


def theorem_routes(max_n: int, z_order: int) -> Iterator[tuple[str, Series, Series]]:
    r = SeriesRing.of(("z", 0, z_order))
    for n in range(max_n + 1):
        for a in pt.partitions_of(n):
            for b in pt.partitions_of(n):
                g = cor.g_npoint(a, b, ["z"], r)
                yield f"theorem {list(a)} {list(b)}", cor.g_one_point_theorem(a, b, r), g
                yield f"relation {list(a)} {list(b)}", cor.g_from_relation(a, b, r), g


def inclusion_exclusion_routes(max_n: int, z_order: int, max_points: int = 3):
    for n_pts in range(1, max_points + 1):
        zs = [f"z{i}" for i in range(1, n_pts + 1)]
        r = SeriesRing.of(*[(z, 0, z_order) for z in zs])
        for n in range(max_n + 1):
            for a in pt.partitions_of(n):
                for b in pt.partitions_of(n):
                    yield (f"N={n_pts} {list(a)} {list(b)}",
                           cor.g_npoint(a, b, zs, r, "inclusion_exclusion"), cor.g_npoint(a, b, zs, r))


def suite_correlators(max_n: int) -> list[Check]:
    col = _Collector("correlators")
    deg = min(max_n, 8)
    col.series_equal("one-point routes agree", one_point_routes(deg, 8))
    col.series_equal("1-point theorem and relation", theorem_routes(deg, 8))
    col.series_equal("inclusion-exclusion equals direct", inclusion_exclusion_routes(min(deg, 6), 4))

    def symmetry():
        zs = ["z1", "z2"]
        r = SeriesRing.of(*[(z, 1, 5) for z in zs])
        swap = SeriesRing.of(*[(z, 1, 5) for z in reversed(zs)])
        for n in range(min(deg, 5) + 1):
            for a in pt.partitions_of(n):
                for b in pt.partitions_of(n):
                    f = cor.f_bullet(a, b, zs, r)
                    yield f"lam<->mu {list(a)} {list(b)}", f, cor.f_bullet(b, a, zs, r)
                    g = cor.f_bullet(a, b, ["z2", "z1"], swap).restrict(r)
                    yield f"z1<->z2 {list(a)} {list(b)}", f, _swap(g, r)
    col.series_equal("symmetry in lam, mu and the z's", symmetry())

    def pole_free():
        r = SeriesRing.of(("z1", 0, 4), ("z2", 0, 4))
        for n in range(min(deg, 5) + 1):
            for a in pt.partitions_of(n):
                for b in pt.partitions_of(n):
                    yield f"{list(a)} {list(b)}", cor.g_npoint(a, b, ["z1", "z2"], r).is_pole_free()
    col.truth("G is pole-free", pole_free())
    return col.checks


def _swap(s: Series, ring: SeriesRing) -> Series:
    """Exchange z1 and z2 in a two-variable series."""
    i, j = ring.index("z1"), ring.index("z2")
    out = {}
    for e, c in s.terms.items():
        f = list(e)
        f[i], f[j] = e[j], e[i]
        out[tuple(f)] = c
    return Series(ring, out)


# -- traces --------------------------------------------------------------------------

def bo_pairs(cases) -> Iterator[tuple[str, Series, Series]]:
    for n_pts, q_order, z_order in cases:
        zs = ["z"] if n_pts == 1 else [f"z{i}" for i in range(1, n_pts + 1)]
        ring = tr.total_degree_ring(zs, z_order, q_order)
        yield (f"N={n_pts} q^{q_order} z^{z_order}", tr.bloch_okounkov_rhs(zs, z_order, q_order),
               tr.trace("epsilon0", zs, ring))


def theorem_trace_pairs(cases) -> Iterator[tuple[str, Series, Series]]:
    for n_pts, q_order, z_order in cases:
        zs = ["z"] if n_pts == 1 else [f"z{i}" for i in range(1, n_pts + 1)]
        ring = tr.total_degree_ring(zs, z_order, q_order, 0)
        yield (f"N={n_pts} q^{q_order} z^{z_order}", tr.trace_theorem_rhs(zs, z_order, q_order),
               tr.trace("chern", zs, ring))


def suite_traces(max_n: int) -> list[Check]:
    col = _Collector("traces")
    q = max(max_n, 2)
    ring = SeriesRing.of(("z", 0, 10), ("q", 0, 12))
    col.series_equal("Jacobi triple product", iter([("", tr.jacobi_sum(ring), tr.jacobi_product(ring))]))
    qr = SeriesRing.of(("q", 0, 20))
    ident = tr.q_pochhammer_inverse(qr)
    col.truth("Tr_q I gives partition numbers",
              ((f"n={n}", ident.coefficient(q=n) == pt.partition_count(n)) for n in range(21)))
    th = tr.theta("z", 9, 6)
    neg = Series(th.ring, {(e[0], e[1]): c * (-1) ** e[0] for e, c in th.terms.items()})
    col.series_equal("Theta is odd", iter([("", neg, -th)]))
    col.series_equal("Bloch-Okounkov formula",
                     bo_pairs([(1, min(q, 10), 8), (2, min(q, 10), 8), (3, min(q, 6), 6)]))
    col.series_equal("trace theorem for Chern products",
                     theorem_trace_pairs([(1, min(q, 8), 8), (2, min(q, 8), 6)]))
    return col.checks


# -- toda ----------------------------------------------------------------------------

def suite_toda(max_n: int) -> list[Check]:
    col = _Collector("toda")
    col.truth("c-constant residue is m",
              ((f"m={m}", ops.c_constant_coeffs(m, 4)[0] == m) for m in range(-5, 6)))
    col.truth("c-constants vanish at m=0", iter([("", all(c == 0 for c in td.c_constants(0, 8)))]))
    n_max = min(max_n, 4)

    def residuals():
        for m in (-1, 0, 1):
            rep = td.toda_residual(td.TauRequest(m, 3, 4, n_max))
            yield f"m={m} (nonzero at degree {rep.max_nonzero_degree})", rep.passed
    col.truth("lowest Toda equation", residuals())
    col.truth("reduced Toda identity", iter([("w^4 x1^6", td.reduced_residual(4, 6).is_zero())]))

    req = td.TauRequest(0, 3, 3, n_max)
    ring = req.ring
    t0 = td.tau(req)
    untwisted = ring.zero()
    for n in range(n_max + 1):
        for nu in pt.partitions_of(n):
            coeffs = [ops.chern_coeffs(nu, 3).get(k, Fraction(0)) for k in range(4)]
            untwisted = untwisted + (td.schur_in("t", nu, 3, ring) * td.schur_in("s", nu, 3, ring)
                                     * td._exp_x(coeffs, ring))
    col.series_equal("tau at m=0 is untwisted", iter([("", t0, untwisted)]))
    x_names = [f"x{k}" for k in range(4)]
    from .series import substitute_zero
    slice0 = substitute_zero(t0, x_names)
    k_terms = sum((ring.gen(f"t{k}") * ring.gen(f"s{k}")).scale(Fraction(1, k)) for k in range(1, 4))
    col.series_equal("x=0 slice is exp(sum t_k s_k / k)", iter([("", slice0, series_exp(k_terms))]))

    def cross():
        zr = SeriesRing.of(("z", 0, 3))
        for n in range(1, n_max + 1):
            for a in pt.partitions_of(n, 3):
                for b in pt.partitions_of(n, 3):
                    g = cor.g_npoint(a, b, ["z"], zr)
                    for k in range(4):
                        powers = {}
                        for p in a:
                            powers[f"t{p}"] = powers.get(f"t{p}", 0) + 1
                        for p in b:
                            powers[f"s{p}"] = powers.get(f"s{p}", 0) + 1
                        powers[f"x{k}"] = 1
                        yield f"{list(a)} {list(b)} k={k}", t0.coefficient(powers) == g.coefficient(z=k)
    col.truth("tau linear in x matches one-point G", cross())
    return col.checks


RUNNERS: dict[str, Callable[[int], list[Check]]] = {
    "arith": suite_arith,
    "partitions": suite_partitions,
    "fock": suite_fock,
    "operators": suite_operators,
    "correlators": suite_correlators,
    "traces": suite_traces,
    "toda": suite_toda,
}


def run_suite(name: str, max_n: int = 6) -> list[Check]:
    names = SUITES if name == "all" else (name,)
    out = []
    for n in names:
        out.extend(RUNNERS[n](max_n))
    return out
