"""Named identity suites over default grids.

Each suite returns a :class:`SuiteResult` with one :class:`Case` per grid
point. Exact suites use zero tolerance; float suites carry their own.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .characters import DirichletCharacter, quadratic_character, trivial_character
from .families import (
    FamilySpec,
    classical_euler_polynomial,
    classical_limit,
    closed_form,
    closed_form_variants,
    distribution_residual_chi,
    distribution_residual_hr,
    euler_q_hr_series,
    recurrence_residual,
    series_partial,
    series_value,
)
from .padic import PAdicContext, QPAdic, family_integral, moment, polynomial_integrand, shift_identity_residual
from .qcore import QContext
from .zeta import ZetaRequest, interpolation_check, mellin_check


@dataclass(frozen=True)
class Case:
    label: str
    passed: bool
    residual: float
    detail: str = ""


@dataclass
class SuiteResult:
    name: str
    cases: list = field(default_factory=list)
    info: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    @property
    def max_residual(self) -> float:
        return max((c.residual for c in self.cases), default=0.0)

    @property
    def failures(self) -> list:
        return [c for c in self.cases if not c.passed]

    def add(self, label: str, residual, tol: float = 0.0, detail: str = "") -> None:
        res = float(abs(residual))
        self.cases.append(Case(label, res <= tol, res, detail))


@dataclass(frozen=True)
class Grid:
    """Optional overrides; ``None`` keeps a suite's default."""

    ns: Optional[Sequence[int]] = None
    xs: Optional[Sequence[int]] = None
    qs: Optional[Sequence[Fraction]] = None
    tol: Optional[float] = None

    def pick(self, attr: str, default):
        v = getattr(self, attr)
        return default if v is None else v


def characters() -> list:
    return [trivial_character(), quadratic_character(3), quadratic_character(5)]


def _chi_label(chi: DirichletCharacter) -> str:
    return "trivial" if chi.is_trivial else f"quad{chi.conductor}"


_WA = [((2,), (3,)), ((1, 2), (1, 0)), ((3, 1), (2, 3)), ((1, 2, 3), (0, 1, 2)), ((1, 1, 1), (3, 3, 3))]


def standard_families(r_max: int = 3) -> list:
    """Representative members of every kind, parameters at most 3."""
    rs = range(1, r_max + 1)
    wa = [(w, a) for w, a in _WA if len(w) <= r_max]
    out = [FamilySpec.plain()]
    out += [FamilySpec.order_r(r) for r in rs]
    out += [FamilySpec.extended_hr(h, r) for r in rs for h in (0, 1, 2, 3)]
    out += [FamilySpec.barnes(w) for w in [(1,), (3,), (1, 2), (2, 3), (1, 1, 2), (1, 2, 3)] if len(w) <= r_max]
    out += [FamilySpec.barnes_twisted(w, a) for w, a in wa]
    for c in characters():
        out += [FamilySpec.chi(c)] + [FamilySpec.chi_order_r(c, r) for r in rs]
        out += [FamilySpec.chi_barnes_twisted(c, w, a) for w, a in wa]
    return out


_EXACT_QS = (Fraction(1, 2), Fraction(1, 3), Fraction(3, 5))


def suite_two_path(grid: Grid = Grid()) -> SuiteResult:
    res = SuiteResult("two-path")
    for spec in standard_families():
        for q in grid.pick("qs", _EXACT_QS):
            ctx = QContext.exact(q)
            for n in grid.pick("ns", range(7)):
                for x in grid.pick("xs", (0, 1, 2)):
                    vals = closed_form_variants(spec, n, x, ctx)
                    ref = next(iter(vals.values()))
                    worst = max(abs(v - ref) for v in vals.values())
                    res.add(f"{spec.descriptor()} n={n} x={x} q={q} [{len(vals)} forms]", worst)
    return res


def _reduction_pairs(r_max: int = 3):
    for r in range(1, r_max + 1):
        yield f"barnes(1^{r}) = order_r({r})", FamilySpec.barnes((1,) * r), FamilySpec.order_r(r)
        for w in itertools.product((1, 2, 3), repeat=r):
            yield (f"barnes_twisted({w}, 0) = barnes({w})",
                   FamilySpec.barnes_twisted(w, (0,) * r), FamilySpec.barnes(w))
        triv = trivial_character()
        yield f"chi_order_r(trivial, {r}) = order_r({r})", FamilySpec.chi_order_r(triv, r), FamilySpec.order_r(r)
        for w, a in _WA:
            if len(w) == r:
                yield (f"chi_barnes_twisted(trivial, {w}, {a}) = barnes_twisted",
                       FamilySpec.chi_barnes_twisted(triv, w, a), FamilySpec.barnes_twisted(w, a))
    yield "extended_hr(1, 1) = plain", FamilySpec.extended_hr(1, 1), FamilySpec.plain()
    yield "chi(trivial) = plain", FamilySpec.chi(trivial_character()), FamilySpec.plain()


def suite_reductions(grid: Grid = Grid()) -> SuiteResult:
    res = SuiteResult("reductions")
    for label, a, b in _reduction_pairs():
        for q in grid.pick("qs", _EXACT_QS):
            ctx = QContext.exact(q)
            for n in grid.pick("ns", range(7)):
                for x in grid.pick("xs", (0, 1, 2)):
                    d = closed_form(a, n, x, ctx).value - closed_form(b, n, x, ctx).value
                    res.add(f"{label} n={n} x={x} q={q}", d)
    return res


def suite_symmetry(grid: Grid = Grid()) -> SuiteResult:
    res = SuiteResult("symmetry")
    ws = [(1, 2), (1, 3), (1, 2, 3), (2, 2, 3)]
    was = [((1, 2), (0, 3)), ((1, 2, 3), (0, 1, 2)), ((3, 1, 2), (1, 1, 0))]
    for q in grid.pick("qs", _EXACT_QS):
        ctx = QContext.exact(q)
        for n in grid.pick("ns", range(7)):
            for x in grid.pick("xs", (0, 1, 2)):
                for w in ws:
                    ref = closed_form(FamilySpec.barnes(w), n, x, ctx).value
                    for perm in itertools.permutations(w):
                        d = closed_form(FamilySpec.barnes(perm), n, x, ctx).value - ref
                        res.add(f"barnes {w} -> {perm} n={n} x={x} q={q}", d)
                for w, a in was:
                    pairs = list(zip(w, a))
                    for chi in characters():
                        ref = closed_form(FamilySpec.chi_barnes_twisted(chi, w, a), n, x, ctx).value
                        for perm in itertools.permutations(pairs):
                            pw, pa = zip(*perm)
                            d = closed_form(FamilySpec.chi_barnes_twisted(chi, pw, pa), n, x, ctx).value - ref
                            res.add(f"{_chi_label(chi)} twisted {pairs} -> {perm} n={n} x={x} q={q}", d)
    return res


def suite_distribution(grid: Grid = Grid()) -> SuiteResult:
    res = SuiteResult("distribution")
    qs = grid.pick("qs", (Fraction(1, 2), Fraction(1, 3)))
    for q in qs:
        ctx = QContext.exact(q)
        for n in grid.pick("ns", range(5)):
            for x in grid.pick("xs", (0, 1, 2)):
                for chi in characters():
                    res.add(f"chi f={chi.conductor} n={n} x={x} q={q}",
                            distribution_residual_chi(n, x, ctx, chi))
                for f in (1, 3, 5):
                    for h, r in ((1, 1), (2, 1), (2, 2), (3, 2), (0, 2)):
                        res.add(f"(h,r)=({h},{r}) f={f} n={n} x={x} q={q}",
                                distribution_residual_hr(n, x, ctx, h, r, f))
    # the right side read without the (h,r) order is not an identity; record it
    ctx = QContext.exact(Fraction(1, 2))
    plain = distribution_residual_hr(2, 1, ctx, 2, 2, 3, reading="plain")
    res.info.append(f"plain-order reading of the (h,r) relation, n=2 x=1 q=1/2 h=2 r=2 f=3: residual {plain}")
    return res


def suite_recurrence(grid: Grid = Grid()) -> SuiteResult:
    res = SuiteResult("recurrence")
    for q in grid.pick("qs", (Fraction(1, 2), Fraction(1, 3))):
        ctx = QContext.exact(q)
        for chi in characters():
            for m in grid.pick("ns", range(6)):
                for n in (1, 2, 3):
                    res.add(f"{_chi_label(chi)} m={m} n={n} q={q}", recurrence_residual(m, n, ctx, chi))
    return res


def padic_grid(p: int) -> int:
    """Working precision per prime for the default p-adic grid."""
    return {3: 6, 5: 5, 7: 4}.get(p, 4)


def suite_padic(grid: Grid = Grid(), primes: Sequence[int] = (3, 5, 7),
                precision: Optional[Callable[[int], int]] = None) -> SuiteResult:
    res = SuiteResult("padic")
    precision = precision or padic_grid
    specs = [FamilySpec.plain(), FamilySpec.order_r(2), FamilySpec.barnes((1, 2)),
             FamilySpec.barnes((2, 3)), FamilySpec.chi_order_r(quadratic_character(3), 2)]
    for p in primes:
        ctx = PAdicContext(p, precision(p))
        for qv in ([Fraction(v) for v in grid.qs] if grid.qs else (1 + p, 1 + 2 * p)):
            q = QPAdic(qv)
            ex = QContext.exact(qv)
            for n in grid.pick("ns", range(6)):
                for x in grid.pick("xs", (0, 1, 2)):
                    ref = closed_form(FamilySpec.plain(), n, x, ex).value
                    d = (moment(n, x, q, ctx) - ctx.number(ref)).residue
                    res.add(f"moment p={p} M={ctx.precision_M} q={qv} n={n} x={x}", d)
                    for spec in specs:
                        ref = closed_form(spec, n, x, ex).value
                        d = (family_integral(spec, n, x, q, ctx) - ctx.number(ref)).residue
                        res.add(f"{spec.descriptor()} p={p} M={ctx.precision_M} q={qv} n={n} x={x}", d)
        for deg in range(5):
            for coeffs in _shift_polys(deg):
                for shift in (1, 2, 3):
                    d = shift_identity_residual(polynomial_integrand(coeffs, ctx), shift, ctx).residue
                    res.add(f"shift p={p} coeffs={coeffs} n={shift}", d)
    return res


def _shift_polys(deg: int) -> list:
    mono = [0] * deg + [1]
    mixed = [Fraction(1, 2) * (-1) ** i * (i + 1) for i in range(deg + 1)]
    return [mono, mixed] if deg else [mono]


def suite_q_limit(grid: Grid = Grid()) -> SuiteResult:
    res = SuiteResult("q-limit")
    tol = grid.pick("tol", 1e-6)
    for n in grid.pick("ns", range(5)):
        for x in grid.pick("xs", (0,)):
            ev = classical_limit(FamilySpec.plain(), n, x)
            want = classical_euler_polynomial(n, x)
            res.add(f"E_{n}({x}) want {want}", ev.value.value - float(want), tol,
                    f"estimate {ev.error_bound:.2e}")
    return res


def _zeta_configs(r_max: int = 2):
    for r in range(1, r_max + 1):
        for a in itertools.product((1, 2), repeat=r):
            for w in itertools.product((1, 2), repeat=r):
                yield w, a


def suite_interpolation(grid: Grid = Grid()) -> SuiteResult:
    res = SuiteResult("interpolation")
    tol = grid.pick("tol", 1e-8)
    worst_stated = 0.0
    for chi in [None, quadratic_character(3), quadratic_character(5)]:
        for w, a in _zeta_configs():
            for q in grid.pick("qs", (Fraction(1, 2), Fraction(1, 3))):
                for x in grid.pick("xs", (1, 2)):
                    for n in grid.pick("ns", range(5)):
                        req = ZetaRequest(0, x, q, len(w), w, a, chi)
                        rep = interpolation_check(n, req, tol)
                        lab = "zeta" if chi is None else f"l[quad{chi.conductor}]"
                        res.cases.append(Case(f"{lab} w={w} a={a} q={q} x={x} n={n}", rep.passed,
                                              rep.residual_derived, f"stated-form residual {rep.residual_stated:.3e}"))
                        worst_stated = max(worst_stated, rep.residual_stated)
    rep = interpolation_check(0, ZetaRequest(0, 1, Fraction(1, 2), 1, (1,), (1,)))
    res.info.append(f"n=0 r=1 q=1/2 x=1: zeta={rep.L.real:.12g}, family={rep.R}, "
                    f"(-1)^(n+1) relation residual {rep.residual_stated:.12g}")
    res.info.append(f"largest (-1)^(n+1) relation residual on the grid: {worst_stated:.6g}")
    return res


def suite_mellin(grid: Grid = Grid()) -> SuiteResult:
    res = SuiteResult("mellin")
    tol = grid.pick("tol", 1e-6)
    configs = [((1,), (1,)), ((2,), (1,)), ((1, 1), (1, 1)), ((1, 2), (1, 2))]
    for s in (1.0, 2.0, 1.5):
        for w, a in configs:
            for q in grid.pick("qs", (Fraction(1, 2), Fraction(1, 3))):
                for x in grid.pick("xs", (1,)):
                    req = ZetaRequest(s, x, float(q), len(w), w, a)
                    rep = mellin_check(s, req, tol)
                    res.add(f"s={s} w={w} a={a} q={q} x={x}", rep.difference, tol,
                            f"quadrature error {rep.quadrature_error:.2e}")
    return res


def suite_series(grid: Grid = Grid()) -> SuiteResult:
    """Direct sums in the geometric regime, with tail-bound soundness."""
    res = SuiteResult("series")
    tol = grid.pick("tol", 1e-10)
    specs = [FamilySpec.barnes_twisted((1,), (1,)), FamilySpec.barnes_twisted((1, 2), (1, 1)),
             FamilySpec.barnes_twisted((2, 1), (2, 3)), FamilySpec.barnes_twisted((1, 1, 1), (1, 2, 3)),
             FamilySpec.chi_barnes_twisted(quadratic_character(3), (1, 2), (1, 2)),
             FamilySpec.chi_barnes_twisted(quadratic_character(5), (1,), (2,))]
    for q in grid.pick("qs", (Fraction(1, 2), Fraction(1, 3))):
        fctx = QContext.float(float(q))
        ectx = QContext.exact(q)
        for n in grid.pick("ns", range(5)):
            for x in grid.pick("xs", (0, 1, 2)):
                for spec in specs:
                    exact = float(closed_form(spec, n, x, ectx).value)
                    ev = series_value(spec, n, x, fctx, tol)
                    res.add(f"{spec.descriptor()} n={n} x={x} q={q} closed-form", ev.value.value - exact, tol)
                    # soundness: the bound at a coarse truncation covers the refinement change
                    M = max(1, ev.truncation // 3)
                    coarse, tail, rnd = series_partial(spec, n, x, fctx, M)
                    fine, _, rnd_f = series_partial(spec, n, x, fctx, ev.truncation)
                    change = abs(coarse - fine)
                    res.cases.append(Case(f"{spec.descriptor()} n={n} x={x} q={q} tail M={M}",
                                          bool(change <= tail + rnd + rnd_f), float(change),
                                          f"bound {tail + rnd + rnd_f:.3e}"))
                for h, r in ((2, 1), (3, 2), (4, 3)):
                    exact = float(closed_form(FamilySpec.extended_hr(h, r), n, x, ectx).value)
                    ev = euler_q_hr_series(n, x, fctx, h, r, tol)
                    res.add(f"(h,r)=({h},{r}) n={n} x={x} q={q} q-binomial series", ev.value.value - exact, tol)
    return res


def suite_abel(grid: Grid = Grid()) -> SuiteResult:
    """Abel-summed series where twists vanish and terms do not decay."""
    res = SuiteResult("abel")
    tol = grid.pick("tol", 1e-6)
    specs = [FamilySpec.order_r(1), FamilySpec.order_r(2),
             FamilySpec.chi_order_r(quadratic_character(3), 1), FamilySpec.chi_order_r(quadratic_character(3), 2),
             FamilySpec.chi_order_r(quadratic_character(5), 1), FamilySpec.chi_order_r(quadratic_character(5), 2)]
    for q in grid.pick("qs", (Fraction(1, 2), Fraction(1, 3))):
        fctx = QContext.float(float(q))
        ectx = QContext.exact(q)
        for n in grid.pick("ns", range(5)):
            for x in grid.pick("xs", (0, 1, 2)):
                for spec in specs:
                    exact = float(closed_form(spec, n, x, ectx).value)
                    ev = series_value(spec, n, x, fctx, tol)
                    err = abs(ev.value.value - exact)
                    res.cases.append(Case(f"{spec.descriptor()} n={n} x={x} q={q}",
                                          bool(err <= ev.error_bound <= tol), float(err), f"bound {ev.error_bound:.2e}"))
    return res


SUITES: dict = {
    "two-path": suite_two_path,
    "reductions": suite_reductions,
    "symmetry": suite_symmetry,
    "distribution": suite_distribution,
    "recurrence": suite_recurrence,
    "padic": suite_padic,
    "interpolation": suite_interpolation,
    "mellin": suite_mellin,
    "q-limit": suite_q_limit,
    "series": suite_series,
    "abel": suite_abel,
}


def run_suite(name: str, grid: Grid = Grid()) -> SuiteResult:
    try:
        fn = SUITES[name]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    return fn(grid)
