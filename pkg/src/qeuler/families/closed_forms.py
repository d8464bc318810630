"""Closed-form evaluators for every q-Euler family.

All internal evaluators take ``qx = q**x`` rather than ``x`` itself. That is
what lets the distribution relations evaluate a family at base ``q**f`` and
a fractional argument ``(x + a) / f`` while staying in exact arithmetic:
``(q**f) ** ((x + a) / f) == q ** (x + a)``.

Shared shape::

    2**r / (1 - q)**n * sum_l C(n, l) (-1)**l q**(l x) * inner(l)
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache

from ..characters import DirichletCharacter, evaluate, trivial_character
from ..errors import QEqualsOneInExactMode, VanishingPochhammerFactor
from ..qcore import ApproxScalar, QContext, as_integer, q_bracket, q_pochhammer, q_power
from .limits import richardson_q_to_one
from .spec import Evaluation, FamilySpec


@lru_cache(maxsize=8192)
def _qp(q, e: int):
    return q ** e


def _is_zero(v) -> bool:
    if isinstance(v, ApproxScalar):
        return abs(v) <= v.abs_error
    return v == 0


def _inv_one_plus(v):
    d = 1 + v
    if _is_zero(d):
        raise VanishingPochhammerFactor("a factor 1 + q**e vanishes")
    return 1 / d


def _chi_values(chi: DirichletCharacter, ctx: QContext) -> list:
    return [evaluate(chi, b, ctx.mode) for b in range(chi.conductor)]


def _lsum(n: int, qx, ctx: QContext, r: int, inner):
    q = ctx.q
    if ctx.is_exact and q == 1:
        raise QEqualsOneInExactMode("q=1 invalid in exact mode")
    if n < 0:
        raise ValueError("n must be >= 0")
    total = ctx.scalar(0)
    qxl = ctx.scalar(1)
    for l in range(n + 1):
        term = math.comb(n, l) * qxl * inner(l)
        total = total + term if l % 2 == 0 else total - term
        qxl = qxl * qx
    return 2 ** r / (1 - q) ** n * total


# single-family formulas -------------------------------------------------------

def plain_eq7(n, qx, ctx):
    q = ctx.q
    return _lsum(n, qx, ctx, 1, lambda l: _inv_one_plus(_qp(q, l)))


def order_r_direct(n, qx, ctx, r):
    q = ctx.q
    return _lsum(n, qx, ctx, r, lambda l: _inv_one_plus(_qp(q, l)) ** r)


def order_r_residue_split(n, qx, ctx, r, f):
    """Order-r form with every index split as ``a + f m`` (``f`` odd)."""
    q = ctx.q

    def inner(l):
        s = ctx.scalar(0)
        for a in itertools.product(range(f), repeat=r):
            t = _qp(q, l * sum(a))
            s = s + t if sum(a) % 2 == 0 else s - t
        return s * _inv_one_plus(_qp(q, l * f)) ** r

    return _lsum(n, qx, ctx, r, inner)


def hr_pochhammer(n, qx, ctx, h, r):
    q = ctx.q

    def inner(l):
        d = q_pochhammer(-_qp(q, h - r + l), r, ctx)
        if _is_zero(d):
            raise VanishingPochhammerFactor(f"(-q^{h - r + l}; q)_{r} vanishes")
        return 1 / d

    return _lsum(n, qx, ctx, r, inner)


def hr_product(n, qx, ctx, h, r):
    q = ctx.q

    def inner(l):
        p = ctx.scalar(1)
        for j in range(1, r + 1):
            p = p * _inv_one_plus(_qp(q, h - j + l))
        return p

    return _lsum(n, qx, ctx, r, inner)


def barnes_direct(n, qx, ctx, w):
    q = ctx.q

    def inner(l):
        p = ctx.scalar(1)
        for wj in w:
            p = p * _inv_one_plus(_qp(q, l * wj))
        return p

    return _lsum(n, qx, ctx, len(w), inner)


def twisted_direct(n, qx, ctx, w, a):
    q = ctx.q

    def inner(l):
        p = ctx.scalar(1)
        for wj, aj in zip(w, a):
            p = p * _inv_one_plus(_qp(q, l * wj + aj))
        return p

    return _lsum(n, qx, ctx, len(w), inner)


def chi_direct(n, qx, ctx, chi):
    q, f = ctx.q, chi.conductor
    vals = _chi_values(chi, ctx)

    def inner(l):
        s = ctx.scalar(0)
        for b in range(f):
            if vals[b] != 0:
                t = vals[b] * _qp(q, l * b)
                s = s + t if b % 2 == 0 else s - t
        return s * _inv_one_plus(_qp(q, l * f))

    return _lsum(n, qx, ctx, 1, inner)


def chi_distribution(n, qx, ctx, chi):
    """``[f]^n sum_a chi(a) (-1)^a E_{n, q^f}((x + a) / f)``."""
    q, f = ctx.q, chi.conductor
    vals = _chi_values(chi, ctx)
    ctx_f = ctx.with_q(_qp(q, f))
    s = ctx.scalar(0)
    for b in range(f):
        if vals[b] != 0:
            t = vals[b] * plain_eq7(n, qx * _qp(q, b), ctx_f)
            s = s + t if b % 2 == 0 else s - t
    return q_bracket(f, ctx) ** n * s


def chi_order_rfold(n, qx, ctx, chi, r):
    """Order-r character family summed over all of ``(Z/f)^r``."""
    q, f = ctx.q, chi.conductor
    vals = _chi_values(chi, ctx)

    def inner(l):
        s = ctx.scalar(0)
        for bs in itertools.product(range(f), repeat=r):
            c = 1
            for b in bs:
                c = c * vals[b]
            if c != 0:
                t = c * _qp(q, l * sum(bs))
                s = s + t if sum(bs) % 2 == 0 else s - t
        return s * _inv_one_plus(_qp(q, l * f)) ** r

    return _lsum(n, qx, ctx, r, inner)


def chi_order_factored(n, qx, ctx, chi, r):
    q, f = ctx.q, chi.conductor
    vals = _chi_values(chi, ctx)

    def inner(l):
        s = ctx.scalar(0)
        for b in range(f):
            if vals[b] != 0:
                t = vals[b] * _qp(q, l * b)
                s = s + t if b % 2 == 0 else s - t
        return (s * _inv_one_plus(_qp(q, l * f))) ** r

    return _lsum(n, qx, ctx, r, inner)


# general character-twisted Barnes family ------------------------------------

def general_rfold(n, qx, ctx, chi, w, a):
    """Twisted Barnes family with character, as an r-fold sum over ``(Z/f)^r``."""
    q, f, r = ctx.q, chi.conductor, len(w)
    vals = _chi_values(chi, ctx)

    def inner(l):
        e = [l * wj + aj for wj, aj in zip(w, a)]
        s = ctx.scalar(0)
        for bs in itertools.product(range(f), repeat=r):
            c = 1
            for b in bs:
                c = c * vals[b]
            if c == 0:
                continue
            t = c * _qp(q, sum(ej * b for ej, b in zip(e, bs)))
            s = s + t if sum(bs) % 2 == 0 else s - t
        den = ctx.scalar(1)
        for ej in e:
            den = den * _inv_one_plus(_qp(q, ej * f))
        return s * den

    return _lsum(n, qx, ctx, r, inner)


def general_factored(n, qx, ctx, chi, w, a, period_multiple=1):
    """Same family as :func:`general_rfold`, one geometric factor per index.

    ``period_multiple`` (odd) splits indices modulo ``period_multiple * f``
    instead of ``f``; the value must not change.
    """
    if period_multiple < 1 or period_multiple % 2 == 0:
        raise ValueError("period_multiple must be odd and positive")
    q, f = ctx.q, chi.conductor
    period = f * period_multiple
    vals = _chi_values(chi, ctx)

    def inner(l):
        p = ctx.scalar(1)
        for wj, aj in zip(w, a):
            e = l * wj + aj
            s = ctx.scalar(0)
            for b in range(period):
                c = vals[b % f]
                if c != 0:
                    t = c * _qp(q, e * b)
                    s = s + t if b % 2 == 0 else s - t
            p = p * s * _inv_one_plus(_qp(q, e * period))
        return p

    return _lsum(n, qx, ctx, len(w), inner)


# public evaluators ------------------------------------------------------------

def _qx(x, ctx: QContext):
    return q_power(ctx.q, x, ctx)


def _wrap(value) -> Evaluation:
    err = value.abs_error if isinstance(value, ApproxScalar) else 0.0
    return Evaluation(value, "closed_form", err)


def _check_ints(name, seq, ctx):
    if ctx.is_exact:
        for v in seq:
            if as_integer(v) is None:
                raise ValueError(f"{name} must be integers in exact mode, got {v}")


def _ints(seq):
    return tuple(as_integer(v) if as_integer(v) is not None else v for v in seq)


def euler_q(n: int, x, ctx: QContext) -> Evaluation:
    """q-Euler polynomial ``E_{n,q}(x)``."""
    if ctx.is_classical_limit:
        return classical_limit(FamilySpec.plain(), n, x)
    return _wrap(plain_eq7(n, _qx(x, ctx), ctx))


def euler_q_order(n: int, x, ctx: QContext, r: int) -> Evaluation:
    """q-Euler polynomial of order ``r``."""
    if ctx.is_classical_limit:
        return classical_limit(FamilySpec.order_r(r), n, x)
    return _wrap(order_r_direct(n, _qx(x, ctx), ctx, r))


def euler_q_hr(n: int, x, ctx: QContext, h: int, r: int) -> Evaluation:
    """Extended higher-order q-Euler polynomial with shift ``h`` (Pochhammer form)."""
    if ctx.is_classical_limit:
        return classical_limit(FamilySpec.extended_hr(h, r), n, x)
    return _wrap(hr_pochhammer(n, _qx(x, ctx), ctx, h, r))


def euler_barnes(n: int, x, ctx: QContext, w) -> Evaluation:
    _check_ints("weights", w, ctx)
    if ctx.is_classical_limit:
        return classical_limit(FamilySpec.barnes(w), n, x)
    return _wrap(barnes_direct(n, _qx(x, ctx), ctx, _ints(w)))


def euler_barnes_twisted(n: int, x, ctx: QContext, w, a) -> Evaluation:
    _check_ints("weights", w, ctx)
    _check_ints("twists", a, ctx)
    if len(w) != len(a):
        raise ValueError("weights and twists differ in length")
    if ctx.is_classical_limit:
        return classical_limit(FamilySpec.barnes_twisted(w, a), n, x)
    return _wrap(twisted_direct(n, _qx(x, ctx), ctx, _ints(w), _ints(a)))


def euler_chi(n: int, x, ctx: QContext, chi: DirichletCharacter) -> Evaluation:
    """Generalized q-Euler polynomial attached to ``chi`` (direct closed form)."""
    if ctx.is_classical_limit:
        return classical_limit(FamilySpec.chi(chi), n, x)
    return _wrap(chi_direct(n, _qx(x, ctx), ctx, chi))


def euler_chi_distribution(n: int, x, ctx: QContext, chi: DirichletCharacter) -> Evaluation:
    """The same value as :func:`euler_chi`, through the distribution relation."""
    return _wrap(chi_distribution(n, _qx(x, ctx), ctx, chi))


def euler_chi_order(n: int, x, ctx: QContext, chi: DirichletCharacter, r: int) -> Evaluation:
    if ctx.is_classical_limit:
        return classical_limit(FamilySpec.chi_order_r(chi, r), n, x)
    return _wrap(chi_order_rfold(n, _qx(x, ctx), ctx, chi, r))


def euler_chi_barnes_twisted(n: int, x, ctx: QContext, chi: DirichletCharacter, w, a) -> Evaluation:
    _check_ints("weights", w, ctx)
    _check_ints("twists", a, ctx)
    if len(w) != len(a):
        raise ValueError("weights and twists differ in length")
    if ctx.is_classical_limit:
        return classical_limit(FamilySpec.chi_barnes_twisted(chi, w, a), n, x)
    return _wrap(general_rfold(n, _qx(x, ctx), ctx, chi, _ints(w), _ints(a)))


def closed_form(spec: FamilySpec, n: int, x, ctx: QContext) -> Evaluation:
    """Primary closed form for any :class:`FamilySpec`."""
    k = spec.kind
    if k == "plain":
        return euler_q(n, x, ctx)
    if k == "order_r":
        return euler_q_order(n, x, ctx, spec.r)
    if k == "extended_hr":
        return euler_q_hr(n, x, ctx, spec.h, spec.r)
    if k == "barnes":
        return euler_barnes(n, x, ctx, spec.weights)
    if k == "barnes_twisted":
        return euler_barnes_twisted(n, x, ctx, spec.weights, spec.twists)
    if k == "chi":
        return euler_chi(n, x, ctx, spec.character)
    if k == "chi_order_r":
        return euler_chi_order(n, x, ctx, spec.character, spec.r)
    return euler_chi_barnes_twisted(n, x, ctx, spec.character, spec.weights, spec.twists)


def closed_form_variants(spec: FamilySpec, n: int, x, ctx: QContext) -> dict:
    """Every independent closed form implemented for ``spec``, keyed by name.

    All entries must agree; in exact mode they agree as rationals.
    """
    qx = _qx(x, ctx)
    r = spec.r
    w, a, chi = spec.general_parameters()
    w, a = _ints(w), _ints(a)
    triv = trivial_character()
    k = spec.kind
    out = {}
    if k == "plain":
        out["eq7"] = plain_eq7(n, qx, ctx)
        out["order_r=1"] = order_r_direct(n, qx, ctx, 1)
        out["hr(1,1)"] = hr_pochhammer(n, qx, ctx, 1, 1)
        out["residue_split_f3"] = order_r_residue_split(n, qx, ctx, 1, 3)
    elif k == "order_r":
        out["direct"] = order_r_direct(n, qx, ctx, r)
        out["residue_split_f3"] = order_r_residue_split(n, qx, ctx, r, 3)
    elif k == "extended_hr":
        out["pochhammer"] = hr_pochhammer(n, qx, ctx, spec.h, r)
        out["product"] = hr_product(n, qx, ctx, spec.h, r)
    elif k == "barnes":
        out["direct"] = barnes_direct(n, qx, ctx, w)
    elif k == "barnes_twisted":
        out["direct"] = twisted_direct(n, qx, ctx, w, a)
        out["residue_split_f3_factored"] = general_factored(n, qx, ctx, triv, w, a, 3)
    elif k == "chi":
        out["direct"] = chi_direct(n, qx, ctx, chi)
        out["distribution"] = chi_distribution(n, qx, ctx, chi)
        out["order_rfold_r=1"] = chi_order_rfold(n, qx, ctx, chi, 1)
    elif k == "chi_order_r":
        out["rfold"] = chi_order_rfold(n, qx, ctx, chi, r)
        out["factored"] = chi_order_factored(n, qx, ctx, chi, r)
    if k in ("barnes", "order_r", "extended_hr", "plain"):
        out["residue_split_f3_factored"] = general_factored(n, qx, ctx, triv, w, a, 3)
    out["general_rfold"] = general_rfold(n, qx, ctx, chi, w, a)
    out["general_factored"] = general_factored(n, qx, ctx, chi, w, a)
    if not chi.is_trivial and k == "chi_barnes_twisted":
        out["general_factored_period3"] = general_factored(n, qx, ctx, chi, w, a, 3)
    return out


def classical_limit(spec: FamilySpec, n: int, x, ks=(3, 4, 5, 6)) -> Evaluation:
    """q -> 1 value of a family by Richardson extrapolation over ``q = 1 - 10**-k``."""
    xi = as_integer(x)
    if xi is None:
        raise ValueError("the classical limit is evaluated at integer x")

    def at(q: Fraction):
        return closed_form(spec, n, xi, QContext.exact(q)).value

    value, est = richardson_q_to_one(at, ks)
    return Evaluation(ApproxScalar(value, 0.0, est), "closed_form", est)
