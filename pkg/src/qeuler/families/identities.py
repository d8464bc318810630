"""Residuals of the distribution relations and the character recurrence.

Each function returns ``lhs - rhs``; in exact mode a correct identity
gives exactly ``Fraction(0)``.
"""
from __future__ import annotations

import itertools

from ..characters import DirichletCharacter, evaluate
from ..qcore import QContext, q_bracket, q_power
from .closed_forms import chi_direct, chi_distribution, hr_pochhammer, plain_eq7


def distribution_residual_chi(n: int, x, ctx: QContext, chi: DirichletCharacter):
    """Direct character closed form minus its distribution-relation value."""
    qx = q_power(ctx.q, x, ctx)
    return chi_direct(n, qx, ctx, chi) - chi_distribution(n, qx, ctx, chi)


def distribution_residual_hr(n: int, x, ctx: QContext, h: int, r: int, f: int,
                             reading: str = "hr"):
    """Residual of the distribution relation for the shifted family.

    ``reading="hr"`` keeps the order ``(h, r)`` on the right-hand family;
    ``reading="plain"`` uses the plain q-Euler polynomial there, as the
    relation is sometimes written. Only the former vanishes in general.
    """
    if f < 1 or f % 2 == 0:
        raise ValueError("f must be odd and positive")
    if reading not in ("hr", "plain"):
        raise ValueError("reading must be 'hr' or 'plain'")
    q = ctx.q
    qx = q_power(q, x, ctx)
    lhs = hr_pochhammer(n, qx, ctx, h, r)
    ctx_f = ctx.with_q(q ** f)
    total = ctx.scalar(0)
    for a in itertools.product(range(f), repeat=r):
        weight = q ** sum((h - j) * aj for j, aj in enumerate(a, start=1))
        qy = qx * q ** sum(a)  # (q^f)^((x + sum a) / f)
        inner = hr_pochhammer(n, qy, ctx_f, h, r) if reading == "hr" else plain_eq7(n, qy, ctx_f)
        term = weight * inner
        total = total + term if sum(a) % 2 == 0 else total - term
    return lhs - q_bracket(f, ctx) ** n * total


def recurrence_residual(m: int, n: int, ctx: QContext, chi: DirichletCharacter):
    """``E(nf) - (-1)^n E(0) - 2 sum_{l<nf} (-1)^(n-1-l) chi(l) [l]^m`` for the character family."""
    if n < 1:
        raise ValueError("n must be positive")
    if m < 0:
        raise ValueError("m must be >= 0")
    f = chi.conductor
    q = ctx.q
    e_nf = chi_direct(m, q_power(q, n * f, ctx), ctx, chi)
    e_0 = chi_direct(m, ctx.scalar(1), ctx, chi)
    s = ctx.scalar(0)
    for l in range(n * f):
        c = evaluate(chi, l, ctx.mode)
        if c == 0:
            continue
        t = c * q_bracket(l, ctx) ** m
        s = s + t if (n - 1 - l) % 2 == 0 else s - t
    sign = 1 if n % 2 == 0 else -1
    return e_nf - sign * e_0 - 2 * s

