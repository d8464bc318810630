"""Classical q -> 1 limits and polynomial extrapolation to a zero step."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Sequence


def extrapolate_to_zero(hs: Sequence[float], ys: Sequence) -> tuple:
    """Neville extrapolation of samples ``ys`` at steps ``hs`` to ``h = 0``.

    Returns ``(value, estimate, diagonal)`` where ``diagonal[i]`` uses the
    first ``i + 1`` points and ``estimate`` is the gap between the last two
    diagonal entries.
    """
    if len(hs) != len(ys) or not hs:
        raise ValueError("need matching, nonempty hs and ys")
    prev = list(ys)
    diag = [ys[0]]
    table = [list(ys)]
    n = len(hs)
    for j in range(1, n):
        cur = [None] * n
        for i in range(j, n):
            hi, hl = hs[i], hs[i - j]
            cur[i] = (hl * prev[i] - hi * prev[i - 1]) / (hl - hi)
        table.append(cur)
        diag.append(cur[j])
        prev = cur
    est = abs(diag[-1] - diag[-2]) if n > 1 else math.inf
    return diag[-1], est, diag


def lebesgue_constant(hs: Sequence[float]) -> float:
    """Sum of |Lagrange weights| for evaluating the interpolant at 0."""
    total = 0.0
    for i, hi in enumerate(hs):
        w = 1.0
        for j, hj in enumerate(hs):
            if j != i:
                w *= hj / (hj - hi)
        total += abs(w)
    return total


def classical_euler_polynomial(n: int, x=0) -> Fraction:
    """``E_n(x)`` from the power series quotient ``2 e^{xt} / (e^t + 1)``."""
    x = Fraction(x)
    fact = [math.factorial(j) for j in range(n + 1)]
    num = [2 * x ** j / fact[j] for j in range(n + 1)]
    den = [Fraction(2)] + [Fraction(1, fact[j]) for j in range(1, n + 1)]
    quot: list[Fraction] = []
    for j in range(n + 1):
        acc = num[j] - sum(den[i] * quot[j - i] for i in range(1, j + 1))
        quot.append(acc / den[0])
    return quot[n] * fact[n]


def richardson_q_to_one(exact_at: Callable[[Fraction], Fraction],
                        ks: Sequence[int] = (3, 4, 5, 6)) -> tuple:
    """Extrapolate ``exact_at(1 - 10**-k)`` over ``ks`` to ``q = 1``.

    ``exact_at`` is evaluated in exact arithmetic, so the only rounding is
    the final float conversion. Returns ``(value, error_estimate)``.
    """
    hs = [10.0 ** -k for k in ks]
    ys = [float(exact_at(1 - Fraction(1, 10 ** k))) for k in ks]
    value, est, _ = extrapolate_to_zero(hs, ys)
    rounding = 2.0 ** -52 * lebesgue_constant(hs) * max(abs(y) for y in ys)
    return value, est + rounding
