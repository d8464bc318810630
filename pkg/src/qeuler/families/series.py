"""Series evaluation of the q-Euler families.

The defining multi-series

    2**r sum_m prod_j chi(m_j) (-1)**|m| q**(a.m) [x + w.m]_q**n

converges geometrically only when every twist ``a_j`` is positive. With
some ``a_j == 0`` the terms do not tend to zero; the series is then Abel
summed: ``S(rho)`` (each term weighted by ``rho**|m|``) is evaluated on
``rho = 1 - 2**-k`` and extrapolated to ``rho = 1``.
"""
from __future__ import annotations

import math
from functools import lru_cache
from itertools import count

import numpy as np
from scipy.signal import lfilter

from .._shells import compositions, shell_tail_bound, shells_needed
from ..characters import DirichletCharacter, evaluate
from ..errors import SeriesNotConvergent
from ..qcore import FLOAT, ApproxScalar, QContext
from .limits import extrapolate_to_zero
from .spec import Evaluation, FamilySpec

_EPS = 2.0 ** -52
_MAX_SHELL_TERMS = 4_000_000


def _real_q(ctx: QContext) -> float:
    q = ctx.q
    if isinstance(q, ApproxScalar):
        if q.imag != 0.0:
            raise ValueError("series evaluation needs real q")
        q = q.real
    q = float(q)
    if not 0.0 < q < 1.0:
        raise SeriesNotConvergent(f"series evaluation needs 0 < q < 1, got {q}")
    return q


def _chi_array(chi: DirichletCharacter) -> np.ndarray:
    return np.array([evaluate(chi, b, FLOAT).value for b in range(chi.conductor)])


def _bracket_sup(x: float, q: float) -> float:
    """Bound on ``|[y]_q|`` over ``y >= x``."""
    return max(1.0, q ** x if x < 0 else 1.0) / (1.0 - q)


def _bracket(y: np.ndarray, q: float) -> np.ndarray:
    return -np.expm1(y * math.log(q)) / (1.0 - q)


class _Params:
    def __init__(self, spec: FamilySpec, n: int, x, ctx: QContext):
        if n < 0:
            raise ValueError("n must be >= 0")
        w, a, chi = spec.general_parameters()
        self.n = n
        self.x = float(x)
        self.q = _real_q(ctx)
        self.r = spec.r
        self.w = np.array([float(v) for v in w])
        self.a = np.array([float(v) for v in a])
        self.chi = chi
        self.chi_arr = _chi_array(chi)
        self.is_complex = bool(np.any(self.chi_arr.imag != 0))
        self.scale = 2.0 ** self.r
        self.term_bound = self.scale * _bracket_sup(self.x, self.q) ** n


def _shell_sum(p: _Params, k: int):
    comps = compositions(p.r, k)
    mag = np.exp((comps @ p.a) * math.log(p.q)) * _bracket(p.x + comps @ p.w, p.q) ** p.n
    if p.chi.conductor > 1:
        mag = mag * np.prod(p.chi_arr[comps % p.chi.conductor], axis=1)
    sign = -1.0 if k % 2 else 1.0
    re = math.fsum(np.real(mag)) * sign * p.scale
    im = math.fsum(np.imag(mag)) * sign * p.scale if p.is_complex else 0.0
    return complex(re, im), float(np.sum(np.abs(mag))) * p.scale


def _rounding(p: _Params, abs_sum: float) -> float:
    return (4 * p.n + 24) * _EPS * abs_sum


def series_partial(spec: FamilySpec, n: int, x, ctx: QContext, M: int) -> tuple:
    """Direct sum over shells ``0..M``: ``(value, tail_bound, rounding_bound)``."""
    p = _Params(spec, n, x, ctx)
    if np.any(p.a <= 0):
        raise SeriesNotConvergent("direct summation needs every twist positive")
    total, abs_sum = 0j, 0.0
    for k in range(M + 1):
        s, a = _shell_sum(p, k)
        total += s
        abs_sum += a
    rho = p.q ** float(np.min(p.a))
    return total, p.term_bound * shell_tail_bound(p.r, rho, M), _rounding(p, abs_sum)


def _direct(p: _Params, tol: float) -> Evaluation:
    rho = p.q ** float(np.min(p.a))
    M = shells_needed(p.r, rho, tol / (2 * p.term_bound))
    if math.comb(M + p.r, p.r) > _MAX_SHELL_TERMS:
        raise SeriesNotConvergent(f"direct sum needs {M} shells, over budget")
    total, abs_sum = 0j, 0.0
    for k in range(M + 1):
        s, a = _shell_sum(p, k)
        total += s
        abs_sum += a
    err = p.term_bound * shell_tail_bound(p.r, rho, M) + _rounding(p, abs_sum)
    if err > tol:
        raise SeriesNotConvergent(f"bound {err:.3g} above tol {tol:.3g}")
    return Evaluation(ApproxScalar(total.real, total.imag, err), "series_direct", err, truncation=M)


@lru_cache(maxsize=256)
def _abel_weights(r, w, a, chi_arr, q, rho, length):
    """Coefficients ``d[y]`` of ``[x + y]^n`` in ``S(rho)``, plus their abs-mass bound.

    Index ``j`` contributes ``g(m) = chi(m) (-1)^m (rho q^a_j)^m`` at
    position ``w_j m``. Since ``g(m + f) = -c^f g(m)`` for odd ``f``, its
    generating function is a ratio of polynomials and each factor is applied
    as an IIR filter instead of a full convolution.
    """
    f = len(chi_arr)
    chi_arr = np.array(chi_arr)
    d = np.zeros(length, dtype=chi_arr.dtype)
    d[0] = 1.0
    mass = 1.0
    for wj, aj in zip(w, a):
        c = rho * q ** aj
        b = np.arange(f)
        taps = chi_arr * np.where(b % 2, -1.0, 1.0) * c ** b
        num = np.zeros(wj * (f - 1) + 1, dtype=taps.dtype)
        num[wj * b] = taps
        den = np.zeros(wj * f + 1)
        den[0], den[wj * f] = 1.0, c ** f
        d = lfilter(num, den, d)
        mass *= float(np.sum(np.abs(taps))) / (1.0 - c ** f)
    d.setflags(write=False)
    return d, mass


def _abel_at(p: _Params, rho: float, trunc_target: float) -> tuple:
    w = tuple(int(v) for v in p.w)
    a_min = float(np.min(p.a))
    rho_eff = rho * p.q ** a_min
    K = shells_needed(p.r, rho_eff, trunc_target / p.term_bound)
    length = max(w) * (K + 1)
    chi_key = tuple(complex(c) if p.is_complex else float(c.real) for c in p.chi_arr)
    d, mass = _abel_weights(p.r, w, tuple(float(v) for v in p.a), chi_key, p.q, rho, length)
    g = _bracket(p.x + np.arange(length, dtype=float), p.q) ** p.n
    prod = d * g
    re = math.fsum(np.real(prod))
    im = math.fsum(np.imag(prod)) if p.is_complex else 0.0
    value = complex(re, im) * p.scale
    trunc = p.term_bound * shell_tail_bound(p.r, rho_eff, K)
    rounding = (p.r + 2 * p.n + 8) * _EPS * p.term_bound * mass
    return value, trunc + rounding


def _lagrange_weights_at_zero(hs):
    out = []
    for i, hi in enumerate(hs):
        v = 1.0
        for j, hj in enumerate(hs):
            if j != i:
                v *= hj / (hj - hi)
        out.append(v)
    return out


def _abel(p: _Params, tol: float, k_min: int = 3, k_max: int = 12) -> Evaluation:
    if np.any(p.a < 0):
        raise SeriesNotConvergent("negative twist: terms grow geometrically, no Abel sum")
    if any(float(v) != int(v) for v in p.w):
        raise SeriesNotConvergent("Abel path needs integer weights")
    hs, ys, errs = [], [], []
    best = None
    worse = 0
    for k in range(k_min, k_max + 1):
        rho = 1.0 - 2.0 ** -k
        value, err = _abel_at(p, rho, tol * 1e-3)
        hs.append(2.0 ** -k)
        ys.append(value)
        errs.append(err)
        if len(hs) < 4:
            continue
        est_value, est, _ = extrapolate_to_zero(hs, ys)
        noise = sum(abs(lw) * e for lw, e in zip(_lagrange_weights_at_zero(hs), errs))
        bound = est + noise
        if best is None or bound < best[1]:
            best, worse = (est_value, bound, k), 0
        else:
            worse += 1
        # rounding noise grows like (1 - rho)^-r: stop once refinement stops paying
        if best[1] <= tol * 1e-2 or worse >= 2:
            break
    est_value, bound, k = best
    if bound > tol:
        raise SeriesNotConvergent(f"Abel extrapolation stalled at bound {bound:.3g} (tol {tol:.3g})")
    return Evaluation(ApproxScalar(est_value.real, est_value.imag, bound), "series_abel", bound,
                      truncation=k)


def series_value(spec: FamilySpec, n: int, x, ctx: QContext, tol: float = 1e-10) -> Evaluation:
    """Evaluate a family from its defining multi-series.

    Direct shell summation with a proven tail bound when every twist is
    positive; otherwise Abel summation with Richardson extrapolation, whose
    error bound comes from the extrapolation differences.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    p = _Params(spec, n, x, ctx)
    if np.all(p.a > 0):
        return _direct(p, tol)
    return _abel(p, tol)


def euler_q_hr_series(n: int, x, ctx: QContext, h: int, r: int, tol: float = 1e-10) -> Evaluation:
    """Shifted family from its single q-binomial series (needs ``h - r >= 1``)."""
    q = _real_q(ctx)
    if h - r < 1:
        raise SeriesNotConvergent("q-binomial series needs h - r >= 1 for geometric decay")
    x = float(x)
    ratio = q ** (h - r)
    # Gaussian binomials C(m + r - 1, m)_q stay below prod 1/(1 - q^i)
    gbound = 1.0
    for i in range(1, r):
        gbound /= 1.0 - q ** i
    term_bound = 2.0 ** r * gbound * _bracket_sup(x, q) ** n
    total, abs_sum, rel = [], 0.0, 0.0
    gauss = 1.0  # C(r - 1, 0)_q
    for m in count():
        if m > 0:
            gauss *= (1.0 - q ** (m + r - 1)) / (1.0 - q ** m)
        t = (-ratio) ** m * gauss * float(_bracket(np.array([x + m]), q)[0]) ** n
        total.append(t)
        abs_sum += abs(t)
        rel = (4 * m + 4 * n + 24) * _EPS
        tail = term_bound * ratio ** (m + 1) / (1.0 - ratio)
        if tail + rel * abs_sum * 2.0 ** r <= tol:
            break
        if m > 10 ** 6:
            raise SeriesNotConvergent("q-binomial series over budget")
    value = 2.0 ** r * math.fsum(total)
    err = tail + rel * abs_sum * 2.0 ** r
    return Evaluation(ApproxScalar(value, 0.0, err), "series_direct", err, truncation=len(total) - 1)
