"""Barnes-type multiple q-zeta and q-l functions on their convergent domain.

    zeta(s, x | w; a) = sum_m (-1)^|m| q^(a.m) [x + w.m]_q^(-s)

with every twist ``a_j > 0``. The l-function inserts ``prod_j chi(m_j)``.
Both are summed over total-degree shells with a geometric tail majorant.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy import integrate, special

from ._shells import compositions, shell_tail_bound, shells_needed
from .characters import DirichletCharacter, evaluate, trivial_character
from .errors import ConvergenceBudgetExceeded, InvalidRequest, QuadratureFailure
from .families import FamilySpec, closed_form
from .qcore import FLOAT, ApproxScalar, QContext

_EPS = 2.0 ** -52
_MAX_TERMS = 5_000_000


@dataclass(frozen=True)
class ZetaRequest:
    s: complex
    x: float
    q: float
    r: int
    weights: tuple
    twists: tuple
    character: Optional[DirichletCharacter] = None
    tol: float = 1e-10

    def __post_init__(self):
        object.__setattr__(self, "s", complex(self.s))
        object.__setattr__(self, "weights", tuple(self.weights))
        object.__setattr__(self, "twists", tuple(self.twists))
        if self.r < 1 or len(self.weights) != self.r or len(self.twists) != self.r:
            raise InvalidRequest("need r >= 1 weights and twists")
        if not float(self.x) > 0:
            raise InvalidRequest("x must be positive")
        if not 0 < float(self.q) < 1:
            raise InvalidRequest("q must lie in (0, 1)")
        if any(not float(w) > 0 for w in self.weights):
            raise InvalidRequest("weights must be positive")
        if any(not float(a) > 0 for a in self.twists):
            raise InvalidRequest("twists must be positive: the series only Abel-sums otherwise")
        if not self.tol > 0:
            raise InvalidRequest("tol must be positive")

    def with_s(self, s) -> "ZetaRequest":
        return ZetaRequest(s, self.x, self.q, self.r, self.weights, self.twists, self.character, self.tol)


@dataclass(frozen=True)
class TailBound:
    truncation_radius: int
    bound: float


@dataclass(frozen=True)
class _Terms:
    """All retained terms ``coeff * lam^(-s)`` of a truncated sum."""

    coeffs: np.ndarray
    lams: np.ndarray
    M: int


def _chi_table(chi: DirichletCharacter) -> np.ndarray:
    return np.array([evaluate(chi, b, FLOAT).value for b in range(chi.conductor)])


def _terms(req: ZetaRequest, M: int, chi: DirichletCharacter) -> _Terms:
    q = float(req.q)
    lq = math.log(q)
    w = np.array([float(v) for v in req.weights])
    a = np.array([float(v) for v in req.twists])
    chi_arr = _chi_table(chi)
    coeffs, lams = [], []
    for k in range(M + 1):
        comps = compositions(req.r, k)
        c = np.exp((comps @ a) * lq) * (-1.0 if k % 2 else 1.0)
        c = c * np.prod(chi_arr[comps % chi.conductor], axis=1)
        coeffs.append(c)
        lams.append(-np.expm1((float(req.x) + comps @ w) * lq) / (1.0 - q))
    return _Terms(np.concatenate(coeffs), np.concatenate(lams), M)


def _majorant(req: ZetaRequest) -> float:
    """Bound on ``|[y]_q^(-s)|`` over ``y >= x``: the base lies in ``[[x]_q, 1/(1-q))``."""
    q, sigma = float(req.q), req.s.real
    bx = -math.expm1(float(req.x) * math.log(q)) / (1.0 - q)
    return max(bx ** -sigma, (1.0 - q) ** sigma)


def tail_bound(req: ZetaRequest, M: int) -> TailBound:
    """Majorant of everything beyond shell ``M``."""
    rho = float(req.q) ** min(float(a) for a in req.twists)
    return TailBound(M, float(_majorant(req) * shell_tail_bound(req.r, rho, M)))


def _sum_terms(t: _Terms, s: complex) -> tuple:
    logl = np.log(t.lams)
    vals = t.coeffs * np.exp(-s * logl)
    re = math.fsum(np.real(vals))
    im = math.fsum(np.imag(vals))
    # exp(-s log lam) carries a relative error of a few eps times |s log lam|
    rel = (16 + 4 * abs(s) * float(np.max(np.abs(logl)))) * _EPS
    rounding = rel * float(np.sum(np.abs(vals)))
    return complex(re, im), rounding


def _evaluate(req: ZetaRequest, chi: DirichletCharacter, M: Optional[int] = None) -> tuple:
    rho = float(req.q) ** min(float(a) for a in req.twists)
    if M is None:
        M = shells_needed(req.r, rho, req.tol / (2 * _majorant(req)))
    if math.comb(M + req.r, req.r) > _MAX_TERMS:
        raise ConvergenceBudgetExceeded(f"{M} shells needed, over the term budget")
    terms = _terms(req, M, chi)
    value, rounding = _sum_terms(terms, req.s)
    return value, tail_bound(req, M), rounding


def zeta_partial(req: ZetaRequest, M: int) -> tuple:
    """Sum through shell ``M``: ``(value, TailBound)``."""
    value, tb, _ = _evaluate(req, trivial_character(), M)
    return value, tb


def zeta_multiple(req: ZetaRequest) -> ApproxScalar:
    """Multiple q-zeta value with ``abs_error`` = tail majorant + rounding."""
    if req.character is not None and not req.character.is_trivial:
        raise InvalidRequest("zeta_multiple takes no character; use l_multiple")
    value, tb, rounding = _evaluate(req, trivial_character())
    return ApproxScalar(value.real, value.imag, float(tb.bound + rounding))


def l_multiple(req: ZetaRequest) -> ApproxScalar:
    """Multiple q-l value; the trivial character reproduces ``zeta_multiple`` bit for bit."""
    if req.character is None:
        raise InvalidRequest("l_multiple needs a character")
    if req.character.conductor % 2 == 0:
        raise InvalidRequest("character conductor must be odd")
    value, tb, rounding = _evaluate(req, req.character)
    return ApproxScalar(value.real, value.imag, float(tb.bound + rounding))


def _value(req: ZetaRequest) -> ApproxScalar:
    return zeta_multiple(req) if req.character is None else l_multiple(req)


def _family(req: ZetaRequest) -> FamilySpec:
    w = tuple(int(v) for v in req.weights)
    a = tuple(int(v) for v in req.twists)
    if req.character is None:
        return FamilySpec.barnes_twisted(w, a)
    return FamilySpec.chi_barnes_twisted(req.character, w, a)


def _as_fraction(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(str(v)) if isinstance(v, str) else Fraction(v)


@dataclass(frozen=True)
class InterpolationReport:
    n: int
    L: ApproxScalar
    R: Fraction
    ratio: complex
    residual_derived: float
    residual_stated: float
    tol: float
    passed: bool


def interpolation_check(n: int, req: ZetaRequest, tol: float = 1e-8) -> InterpolationReport:
    """Compare the series at ``s = -n`` with the exact family value.

    The asserted relation is ``L = 2^-r R``; the residual against
    ``(-1)^(n+1) R`` is recorded alongside it.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    for v in list(req.weights) + list(req.twists) + [req.x]:
        if Fraction(v).denominator != 1:
            raise InvalidRequest("interpolation check needs integer x, weights and twists")
    sub = ZetaRequest(-n, req.x, req.q, req.r, req.weights, req.twists, req.character,
                      min(req.tol, tol * 1e-3))
    L = _value(sub)
    R = closed_form(_family(req), n, int(req.x), QContext.exact(_as_fraction(req.q))).value
    Rf = float(R)
    derived = float(abs(L.value - Rf / 2 ** req.r) + L.abs_error)
    stated = float(abs(L.value - (-1) ** (n + 1) * Rf))
    ratio = L.value / Rf if Rf != 0 else complex(math.nan)
    return InterpolationReport(n, L, R, ratio, derived, stated, tol, bool(derived <= tol))


@dataclass(frozen=True)
class MellinReport:
    s: complex
    quadrature: complex
    quadrature_error: float
    zeta_scaled: ApproxScalar
    truncated_sum: complex
    difference: float
    tol: float
    passed: bool
    truncation: int = field(default=0)


def _real_gamma_integral(coeffs: np.ndarray, lams: np.ndarray, s: complex) -> tuple:
    """``int_0^inf t^(s-1) sum_i c_i exp(-lam_i t) dt`` for real coefficients."""
    sigma, tau = s.real, s.imag

    def F(t: float) -> float:
        return float(np.dot(coeffs, np.exp(-lams * t)))

    if tau == 0:
        # [0, 1] carries the t^(sigma-1) endpoint behaviour as an algebraic weight
        head, e1 = integrate.quad(F, 0.0, 1.0, weight="alg", wvar=(sigma - 1.0, 0.0), limit=400)
        tail, e2 = integrate.quad(lambda t: t ** (sigma - 1.0) * F(t), 1.0, math.inf, limit=400)
        return complex(head + tail), e1 + e2
    # t = exp(-u) on [0, 1] turns t^(s-1) dt into a damped Fourier kernel
    damped = lambda u: math.exp(-sigma * u) * F(math.exp(-u))
    hc, e1 = integrate.quad(damped, 0.0, math.inf, weight="cos", wvar=tau, limlst=200)
    hs, e2 = integrate.quad(damped, 0.0, math.inf, weight="sin", wvar=tau, limlst=200)
    tc, e3 = integrate.quad(lambda t: t ** (sigma - 1.0) * math.cos(tau * math.log(t)) * F(t),
                            1.0, math.inf, limit=400)
    ts, e4 = integrate.quad(lambda t: t ** (sigma - 1.0) * math.sin(tau * math.log(t)) * F(t),
                            1.0, math.inf, limit=400)
    return complex(hc + tc, ts - hs), e1 + e2 + e3 + e4


def _gamma_integral(coeffs: np.ndarray, lams: np.ndarray, s: complex) -> tuple:
    """``(1/Gamma(s)) int_0^inf t^(s-1) sum_i c_i exp(-lam_i t) dt`` by quadrature."""
    total, err = _real_gamma_integral(np.ascontiguousarray(coeffs.real), lams, s)
    if np.iscomplexobj(coeffs) and np.any(coeffs.imag != 0):
        im, e = _real_gamma_integral(np.ascontiguousarray(coeffs.imag), lams, s)
        total, err = total + 1j * im, err + e
    g = complex(special.gamma(s))
    return total / g, err / abs(g)


def mellin_check(s, req: ZetaRequest, tol_quadrature: float = 1e-6) -> MellinReport:
    """Quadrature of the truncated generating function against ``2^r zeta(s)``."""
    s = complex(s)
    if s.real < 0.5:
        raise InvalidRequest("mellin check needs Re s >= 1/2")
    if any(float(a) < 1 for a in req.twists):
        raise InvalidRequest("mellin check needs twists >= 1")
    chi = trivial_character() if req.character is None else req.character
    sreq = req.with_s(s)
    rho = float(req.q) ** min(float(a) for a in req.twists)
    M = shells_needed(req.r, rho, sreq.tol / (2 * _majorant(sreq)))
    terms = _terms(sreq, M, chi)
    scale = 2.0 ** req.r
    truncated, _ = _sum_terms(terms, s)
    try:
        quad, qerr = _gamma_integral(scale * terms.coeffs, terms.lams, s)
    except (ValueError, ZeroDivisionError, OverflowError) as exc:
        raise QuadratureFailure(str(exc)) from exc
    if not math.isfinite(qerr) or qerr > tol_quadrature:
        raise QuadratureFailure(f"quadrature error estimate {qerr:.3g} above {tol_quadrature:.3g}")
    z = _value(sreq) * scale
    diff = float(abs(quad - z.value))
    return MellinReport(s, quad, float(qerr), z, scale * truncated, diff, tol_quadrature,
                        diff <= tol_quadrature, M)
