"""Fixed-precision p-adic residues and the fermionic p-adic q-integral.

Values live in ``Z / p^M``. The integral of ``f`` against the fermionic
measure with parameter ``q`` is approximated at level ``N`` by

    (1 + q) / (1 + q^(p^N)) * sum_{x < p^N} f(x) (-q)^x

and the levels are refined until two consecutive ones agree mod ``p^M``.
Integrands are vectorized: they take an int64 array of points and return
integer residues.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .characters import DirichletCharacter, trivial_character
from .qcore import EXACT
from .errors import NonUnitDivision, NoConvergence

# below this modulus, products of two residues fit in int64
_INT64_SAFE = 3_037_000_499

Integrand = Callable[[np.ndarray], np.ndarray]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def valuation(v, p: int) -> float:
    """``v_p`` of a nonzero integer or rational; ``inf`` for zero."""
    v = Fraction(v)
    if v == 0:
        return math.inf
    out = 0
    num, den = v.numerator, v.denominator
    while num % p == 0:
        num //= p
        out += 1
    while den % p == 0:
        den //= p
        out -= 1
    return out


def _reduce(v, modulus: int, p: int) -> int:
    """Residue of a p-integral rational mod ``modulus`` (a power of ``p``)."""
    v = Fraction(v)
    if v.denominator % p == 0:
        raise NonUnitDivision(f"{v} is not a p-adic integer for p={p}")
    return v.numerator * pow(v.denominator, -1, modulus) % modulus


@dataclass(frozen=True)
class PAdicContext:
    p: int
    precision_M: int

    def __post_init__(self):
        if self.p == 2 or not _is_prime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.precision_M < 1:
            raise ValueError("precision_M must be >= 1")

    @property
    def modulus(self) -> int:
        return self.p ** self.precision_M

    def number(self, v) -> "PAdicNumber":
        """Canonical residue of an integer or p-integral rational."""
        return PAdicNumber.of(self, _reduce(v, self.modulus, self.p))


@dataclass(frozen=True)
class PAdicNumber:
    context: PAdicContext
    residue: int
    known_valuation: int

    @classmethod
    def of(cls, ctx: PAdicContext, residue: int) -> "PAdicNumber":
        residue %= ctx.modulus
        v = valuation(residue, ctx.p)
        return cls(ctx, residue, ctx.precision_M if v == math.inf else min(int(v), ctx.precision_M))

    def _coerce(self, other) -> "PAdicNumber":
        if isinstance(other, PAdicNumber):
            if other.context != self.context:
                raise ValueError("mixing p-adic contexts")
            return other
        return self.context.number(other)

    def __add__(self, other):
        return PAdicNumber.of(self.context, self.residue + self._coerce(other).residue)

    __radd__ = __add__

    def __sub__(self, other):
        return PAdicNumber.of(self.context, self.residue - self._coerce(other).residue)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return PAdicNumber.of(self.context, -self.residue)

    def __mul__(self, other):
        return PAdicNumber.of(self.context, self.residue * self._coerce(other).residue)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.known_valuation != 0:
            raise NonUnitDivision("division by a non-unit")
        return PAdicNumber.of(self.context, self.residue * pow(other.residue, -1, self.context.modulus))

    def __pow__(self, k: int):
        if k < 0:
            return self.context.number(1) / PAdicNumber.of(self.context, pow(self.residue, -k, self.context.modulus))
        return PAdicNumber.of(self.context, pow(self.residue, k, self.context.modulus))

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.residue == other.residue

    def __hash__(self):
        return hash((self.context, self.residue))

    def is_zero(self) -> bool:
        return self.residue == 0

    def __repr__(self):
        return f"{self.residue} mod {self.context.p}^{self.context.precision_M}"


@dataclass(frozen=True)
class QPAdic:
    """A rational ``q`` close to 1: ``v_p(1 - q) >= 1`` for the working prime."""

    q: Fraction

    def __post_init__(self):
        object.__setattr__(self, "q", Fraction(self.q))

    def check(self, ctx: PAdicContext) -> int:
        """Return ``v_p(q - 1)`` (``inf`` for q == 1) after validating it."""
        v = valuation(self.q - 1, ctx.p)
        if v < 1:
            raise ValueError(f"need |1 - q|_p < 1, got q={self.q} for p={ctx.p}")
        return v

    @property
    def is_one(self) -> bool:
        return self.q == 1


# -- vectorized residue helpers -------------------------------------------

def _dtype(modulus: int):
    return np.int64 if modulus < _INT64_SAFE else object


def _powers(t: int, ys: np.ndarray, modulus: int) -> np.ndarray:
    """``t^y mod modulus`` for a nonnegative integer array ``ys``."""
    ys = np.asarray(ys, dtype=np.int64)
    if ys.size == 0:
        return np.zeros(0, dtype=_dtype(modulus))
    top = int(ys.max()) + 1
    B = math.isqrt(top) + 1
    dt = _dtype(modulus)
    small = np.empty(B, dtype=dt)
    acc = 1
    for i in range(B):
        small[i] = acc
        acc = acc * t % modulus
    step = acc  # t^B
    big = np.empty(top // B + 1, dtype=dt)
    acc = 1
    for i in range(len(big)):
        big[i] = acc
        acc = acc * step % modulus
    return big[ys // B] * small[ys % B] % modulus


def _power_mod(arr: np.ndarray, n: int, modulus: int) -> np.ndarray:
    out = np.ones_like(arr)
    base = arr
    while n:
        if n & 1:
            out = out * base % modulus
        n >>= 1
        if n:
            base = base * base % modulus
    return out


def _sum_mod(arr: np.ndarray, modulus: int) -> int:
    if arr.dtype == object:
        return int(sum(arr.tolist())) % modulus
    # chunk so partial sums stay inside int64
    chunk = max(1, (2 ** 62) // max(modulus, 1))
    return sum(int(arr[i:i + chunk].sum()) for i in range(0, len(arr), chunk)) % modulus


def q_bracket_residues(ys: np.ndarray, q: QPAdic, ctx: PAdicContext) -> np.ndarray:
    """``[y]_q mod p^M`` for integer points ``ys`` (negative allowed)."""
    ys = np.asarray(ys, dtype=np.int64)
    M, p = ctx.precision_M, ctx.p
    if q.is_one:
        return ys.astype(_dtype(ctx.modulus)) % ctx.modulus
    v = int(q.check(ctx))
    wide = p ** (M + v)
    qr = _reduce(q.q, wide, p)
    shift = int(-ys.min()) if ys.size and ys.min() < 0 else 0
    pw = _powers(qr, ys + shift, wide)
    if shift:
        pw = pw * pow(pow(qr, shift, wide), -1, wide) % wide
    # q^y - 1 is divisible by p^v: divide exactly, then by the unit (q-1)/p^v
    diff = (pw - 1) % wide
    unit = (q.q - 1) / Fraction(p) ** v
    uinv = _reduce(1 / unit, ctx.modulus, p)
    return (diff // p ** v) % ctx.modulus * uinv % ctx.modulus


# -- integrands -----------------------------------------------------------

def polynomial_integrand(coeffs: Sequence, ctx: PAdicContext) -> Integrand:
    """``x -> sum_k coeffs[k] x^k`` with p-integral rational coefficients."""
    cs = [_reduce(c, ctx.modulus, ctx.p) for c in coeffs]

    def f(xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64).astype(_dtype(ctx.modulus)) % ctx.modulus
        out = np.zeros_like(xs)
        for c in reversed(cs):
            out = (out * xs + c) % ctx.modulus
        return out

    return f


def q_bracket_power_integrand(n: int, x: int, q: QPAdic, ctx: PAdicContext) -> Integrand:
    """``y -> [x + y]_q^n``."""
    def f(ys: np.ndarray) -> np.ndarray:
        return _power_mod(q_bracket_residues(np.asarray(ys) + x, q, ctx), n, ctx.modulus)

    return f


def pointwise(fn: Callable, ctx: PAdicContext) -> Integrand:
    """Vectorize a scalar integrand returning ints, rationals or PAdicNumbers."""
    def f(xs: np.ndarray) -> np.ndarray:
        out = np.empty(len(xs), dtype=object)
        for i, x in enumerate(np.asarray(xs).tolist()):
            v = fn(x)
            out[i] = v.residue if isinstance(v, PAdicNumber) else _reduce(v, ctx.modulus, ctx.p)
        return out

    return f


# -- the integral ----------------------------------------------------------

def fermionic_integral_level(f: Integrand, q: QPAdic, N: int, ctx: PAdicContext,
                             d: int = 1) -> PAdicNumber:
    """Level-``N`` Riemann sum over ``x < d p^N`` of the fermionic q-integral.

    ``d`` (odd) extends the domain to ``X_d = lim Z/(d p^N)``, as needed for
    integrands carrying a character of conductor ``d``.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if d < 1 or d % 2 == 0:
        raise ValueError("d must be odd and positive")
    q.check(ctx)
    mod = ctx.modulus
    L = d * ctx.p ** N
    xs = np.arange(L, dtype=np.int64)
    vals = np.asarray(f(xs))
    if vals.dtype != object:
        vals = vals.astype(np.int64)
    vals = vals % mod
    qr = _reduce(q.q, mod, ctx.p)
    weights = _powers((-qr) % mod, xs, mod)
    s = _sum_mod(vals * weights % mod, mod)
    den = (1 + pow(qr, L, mod)) % mod
    if den % ctx.p == 0:
        raise NonUnitDivision("1 + q^(d p^N) is not a unit")
    pref = (1 + qr) * pow(den, -1, mod) % mod
    return PAdicNumber.of(ctx, s * pref)


def _stabilize(level: Callable[[int], PAdicNumber], ctx: PAdicContext, n_max: int,
               start_level: int | None) -> PAdicNumber:
    # Lipschitz integrands err by O(p^-N) at level N, so agreement only
    # certifies the residue once N >= M
    start = ctx.precision_M if start_level is None else start_level
    if start < 1:
        raise ValueError("start_level must be >= 1")
    prev = level(start)
    for N in range(start + 1, max(n_max, start + 1) + 1):
        cur = level(N)
        if cur == prev:
            return cur
        prev = cur
    raise NoConvergence(f"levels still disagree mod p^M at N = {max(n_max, start + 1)}")


def fermionic_integral(f: Integrand, q: QPAdic, ctx: PAdicContext, d: int = 1,
                       n_max: int = 12, start_level: int | None = None) -> PAdicNumber:
    """Refine levels until two consecutive ones agree mod ``p^M``."""
    return _stabilize(lambda N: fermionic_integral_level(f, q, N, ctx, d), ctx, n_max, start_level)


def shift_identity_residual(f: Integrand, n: int, ctx: PAdicContext, n_max: int = 12) -> PAdicNumber:
    """``I(f_n) - (-1)^n I(f) - 2 sum_{l<n} (-1)^(n-1-l) f(l)`` under the q = 1 measure."""
    if n < 1:
        raise ValueError("n must be positive")
    one = QPAdic(1)
    shifted = fermionic_integral(lambda xs: f(np.asarray(xs) + n), one, ctx, n_max=n_max)
    base = fermionic_integral(f, one, ctx, n_max=n_max)
    head = np.asarray(f(np.arange(n, dtype=np.int64)))
    s = ctx.number(0)
    for l in range(n):
        t = ctx.number(int(head[l]))
        s = s + t if (n - 1 - l) % 2 == 0 else s - t
    sign = 1 if n % 2 == 0 else -1
    return shifted - sign * base - 2 * s


def moment(n: int, x: int, q: QPAdic, ctx: PAdicContext, n_max: int = 12) -> PAdicNumber:
    """``int [x + y]_q^n dmu_1(y)`` by direct level sums of the integrand."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return fermionic_integral(q_bracket_power_integrand(n, int(x), q, ctx), QPAdic(1), ctx, n_max=n_max)


def iterated_integral(n: int, x: int, q: QPAdic, ctx: PAdicContext,
                      weights: Sequence[int], twists: Sequence[int] | None = None,
                      character: DirichletCharacter | None = None,
                      n_max: int = 12) -> PAdicNumber:
    """``int_{X^r} prod_j chi(y_j) q^(a_j y_j) [x + sum_j w_j y_j]_q^n dmu_1(y)``.

    Expanding ``[z]^n = (1-q)^-n sum_l C(n,l) (-1)^l q^(lz)`` factorizes each
    level into univariate sums over ``y_j < f p^N``. Those sums are taken at
    precision ``p^(M + n v)`` so the ``(1-q)^n`` division is exact.
    """
    weights = [int(w) for w in weights]
    r = len(weights)
    if r < 1:
        raise ValueError("need at least one index")
    twists = [0] * r if twists is None else [int(a) for a in twists]
    if len(twists) != r:
        raise ValueError("weights and twists differ in length")
    if n < 0:
        raise ValueError("n must be >= 0")
    chi = trivial_character() if character is None else character
    p, M = ctx.p, ctx.precision_M
    if q.is_one:
        raise ValueError("iterated_integral needs q != 1; use polynomial integrands for q = 1")
    v = int(q.check(ctx))
    extra = n * v
    wide = p ** (M + extra)
    qr = _reduce(q.q, wide, p)
    qinv = pow(qr, -1, wide)
    f = chi.conductor
    chi_tab = _chi_ints(chi)

    def level(N: int) -> PAdicNumber:
        L = f * p ** N
        ys = np.arange(L, dtype=np.int64)
        sign_chi = np.where(ys % 2 == 1, -1, 1) * chi_tab[ys % f]
        cache: dict[int, int] = {}

        def univariate(e: int) -> int:
            if e not in cache:
                t = pow(qr, e, wide) if e >= 0 else pow(qinv, -e, wide)
                cache[e] = _sum_mod(_powers(t, ys, wide) * sign_chi % wide, wide)
            return cache[e]

        total = 0
        qx = pow(qr, x, wide) if x >= 0 else pow(qinv, -x, wide)
        for l in range(n + 1):
            term = math.comb(n, l) * pow(qx, l, wide)
            for wj, aj in zip(weights, twists):
                term = term * univariate(l * wj + aj) % wide
            total = total - term if l % 2 else total + term
        total %= wide
        if total % p ** extra:
            raise NonUnitDivision("level sum not divisible by (1-q)^n: precision bookkeeping broke")
        # divide by (1-q)^n = (p^v u)^n
        unit = (1 - q.q) / Fraction(p) ** v
        uinv = _reduce(1 / unit, ctx.modulus, p)
        return PAdicNumber.of(ctx, (total // p ** extra) * pow(uinv, n, ctx.modulus))

    return _stabilize(level, ctx, n_max, None)


def _chi_ints(chi: DirichletCharacter) -> np.ndarray:
    if not chi.is_real:
        raise ValueError("p-adic integrals need a real character")
    return np.array(chi.table(EXACT), dtype=np.int64)


def family_integral(spec, n: int, x: int, q: QPAdic, ctx: PAdicContext, n_max: int = 12) -> PAdicNumber:
    """The family member ``spec`` at ``(n, x)`` as an iterated fermionic integral."""
    w, a, chi = spec.general_parameters()
    if any(Fraction(v).denominator != 1 for v in list(w) + list(a)):
        raise ValueError("p-adic integrals need integer weights and twists")
    return iterated_integral(n, x, q, ctx, [int(v) for v in w], [int(v) for v in a], chi, n_max)
