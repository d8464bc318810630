"""Scalar domains and the q-combinatorial primitives.

Two numeric domains are used throughout the package:

* exact: :class:`fractions.Fraction` (canonical by construction), and
* float: :class:`ApproxScalar`, a complex double carrying a guaranteed
  absolute error bound.

Every primitive here takes a :class:`QContext` that fixes both ``q`` and
the domain the result lives in.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import (
    NonIntegerExponentInExactMode,
    QEqualsMinusOne,
    QEqualsOneInExactMode,
)

# 2**-52 is twice the unit roundoff; one _EPS per operation covers complex
# add/sub, two cover mul/div.
_EPS = 2.0 ** -52


@dataclass(frozen=True)
class ApproxScalar:
    """Complex double ``real + i*imag`` with ``|true - value| <= abs_error``."""

    real: float
    imag: float = 0.0
    abs_error: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.abs_error) and self.abs_error >= 0):
            raise ValueError(f"abs_error must be finite and >= 0, got {self.abs_error}")

    @classmethod
    def of(cls, v, abs_error: float = 0.0) -> "ApproxScalar":
        """Lift an int, Fraction, float, complex or ApproxScalar."""
        if isinstance(v, ApproxScalar):
            return cls(v.real, v.imag, v.abs_error + abs_error) if abs_error else v
        if isinstance(v, bool):
            v = int(v)
        if isinstance(v, int):
            f = float(v)
            err = 0.0 if abs(v) <= 2 ** 53 else _EPS * abs(f)
            return cls(f, 0.0, err + abs_error)
        if isinstance(v, Rational):
            f = float(Fraction(v))
            return cls(f, 0.0, _EPS * abs(f) + abs_error)
        if isinstance(v, (float, complex)):
            c = complex(v)
            return cls(c.real, c.imag, abs_error)
        raise TypeError(f"cannot lift {type(v).__name__} to ApproxScalar")

    @property
    def value(self) -> complex:
        return complex(self.real, self.imag)

    def __abs__(self) -> float:
        return abs(self.value)

    def contains(self, exact, slack: float = 0.0) -> bool:
        """True when ``exact`` lies inside the error disc (plus ``slack``)."""
        return abs(complex(exact) - self.value) <= self.abs_error + slack

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        v = self.value + o.value
        return _make(v, self.abs_error + o.abs_error + _EPS * abs(v))

    __radd__ = __add__

    def __neg__(self):
        return ApproxScalar(-self.real, -self.imag, self.abs_error)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        a, b = self.value, o.value
        v = a * b
        err = (abs(a) * o.abs_error + abs(b) * self.abs_error
               + self.abs_error * o.abs_error + 2 * _EPS * abs(v))
        return _make(v, err)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        return _div(self, o)

    def __rtruediv__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        return _div(o, self)

    def __pow__(self, k):
        if isinstance(k, Rational) and Fraction(k).denominator == 1:
            k = int(k)
        if not isinstance(k, int):
            return self.real_pow(float(k))
        if k < 0:
            return _div(ApproxScalar(1.0), self ** (-k))
        result = ApproxScalar(1.0)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def real_pow(self, exponent: float) -> "ApproxScalar":
        """``self ** exponent`` for a real positive base and real exponent."""
        b, e = self.real, self.abs_error
        if self.imag != 0.0 or b - e <= 0.0:
            raise ValueError("real powers need a real base bounded away from 0")
        v = b ** exponent
        # x -> x**t is monotone on (0, inf): the endpoints bound the spread.
        lo, hi = (b - e) ** exponent, (b + e) ** exponent
        err = max(abs(lo - v), abs(hi - v)) + 4 * _EPS * abs(v) * (1 + abs(exponent))
        return ApproxScalar(v, 0.0, err)


def _make(v: complex, err: float) -> ApproxScalar:
    return ApproxScalar(v.real, v.imag, err)


def _lift(other):
    if isinstance(other, ApproxScalar):
        return other
    if isinstance(other, (int, float, complex, Rational)):
        return ApproxScalar.of(other)
    return None


def _div(a: ApproxScalar, b: ApproxScalar) -> ApproxScalar:
    bm = abs(b.value)
    if bm <= b.abs_error:
        raise ZeroDivisionError("divisor error disc contains zero")
    v = a.value / b.value
    err = ((abs(a.value) * b.abs_error + bm * a.abs_error) / (bm * (bm - b.abs_error))
           + 4 * _EPS * abs(v))
    return _make(v, err)


Scalar = Union[Fraction, ApproxScalar]

EXACT = "exact"
FLOAT = "float"


@dataclass(frozen=True)
class QContext:
    """The deformation parameter ``q`` plus the numeric domain to work in."""

    q: Scalar
    mode: str = EXACT

    def __post_init__(self):
        if self.mode not in (EXACT, FLOAT):
            raise ValueError(f"mode must be 'exact' or 'float', got {self.mode!r}")
        if self.mode == EXACT:
            if isinstance(self.q, ApproxScalar) or isinstance(self.q, (float, complex)):
                raise TypeError("exact mode needs a rational q")
            object.__setattr__(self, "q", Fraction(self.q))
        else:
            object.__setattr__(self, "q", ApproxScalar.of(self.q))

    @classmethod
    def exact(cls, q) -> "QContext":
        return cls(Fraction(q), EXACT)

    @classmethod
    def float(cls, q) -> "QContext":
        return cls(ApproxScalar.of(q), FLOAT)

    @property
    def is_exact(self) -> bool:
        return self.mode == EXACT

    @property
    def is_classical_limit(self) -> bool:
        """Float mode with q exactly 1 stands for the limit q -> 1."""
        q = self.q
        return (not self.is_exact and q.real == 1.0 and q.imag == 0.0
                and q.abs_error == 0.0)

    def scalar(self, v) -> Scalar:
        """Coerce ``v`` into this context's domain."""
        if self.is_exact:
            if isinstance(v, ApproxScalar) or isinstance(v, (float, complex)):
                raise TypeError("float value in exact context")
            return Fraction(v)
        return ApproxScalar.of(v)

    def with_q(self, q) -> "QContext":
        return QContext(q, self.mode)


def as_integer(x) -> int | None:
    """``int(x)`` when x is integral (int, integral Fraction or float), else None."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Rational):
        x = Fraction(x)
        return x.numerator if x.denominator == 1 else None
    if isinstance(x, float) and x.is_integer():
        return int(x)
    return None


def q_power(base: Scalar, x, ctx: QContext) -> Scalar:
    """``base ** x`` under the exponent rules of ``ctx``."""
    k = as_integer(x)
    if ctx.is_exact:
        if k is None:
            raise NonIntegerExponentInExactMode(f"exponent {x} is not an integer")
        return Fraction(base) ** k
    base = ApproxScalar.of(base)
    if k is not None:
        return base ** k
    return base.real_pow(float(x))


def q_bracket(x, ctx: QContext) -> Scalar:
    """``[x]_q = (1 - q**x) / (1 - q)``; the classical limit returns ``x``."""
    q = ctx.q
    if ctx.is_exact:
        if q == 1:
            raise QEqualsOneInExactMode("q=1 invalid in exact mode")
        return (1 - q_power(q, x, ctx)) / (1 - q)
    if ctx.is_classical_limit:
        return ApproxScalar.of(x if as_integer(x) is None else as_integer(x))
    if q.imag == 0.0 and q.abs_error == 0.0 and q.real > 0.0:
        return _real_bracket(float(x), q.real)
    return (1 - q_power(q, x, ctx)) / (1 - q)


def _real_bracket(x: float, q: float) -> ApproxScalar:
    # expm1 keeps full relative accuracy for q close to 1
    t = x * math.log(q)
    num = -math.expm1(t)
    num_err = 4 * _EPS * abs(num) + 4 * _EPS * abs(t) * max(1.0, math.exp(t))
    den = 1.0 - q
    den_err = 0.0 if 0.5 <= q <= 2.0 else _EPS * abs(den)
    return ApproxScalar(num, 0.0, num_err) / ApproxScalar(den, 0.0, den_err)


def q_bracket_signed(x, ctx: QContext) -> Scalar:
    """``[x]_{-q} = (1 - (-q)**x) / (1 + q)``."""
    q = ctx.q
    if ctx.is_exact:
        if q == -1:
            raise QEqualsMinusOne("q=-1 makes 1+q vanish")
        return (1 - q_power(-q, x, ctx)) / (1 + q)
    if q.real == -1.0 and q.imag == 0.0 and q.abs_error == 0.0:
        raise QEqualsMinusOne("q=-1 makes 1+q vanish")
    return (1 - q_power(-q, x, ctx)) / (1 + q)


def q_factorial(n: int, ctx: QContext) -> Scalar:
    if n < 0:
        raise ValueError("q_factorial needs n >= 0")
    result = ctx.scalar(1)
    for k in range(1, n + 1):
        result = result * q_bracket(k, ctx)
    return result


def gaussian_binomial(n: int, k: int, ctx: QContext) -> Scalar:
    """Gaussian binomial; zero outside ``0 <= k <= n``."""
    if n < 0:
        raise ValueError("gaussian_binomial needs n >= 0")
    if k < 0 or k > n:
        return ctx.scalar(0)
    return q_factorial(n, ctx) / (q_factorial(n - k, ctx) * q_factorial(k, ctx))


def q_pochhammer(b, n: int, ctx: QContext) -> Scalar:
    """``(b; q)_n = (1 - b)(1 - bq)...(1 - bq**(n-1))``."""
    if n < 0:
        raise ValueError("q_pochhammer needs n >= 0")
    b = ctx.scalar(b)
    result = ctx.scalar(1)
    qi = ctx.scalar(1)
    for _ in range(n):
        result = result * (1 - b * qi)
        qi = qi * ctx.q
    return result


def q_pochhammer_expansion(b, n: int, ctx: QContext) -> Scalar:
    """``(b; q)_n`` through its Gaussian-binomial expansion in powers of ``b``."""
    b = ctx.scalar(b)
    total = ctx.scalar(0)
    for i in range(n + 1):
        term = gaussian_binomial(n, i, ctx) * ctx.q ** (i * (i - 1) // 2) * b ** i
        total = total + (term if i % 2 == 0 else -term)
    return total
