"""Dirichlet characters with odd conductor and exact root-of-unity values."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import (
    EvenConductor,
    NonRealValueInExactMode,
    NotMultiplicative,
    NotSquarefree,
    WrongSupport,
)
from .qcore import EXACT, ApproxScalar

_EPS = 2.0 ** -52


@dataclass(frozen=True)
class RootOfUnity:
    """``exp(2*pi*i*exponent/order)``, stored in lowest terms."""

    order: int
    exponent: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("root of unity order must be positive")
        phase = Fraction(self.exponent, self.order) % 1
        object.__setattr__(self, "order", phase.denominator)
        object.__setattr__(self, "exponent", phase.numerator)

    @property
    def phase(self) -> Fraction:
        return Fraction(self.exponent, self.order)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        p = self.phase + other.phase
        return RootOfUnity(p.denominator, p.numerator)

    def as_rational(self) -> Optional[int]:
        if self.order == 1:
            return 1
        if self.order == 2:
            return -1
        return None

    def as_complex(self) -> complex:
        # exact axis points avoid cos/sin rounding where possible
        quarter = {(1, 0): 1, (4, 1): 1j, (2, 1): -1, (4, 3): -1j}
        if (self.order, self.exponent) in quarter:
            return complex(quarter[(self.order, self.exponent)])
        return cmath.exp(2j * math.pi * self.exponent / self.order)


ONE = RootOfUnity(1, 0)
MINUS_ONE = RootOfUnity(2, 1)

Entry = Optional[RootOfUnity]  # None stands for the value 0


def _entry(v) -> Entry:
    if v is None or isinstance(v, RootOfUnity):
        return v
    if v == 0:
        return None
    if v == 1:
        return ONE
    if v == -1:
        return MINUS_ONE
    if isinstance(v, tuple) and len(v) == 2:
        return RootOfUnity(*v)
    raise ValueError(f"character value {v!r} is not 0, +-1 or a root of unity")


@dataclass(frozen=True)
class DirichletCharacter:
    """A validated Dirichlet character modulo an odd ``conductor``.

    ``values[m]`` is ``None`` for zero, else a :class:`RootOfUnity`.
    Construct through :func:`character_from_table` or
    :func:`quadratic_character` so the invariants are checked.
    """

    conductor: int
    values: tuple

    def __call__(self, m: int) -> Entry:
        return self.values[m % self.conductor]

    @property
    def is_real(self) -> bool:
        return all(v is None or v.order <= 2 for v in self.values)

    @property
    def is_trivial(self) -> bool:
        return self.conductor == 1

    @property
    def is_principal(self) -> bool:
        return all(v is None or v == ONE for v in self.values)

    def evaluate(self, m: int, mode: str = EXACT):
        return evaluate(self, m, mode)

    def table(self, mode: str = EXACT) -> list:
        return [evaluate(self, a, mode) for a in range(self.conductor)]

    def descriptor(self) -> str:
        parts = []
        for v in self.values:
            if v is None:
                parts.append("0")
            elif v == ONE:
                parts.append("1")
            elif v == MINUS_ONE:
                parts.append("-1")
            else:
                parts.append(f"w{v.order}^{v.exponent}")
        return f"{self.conductor}:{','.join(parts)}"


def character_from_table(f: int, values: Sequence) -> DirichletCharacter:
    """Build a character from its values on ``0..f-1``, checking every axiom.

    Entries may be ``0``, ``1``, ``-1``, ``(order, exponent)`` pairs or
    :class:`RootOfUnity` instances.
    """
    if f < 1:
        raise ValueError("conductor must be positive")
    if f % 2 == 0:
        raise EvenConductor(f"conductor {f} is even")
    if len(values) != f:
        raise ValueError(f"table has {len(values)} entries, conductor is {f}")
    table = tuple(_entry(v) for v in values)
    for m, v in enumerate(table):
        unit = math.gcd(m, f) == 1
        if unit and v is None:
            raise WrongSupport(f"chi({m}) = 0 but gcd({m}, {f}) = 1")
        if not unit and v is not None:
            raise WrongSupport(f"chi({m}) != 0 but gcd({m}, {f}) > 1")
    if table[1 % f] != ONE:
        raise NotMultiplicative("chi(1) must be 1")
    for a in range(f):
        for b in range(a, f):
            va, vb, vab = table[a], table[b], table[(a * b) % f]
            prod = None if va is None or vb is None else va * vb
            if prod != vab:
                raise NotMultiplicative(f"chi({a}*{b}) != chi({a}) chi({b}) mod {f}")
    return DirichletCharacter(f, table)


def trivial_character() -> DirichletCharacter:
    return character_from_table(1, [1])


def jacobi_symbol(m: int, n: int) -> int:
    """Jacobi symbol ``(m | n)`` for odd positive ``n``."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("Jacobi symbol needs odd positive n")
    m %= n
    result = 1
    while m:
        while m % 2 == 0:
            m //= 2
            if n % 8 in (3, 5):
                result = -result
        m, n = n, m
        if m % 4 == 3 and n % 4 == 3:
            result = -result
        m %= n
    return result if n == 1 else 0


def is_squarefree(n: int) -> bool:
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


def quadratic_character(f: int) -> DirichletCharacter:
    """The real character ``m -> (m | f)`` for odd squarefree ``f > 1``."""
    if f % 2 == 0:
        raise EvenConductor(f"conductor {f} is even")
    if f <= 1:
        raise ValueError("quadratic character needs f > 1")
    if not is_squarefree(f):
        raise NotSquarefree(f"{f} is not squarefree")
    return character_from_table(f, [jacobi_symbol(m, f) for m in range(f)])


def evaluate(chi: DirichletCharacter, m: int, mode: str = EXACT) -> Union[int, ApproxScalar]:
    """``chi(m)`` as an int in exact mode, an :class:`ApproxScalar` otherwise."""
    v = chi(m)
    if mode == EXACT:
        if v is None:
            return 0
        r = v.as_rational()
        if r is None:
            raise NonRealValueInExactMode(f"chi({m}) = exp(2 pi i {v.phase}) is not rational")
        return r
    if v is None:
        return ApproxScalar(0.0)
    c = v.as_complex()
    err = 0.0 if v.order in (1, 2, 4) else 4 * _EPS
    return ApproxScalar(c.real, c.imag, err)


def parse_character(text: str) -> DirichletCharacter:
    """Parse ``f:v0,v1,...`` (entries ``0``, ``1``, ``-1``, ``w<order>^<exp>``) or ``quad:<f>``."""
    head, sep, body = text.partition(":")
    if not sep:
        raise ValueError(f"character spec {text!r} lacks ':'")
    if head.strip() == "quad":
        return quadratic_character(int(body))
    f = int(head)
    entries = []
    for tok in body.split(","):
        tok = tok.strip()
        if tok.startswith("w"):
            order, _, exp = tok[1:].partition("^")
            entries.append(RootOfUnity(int(order), int(exp or 1)))
        else:
            entries.append(int(tok))
    return character_from_table(f, entries)
