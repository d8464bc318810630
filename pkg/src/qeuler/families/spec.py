from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..characters import DirichletCharacter, trivial_character
from ..qcore import Scalar

KINDS = (
    "plain",
    "order_r",
    "extended_hr",
    "barnes",
    "barnes_twisted",
    "chi",
    "chi_order_r",
    "chi_barnes_twisted",
)

METHODS = ("closed_form", "series_direct", "series_abel", "padic_integral")

_USES_H = {"extended_hr"}
_USES_W = {"barnes", "barnes_twisted", "chi_barnes_twisted"}
_USES_A = {"barnes_twisted", "chi_barnes_twisted"}
_USES_CHI = {"chi", "chi_order_r", "chi_barnes_twisted"}
_ORDER_ONE = {"plain", "chi"}


@dataclass(frozen=True)
class FamilySpec:
    """Which q-Euler family a request targets, with its parameters.

    Use the classmethod constructors; they fill in ``r`` and reject
    parameters the kind does not use.
    """

    kind: str
    r: int = 1
    h: Optional[int] = None
    weights: tuple = ()
    twists: tuple = ()
    character: Optional[DirichletCharacter] = None

    def __post_init__(self):
        k = self.kind
        if k not in KINDS:
            raise ValueError(f"unknown family kind {k!r}")
        if not isinstance(self.r, int) or self.r < 1:
            raise ValueError("order r must be a positive integer")
        if k in _ORDER_ONE and self.r != 1:
            raise ValueError(f"{k} family has order 1")
        if (self.h is not None) != (k in _USES_H):
            raise ValueError(f"shift h is {'required' if k in _USES_H else 'meaningless'} for {k}")
        object.__setattr__(self, "weights", tuple(self.weights))
        object.__setattr__(self, "twists", tuple(self.twists))
        if k in _USES_W:
            if len(self.weights) != self.r:
                raise ValueError(f"need {self.r} weights, got {len(self.weights)}")
            if any(w <= 0 for w in self.weights):
                raise ValueError("weights must be positive")
        elif self.weights:
            raise ValueError(f"weights are meaningless for {k}")
        if k in _USES_A:
            if len(self.twists) != self.r:
                raise ValueError(f"need {self.r} twists, got {len(self.twists)}")
            if any(a < 0 for a in self.twists):
                raise ValueError("twists must be nonnegative")
        elif self.twists:
            raise ValueError(f"twists are meaningless for {k}")
        if (self.character is not None) != (k in _USES_CHI):
            raise ValueError(f"character is {'required' if k in _USES_CHI else 'meaningless'} for {k}")

    # constructors ---------------------------------------------------------

    @classmethod
    def plain(cls):
        return cls("plain")

    @classmethod
    def order_r(cls, r: int):
        return cls("order_r", r=r)

    @classmethod
    def extended_hr(cls, h: int, r: int):
        return cls("extended_hr", r=r, h=h)

    @classmethod
    def barnes(cls, weights):
        weights = tuple(weights)
        return cls("barnes", r=len(weights), weights=weights)

    @classmethod
    def barnes_twisted(cls, weights, twists):
        weights = tuple(weights)
        return cls("barnes_twisted", r=len(weights), weights=weights, twists=tuple(twists))

    @classmethod
    def chi(cls, character: DirichletCharacter):
        return cls("chi", character=character)

    @classmethod
    def chi_order_r(cls, character: DirichletCharacter, r: int):
        return cls("chi_order_r", r=r, character=character)

    @classmethod
    def chi_barnes_twisted(cls, character: DirichletCharacter, weights, twists):
        weights = tuple(weights)
        return cls("chi_barnes_twisted", r=len(weights), weights=weights,
                   twists=tuple(twists), character=character)

    # views ----------------------------------------------------------------

    def general_parameters(self):
        """``(weights, twists, character)`` of the equivalent twisted Barnes family.

        Every kind is a specialisation of the character-twisted Barnes
        family; the shifted family maps to unit weights with twists
        ``h-1, ..., h-r`` (possibly negative).
        """
        r = self.r
        w = self.weights or (1,) * r
        if self.kind == "extended_hr":
            a = tuple(self.h - j for j in range(1, r + 1))
        else:
            a = self.twists or (0,) * r
        chi = self.character or trivial_character()
        return w, a, chi

    def descriptor(self) -> str:
        parts = [self.kind]
        if self.kind not in _ORDER_ONE:
            parts.append(f"r={self.r}")
        if self.h is not None:
            parts.append(f"h={self.h}")
        if self.weights:
            parts.append("w=" + ",".join(str(w) for w in self.weights))
        if self.twists:
            parts.append("a=" + ",".join(str(a) for a in self.twists))
        if self.character is not None:
            parts.append("chi=" + self.character.descriptor())
        return ";".join(parts)


@dataclass(frozen=True)
class Evaluation:
    """A family value, how it was obtained, and its absolute error bound."""

    value: Scalar
    method: str
    error_bound: float = 0.0
    truncation: Optional[int] = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if not self.error_bound >= 0:
            raise ValueError("error_bound must be >= 0")
