"""Exact root-of-unity scalars as rational exponents mod 1.

A phase stores q with 0 <= q < 1 and stands for exp(2*pi*i*q).  The group
law is addition of exponents mod 1, so products of phases never leave exact
arithmetic.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction


class Phase:
    """An element of Q/Z, written additively."""

    __slots__ = ("exponent",)

    def __init__(self, exponent: Fraction | int | str = 0):
        if isinstance(exponent, str):
            exponent = Fraction(exponent)
        self.exponent = Fraction(exponent) % 1

    def __add__(self, other: "Phase") -> "Phase":
        return Phase(self.exponent + other.exponent)

    def __sub__(self, other: "Phase") -> "Phase":
        return Phase(self.exponent - other.exponent)

    def __neg__(self) -> "Phase":
        return Phase(-self.exponent)

    def __mul__(self, k: int) -> "Phase":
        return Phase(self.exponent * k)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Phase) and self.exponent == other.exponent

    def __hash__(self) -> int:
        return hash(("Phase", self.exponent))

    def __bool__(self) -> bool:
        return self.exponent != 0

    @property
    def is_zero(self) -> bool:
        return self.exponent == 0

    @property
    def denominator(self) -> int:
        return self.exponent.denominator

    def to_complex(self) -> complex:
        return cmath.exp(2j * cmath.pi * float(self.exponent))

    def __str__(self) -> str:
        return str(self.exponent)

    def __repr__(self) -> str:
        return f"Phase({self.exponent!r})"


ZERO = Phase(0)
HALF = Phase(Fraction(1, 2))


def phase_lcm(phases) -> int:
    """Least common multiple of the exponent denominators (at least 1)."""
    out = 1
    for p in phases:
        out = math.lcm(out, p.denominator)
    return out
