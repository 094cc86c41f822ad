"""Exact arithmetic and ordering for numbers of the form a + b*sqrt(2).

The representation (a, b) with rational a, b is unique because sqrt(2) is
irrational, so equality is structural and ordering reduces to integer sign
analysis.  No floating point anywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import isqrt

LESS, EQUAL, GREATER = -1, 0, 1

_SURD_RE = re.compile(r"^(-?\d+(?:/\d+)?)\+(-?\d+(?:/\d+)?)\*s2$")


@total_ordering
@dataclass(frozen=True)
class QuadraticSurd:
    """The number a + b*sqrt(2) with exact rational components."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @property
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __add__(self, other: "QuadraticSurd") -> "QuadraticSurd":
        return QuadraticSurd(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "QuadraticSurd") -> "QuadraticSurd":
        return QuadraticSurd(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "QuadraticSurd":
        return QuadraticSurd(-self.a, -self.b)

    def __mul__(self, other: "QuadraticSurd") -> "QuadraticSurd":
        return QuadraticSurd(
            self.a * other.a + 2 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    def __lt__(self, other: "QuadraticSurd") -> bool:
        return surd_compare(self, other) == LESS

    def __str__(self) -> str:
        return format_surd(self)


ZERO_SURD = QuadraticSurd(0, 0)


def surd_sign(u: QuadraticSurd) -> int:
    """Exact sign of a + b*sqrt(2) via comparison of a*a against 2*b*b."""
    sa = (u.a > 0) - (u.a < 0)
    sb = (u.b > 0) - (u.b < 0)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: the side with the larger square wins
    return sa if u.a * u.a > 2 * u.b * u.b else sb


def surd_compare(u: QuadraticSurd, v: QuadraticSurd) -> int:
    """Three-way exact comparison: -1 (Less), 0 (Equal), +1 (Greater)."""
    return surd_sign(u - v)


def surd_arith(u: QuadraticSurd, v: QuadraticSurd, op: str) -> QuadraticSurd:
    if op == "add":
        return u + v
    if op == "sub":
        return u - v
    if op == "mul":
        return u * v
    raise ValueError(f"unknown operation: {op!r}")


def surd_floor(u: QuadraticSurd) -> int:
    """Exact floor of a + b*sqrt(2).

    With A, B, D integers such that u = (A + B*sqrt(2))/D and D > 0,
    floor(u) = (A + floor(B*sqrt(2))) // D, and floor(B*sqrt(2)) comes from
    an integer square root of 2*B*B.
    """
    qa, qb = u.a.denominator, u.b.denominator
    d = qa * qb
    big_a = u.a.numerator * qb
    big_b = u.b.numerator * qa
    if big_b >= 0:
        fb = isqrt(2 * big_b * big_b)
    else:
        fb = -isqrt(2 * big_b * big_b) - 1  # 2*B*B is never a perfect square
    return (big_a + fb) // d


def sqrt2_enclosure(bits: int) -> tuple[Fraction, Fraction]:
    """Certified bounds lo <= sqrt(2) < hi with hi - lo = 2**-bits."""
    lo = Fraction(isqrt(2 << (2 * bits)), 1 << bits)
    return lo, lo + Fraction(1, 1 << bits)


def parse_surd(text: str) -> QuadraticSurd:
    """Parse `a+b*s2`; a bare rational literal is accepted as a+0*s2."""
    text = text.strip()
    m = _SURD_RE.match(text)
    if m:
        return QuadraticSurd(Fraction(m.group(1)), Fraction(m.group(2)))
    from .exactcore import parse_rational

    return QuadraticSurd(parse_rational(text), 0)


def format_surd(u: QuadraticSurd) -> str:
    return f"{u.a}+{u.b}*s2"
