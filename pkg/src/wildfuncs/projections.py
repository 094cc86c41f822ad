"""Component projections on the quadratic field a + b*sqrt(2).

`rational_component` keeps a, `radical_component` keeps b*sqrt(2); their sum
is the identity.  Both are periodic and, depending on the shift, quasiperiodic
at the same time; `classify_shift` decides which, and `density_witness`
produces exact in-rectangle graph points.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .surds import (
    LESS,
    QuadraticSurd,
    surd_compare,
    surd_floor,
    surd_sign,
)


class ShiftKind(Enum):
    PERIOD = "period"
    QUASIPERIOD = "quasiperiod"


class Direction(Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"


@dataclass(frozen=True)
class ShiftClass:
    """Outcome of shifting a function by t: either a period (the function
    value is unchanged) or a quasiperiod with the given nonzero increment.
    `direction` records whether shift and increment agree in sign and is
    None for periods."""

    kind: ShiftKind
    increment: object
    direction: Direction | None

    def __post_init__(self):
        if (self.kind is ShiftKind.PERIOD) != (self.direction is None):
            raise ValueError("direction is carried exactly by quasiperiods")
        if (self.kind is ShiftKind.PERIOD) != self.increment.is_zero:
            raise ValueError("periods are exactly the zero-increment shifts")


def rational_component(x: QuadraticSurd) -> QuadraticSurd:
    return QuadraticSurd(x.a, 0)


def radical_component(x: QuadraticSurd) -> QuadraticSurd:
    return QuadraticSurd(0, x.b)


PROJECTIONS = {"p": rational_component, "q": radical_component}


def classify_shift(fn: str, t: QuadraticSurd) -> ShiftClass:
    """Classify a nonzero shift t as period or quasiperiod of projection fn.

    For `p` the increment is the rational part of t, for `q` the radical
    part; the shift is a period exactly when that part vanishes.
    """
    if fn not in PROJECTIONS:
        raise ValueError(f"unknown projection: {fn!r}")
    if t.is_zero:
        raise ValueError("shift must be nonzero")
    inc = PROJECTIONS[fn](t)
    if inc.is_zero:
        return ShiftClass(ShiftKind.PERIOD, inc, None)
    direction = (
        Direction.INCREASING
        if surd_sign(t) == surd_sign(inc)
        else Direction.DECREASING
    )
    return ShiftClass(ShiftKind.QUASIPERIOD, inc, direction)


def simplest_dyadic_between(lo: QuadraticSurd, hi: QuadraticSurd) -> Fraction:
    """Dyadic rational m/2**k with minimal k (then minimal m) strictly
    between two exact values, doubling the grid until one fits."""
    if surd_compare(lo, hi) != LESS:
        raise ValueError("empty interval")
    k = 0
    while True:
        scale = 1 << k
        m = surd_floor(QuadraticSurd(lo.a * scale, lo.b * scale)) + 1
        if surd_compare(QuadraticSurd(Fraction(m, scale), 0), hi) == LESS:
            return Fraction(m, scale)
        k += 1


def density_witness(
    fn: str,
    x_lo: Fraction,
    x_hi: Fraction,
    y_lo: Fraction,
    y_hi: Fraction,
) -> QuadraticSurd:
    """Exact point x with x_lo < x < x_hi and y_lo < fn(x) < y_hi.

    The function value is pinned first (a rational for `p`, a rational
    multiple of sqrt(2) for `q`), then the free component is chosen so the
    argument lands in the x-window; membership is re-verified exactly.
    """
    if fn not in PROJECTIONS:
        raise ValueError(f"unknown projection: {fn!r}")
    x_lo, x_hi = Fraction(x_lo), Fraction(x_hi)
    y_lo, y_hi = Fraction(y_lo), Fraction(y_hi)
    if x_lo >= x_hi or y_lo >= y_hi:
        raise ValueError("empty window")
    if fn == "p":
        a = simplest_dyadic_between(QuadraticSurd(y_lo, 0), QuadraticSurd(y_hi, 0))
        # need b*sqrt(2) in (x_lo - a, x_hi - a), i.e. b in that window / sqrt(2)
        b = simplest_dyadic_between(
            QuadraticSurd(0, (x_lo - a) / 2), QuadraticSurd(0, (x_hi - a) / 2)
        )
        witness = QuadraticSurd(a, b)
    else:
        b = simplest_dyadic_between(
            QuadraticSurd(0, y_lo / 2), QuadraticSurd(0, y_hi / 2)
        )
        a = simplest_dyadic_between(QuadraticSurd(x_lo, -b), QuadraticSurd(x_hi, -b))
        witness = QuadraticSurd(a, b)

    value = PROJECTIONS[fn](witness)
    if not (
        surd_compare(QuadraticSurd(x_lo, 0), witness) == LESS
        and surd_compare(witness, QuadraticSurd(x_hi, 0)) == LESS
        and surd_compare(QuadraticSurd(y_lo, 0), value) == LESS
        and surd_compare(value, QuadraticSurd(y_hi, 0)) == LESS
    ):
        raise AssertionError("witness failed exact verification")
    return witness
