"""An everywhere surjection read off ternary digits.

Only the fractional ternary digits of the argument matter (so the map has
period 1).  If the canonical expansion has fewer than two digit-2s, or
infinitely many, the value is 0.  Otherwise the digits strictly between the
last two 2s form a binary integer part and the digits after the last 2 a
binary fractional part; those digits are automatically all 0/1.

The signed variant consumes the first digit of the between-block as a sign
flag: 0 means negative, 1 positive; an empty block stays non-negative.
"""

from __future__ import annotations

from fractions import Fraction

from .exactcore import (
    DigitExpansion,
    _int_from_digits,
    _int_to_digits,
    cylinder_for_interval,
    fraction_value,
    to_expansion,
)

_TWO = 2


def _fractional_expansion(x: Fraction) -> DigitExpansion:
    x = Fraction(x)
    return to_expansion(x - (x.numerator // x.denominator), 3)


def _locate_last_two(e: DigitExpansion) -> tuple[int, int] | None:
    """Positions (i, j) of the last two 2s in the fractional prefix, or None
    when the value of the map is 0 by convention."""
    if _TWO in e.cycle:  # infinitely many 2s
        return None
    if e.prefix.count(_TWO) < 2:
        return None
    j = e.prefix.rfind(_TWO)
    i = e.prefix.rfind(_TWO, 0, j)
    return i, j


def evaluate(x: Fraction) -> Fraction:
    """Exact value of the unsigned map at a rational point."""
    e = _fractional_expansion(x)
    pos = _locate_last_two(e)
    if pos is None:
        return Fraction(0)
    i, j = pos
    ipart = _int_from_digits(e.prefix[i + 1 : j], 2)
    return ipart + fraction_value(e.prefix[j + 1 :], e.cycle, 2)


def evaluate_signed(x: Fraction) -> Fraction:
    """Signed variant: the leading block digit is consumed as the sign."""
    e = _fractional_expansion(x)
    pos = _locate_last_two(e)
    if pos is None:
        return Fraction(0)
    i, j = pos
    block = e.prefix[i + 1 : j]
    frac = fraction_value(e.prefix[j + 1 :], e.cycle, 2)
    if not block:
        return frac
    magnitude = _int_from_digits(block[1:], 2) + frac
    return magnitude if block[0] == 1 else -magnitude


def shift_pair(x: Fraction, k: int) -> tuple[Fraction, Fraction]:
    """(value at x, value at x + k); the two agree for every integer k."""
    x = Fraction(x)
    return evaluate(x), evaluate(x + k)


def preimage(
    y: Fraction, l: Fraction, r: Fraction, signed: bool = False
) -> Fraction:
    """Rational x with l < x < r whose map value is exactly y.

    A digit cylinder inside (l, r) pins the location; behind it the digits
    2, <sign flag if signed><binary integer digits of y>, 2, <binary fraction
    digits of y> are appended.  Every appended digit other than the two 2s is
    0 or 1, so they are the last two 2s and evaluation recovers y.
    """
    y, l, r = Fraction(y), Fraction(l), Fraction(r)
    if l >= r:
        raise ValueError("empty interval")
    if not signed and y < 0:
        raise ValueError("unsigned mode requires y >= 0")
    cyl = cylinder_for_interval(l, r, 3)
    mag = abs(y)
    int_bits = _int_to_digits(mag.numerator // mag.denominator, 2)
    frac_bits = to_expansion(mag - mag.numerator // mag.denominator, 2)
    block = int_bits
    if signed:
        block = bytes([0 if y < 0 else 1]) + block
    suffix_prefix = bytes([_TWO]) + block + bytes([_TWO]) + frac_bits.prefix
    tail = fraction_value(suffix_prefix, frac_bits.cycle, 3)
    return cyl.value + tail / 3**cyl.depth


def digit_audit(x: Fraction) -> dict:
    """Digit-level trace of one evaluation, for display."""
    e = _fractional_expansion(x)
    pos = _locate_last_two(e)
    audit = {
        "expansion": e.digit_str(),
        "two_positions": None,
        "block_digits": "",
        "tail_digits": "",
        "value": str(evaluate(x)),
        "value_signed": str(evaluate_signed(x)),
    }
    if pos is not None:
        i, j = pos
        audit["two_positions"] = (i, j)
        audit["block_digits"] = "".join(map(str, e.prefix[i + 1 : j]))
        tail = "".join(map(str, e.prefix[j + 1 :]))
        if e.cycle:
            tail += "(" + "".join(map(str, e.cycle)) + ")"
        audit["tail_digits"] = tail
    return audit
