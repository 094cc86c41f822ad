"""A family of pairwise disjoint affine Cantor sets, one inside each interval
of a fixed enumeration of rational open intervals, together with a bit codec
that maps Cantor points onto exactly representable targets.

The enumeration, the inductive placement rule and the codec are all
deterministic, so every placement is a pure function of its index.
Placements are memoized sequentially (each depends on all previous ones);
a lock guards extension of the memo, reads of finished entries are free.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .exactcore import _int_from_digits, _int_to_digits, fraction_value, to_expansion

_lock = threading.RLock()

# ---------------------------------------------------------------------------
# enumeration of rationals and of basis intervals

_rationals: list[Fraction] = []
_rational_sum = 0  # all values with |num| + den <= this are generated

_pairs: list[tuple[int, int]] = []  # emitted (i, j) index pairs
_next_code = 0


def _extend_rationals(count: int) -> None:
    global _rational_sum
    while len(_rationals) < count:
        _rational_sum += 1
        s = _rational_sum
        for num in range(-(s - 1), s):
            den = s - abs(num)
            if den >= 1 and gcd(abs(num), den) == 1:
                _rationals.append(Fraction(num, den))


def _rational(k: int) -> Fraction:
    if len(_rationals) <= k:
        _extend_rationals(k + 1)
    return _rationals[k]


def _decode_pairing(code: int) -> tuple[int, int]:
    s = (isqrt(8 * code + 1) - 1) // 2
    j = code - s * (s + 1) // 2
    return s - j, j


def basis_interval(n: int) -> tuple[Fraction, Fraction]:
    """n-th interval of the fixed enumeration.

    Reduced rationals are ordered by (|num| + den, num); index pairs are
    scanned in pairing-code order and kept when left < right.
    """
    if n < 0:
        raise ValueError("index must be non-negative")
    with _lock:
        global _next_code
        while len(_pairs) <= n:
            i, j = _decode_pairing(_next_code)
            _next_code += 1
            if _rational(i) < _rational(j):
                _pairs.append((i, j))
    i, j = _pairs[n]
    return _rational(i), _rational(j)


# ---------------------------------------------------------------------------
# inductive placement


@dataclass(frozen=True)
class AffineCantor:
    """Image of the standard ternary Cantor set under t -> c + t*(d - c)."""

    index: int
    c: Fraction
    d: Fraction

    def __post_init__(self):
        if self.c >= self.d:
            raise ValueError("need c < d")


_records: list[dict] = []


def _clipped_cover(c: Fraction, d: Fraction, lo: Fraction, hi: Fraction, t: int):
    """Level-t cover intervals of the Cantor set on [c, d] that meet (lo, hi)."""
    if d <= lo or c >= hi:
        return []
    if t == 0:
        return [(c, d)]
    third = (d - c) / 3
    return _clipped_cover(c, c + third, lo, hi, t - 1) + _clipped_cover(
        d - third, d, lo, hi, t - 1
    )


def _merged(segments):
    out = []
    for s, e in sorted(segments):
        if out and s <= out[-1][1]:
            if e > out[-1][1]:
                out[-1][1] = e
        else:
            out.append([s, e])
    return out


def _place(i: int) -> dict:
    a, b = basis_interval(i)
    width = b - a
    depth = 0
    while True:
        segments = []
        for rec in _records[:i]:
            segments += _clipped_cover(rec["c"], rec["d"], a, b, depth)
        merged = _merged(segments)
        covered = sum(min(e, b) - max(s, a) for s, e in merged)
        if covered < width / 2:
            break
        depth += 1
    # gaps of the merged cover inside (a, b); pick the widest, leftmost on ties
    gaps = []
    cursor = a
    for s, e in merged:
        if s > cursor:
            gaps.append((cursor, s))
        cursor = max(cursor, min(e, b))
    if cursor < b:
        gaps.append((cursor, b))
    best = gaps[0]
    for g in gaps[1:]:
        if g[1] - g[0] > best[1] - best[0]:
            best = g
    quarter = (best[1] - best[0]) / 4
    return {
        "index": i,
        "a": a,
        "b": b,
        "c": best[0] + quarter,
        "d": best[1] - quarter,
        "depth": depth,
    }


def ensure_placed(count: int) -> None:
    """Pre-build placements 0..count-1 (idempotent, thread-safe)."""
    with _lock:
        while len(_records) < count:
            _records.append(_place(len(_records)))


def placement_record(i: int) -> dict:
    """Audit record for placement i: index, interval, hull and cover depth."""
    ensure_placed(i + 1)
    return dict(_records[i])


def place_cantor(i: int) -> AffineCantor:
    if i < 0:
        raise ValueError("index must be non-negative")
    ensure_placed(i + 1)
    rec = _records[i]
    return AffineCantor(i, rec["c"], rec["d"])


def _reset_state() -> None:
    # test hook: drops every memoized enumeration and placement
    global _next_code, _rational_sum
    with _lock:
        _rationals.clear()
        _pairs.clear()
        _records.clear()
        _next_code = 0
        _rational_sum = 0


# ---------------------------------------------------------------------------
# membership and the bit codec


def _unit_digits(t: Fraction) -> tuple[bytes, bytes] | None:
    """Ternary digits of t in [0, 1] using only 0s and 2s, or None.

    Terminating expansions are also checked in their trailing-2 alternative
    form, so endpoints such as 1/3 = 0.0(2) count as members.
    """
    if t == 0:
        return b"", b""
    if t == 1:
        return b"", bytes([2])
    e = to_expansion(t, 3)
    if 1 not in e.prefix and 1 not in e.cycle:
        return e.prefix, e.cycle
    if not e.cycle and e.prefix[-1] == 1 and 1 not in e.prefix[:-1]:
        return e.prefix[:-1] + b"\x00", bytes([2])
    return None


def cantor_member(x: Fraction, cs: AffineCantor) -> bool:
    """Exact membership of x in the affine Cantor set."""
    x = Fraction(x)
    t = (x - cs.c) / (cs.d - cs.c)
    if t < 0 or t > 1:
        return False
    return _unit_digits(t) is not None


@dataclass(frozen=True)
class BitStream:
    """Eventually repeating 0/1 stream: prefix bits then a repeating cycle
    (empty cycle = all zeros from there on)."""

    prefix: bytes
    cycle: bytes

    def __post_init__(self):
        object.__setattr__(self, "prefix", bytes(self.prefix))
        object.__setattr__(self, "cycle", bytes(self.cycle))
        for part in (self.prefix, self.cycle):
            if part and max(part) > 1:
                raise ValueError("stream digits must be bits")

    def bit(self, i: int) -> int:
        if i < len(self.prefix):
            return self.prefix[i]
        if self.cycle:
            return self.cycle[(i - len(self.prefix)) % len(self.cycle)]
        return 0


def decode_bits(s: BitStream) -> Fraction:
    """Decode: sign bit (1 -> +), unary run of 1s giving the integer digit
    count, that many integer bits, then binary fraction bits.  A stream whose
    unary run never terminates decodes to 0."""
    endless = bool(s.cycle) and 0 not in s.cycle and 0 not in s.prefix[1:]
    if endless:
        return Fraction(0)
    sign = 1 if s.bit(0) == 1 else -1
    z = 1
    while s.bit(z) == 1:
        z += 1
    m = z - 1
    ipart = _int_from_digits(bytes(s.bit(z + 1 + t) for t in range(m)), 2)
    start = z + 1 + m
    if start >= len(s.prefix):
        if s.cycle:
            n = len(s.cycle)
            off = (start - len(s.prefix)) % n
            rotated = s.cycle[off:] + s.cycle[:off]
            frac = Fraction(_int_from_digits(rotated, 2), (1 << n) - 1)
        else:
            frac = Fraction(0)
    else:
        frac = fraction_value(s.prefix[start:], s.cycle, 2)
    return sign * (ipart + frac)


def encode_value(y: Fraction) -> BitStream:
    """Right inverse of decode_bits on every rational (zero encodes as +)."""
    y = Fraction(y)
    sign_bit = 0 if y < 0 else 1
    mag = abs(y)
    ipart = mag.numerator // mag.denominator
    int_bits = _int_to_digits(ipart, 2)
    frac = to_expansion(mag - ipart, 2)
    prefix = (
        bytes([sign_bit])
        + bytes([1]) * len(int_bits)
        + b"\x00"
        + int_bits
        + frac.prefix
    )
    return BitStream(prefix, frac.cycle)


# ---------------------------------------------------------------------------
# evaluation and preimages


def _halved(digits: bytes) -> bytes:
    return bytes(v >> 1 for v in digits)


def _doubled(bits: bytes) -> bytes:
    return bytes(v << 1 for v in bits)


def evaluate(x: Fraction, bound: int) -> tuple[Fraction, int]:
    """(value, i) if x lies in the i-th Cantor set for some i < bound, else
    (0, bound), meaning 0 unless x lies in a set of index >= bound."""
    if bound < 1:
        raise ValueError("bound must be positive")
    x = Fraction(x)
    ensure_placed(bound)
    for i in range(bound):
        rec = _records[i]
        t = (x - rec["c"]) / (rec["d"] - rec["c"])
        if t < 0 or t > 1:
            continue
        digits = _unit_digits(t)
        if digits is not None:
            stream = BitStream(_halved(digits[0]), _halved(digits[1]))
            return decode_bits(stream), i
    return Fraction(0), bound


def preimage(y: Fraction, l: Fraction, r: Fraction) -> tuple[Fraction, int]:
    """(x, n) with l < x < r, x in the n-th Cantor set, and value exactly y.

    n is the least index whose closed basis interval sits inside (l, r);
    the search cost grows with the arithmetic complexity of the endpoints.
    """
    y, l, r = Fraction(y), Fraction(l), Fraction(r)
    if l >= r:
        raise ValueError("empty interval")
    n = 0
    while True:
        a, b = basis_interval(n)
        if l < a and b < r:
            break
        n += 1
    cs = place_cantor(n)
    stream = encode_value(y)
    t = fraction_value(_doubled(stream.prefix), _doubled(stream.cycle), 3)
    return cs.c + t * (cs.d - cs.c), n
