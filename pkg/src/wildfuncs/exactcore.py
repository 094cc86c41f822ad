"""Exact scalar kernel: reduced rationals, repeating positional expansions
in bases 2 and 3, and digit-cylinder targeting of open intervals.

Everything in this module is integer arithmetic over `fractions.Fraction`;
no floating point is used anywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

try:  # optional C-speed base conversion for very long expansions
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _mpz = None

Rational = Fraction

SUPPORTED_BASES = (2, 3)

_RATIONAL_RE = re.compile(r"^-?\d+(?:/\d+)?$")

# digit bytes <-> ascii digit strings
_ASCII_TO_DIGITS = bytes.maketrans(b"012", bytes([0, 1, 2]))
_DIGITS_TO_ASCII = bytes.maketrans(bytes([0, 1, 2]), b"012")

# denominators whose odd part is at most this are expanded by plain long
# division; between this and _ORDER_LIMIT the repeating block is produced in
# closed form (cheaper for long periods); above _ORDER_LIMIT factoring is not
# worth it and long division is used again.
_DIVISION_LIMIT = 10_000
_ORDER_LIMIT = 1_000_000


def parse_rational(text: str) -> Fraction:
    """Parse the literal syntax `n` or `n/d` with optional leading minus."""
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(text)


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def rational_arith(x: Fraction, y: Fraction, op: str) -> Fraction:
    """Exact rational arithmetic; `op` is one of add, sub, mul, div."""
    x, y = Fraction(x), Fraction(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        if y == 0:
            raise ZeroDivisionError("rational division by zero")
        return x / y
    raise ValueError(f"unknown operation: {op!r}")


def _check_base(base: int) -> None:
    if base not in SUPPORTED_BASES:
        raise ValueError(f"base must be one of {SUPPORTED_BASES}, got {base}")


# ---------------------------------------------------------------------------
# digit rendering helpers (bytes hold one digit value per byte, MSB first)

_POW3: dict[int, int] = {}


def _pow3(e: int) -> int:
    v = _POW3.get(e)
    if v is None:
        v = 3**e
        _POW3[e] = v
    return v


def _digits_base2(n: int, width: int) -> bytes:
    if width == 0:
        return b""
    s = bin(n)[2:]
    out = s.encode("ascii").translate(_ASCII_TO_DIGITS)
    if len(out) < width:
        out = bytes(width - len(out)) + out
    return out


_CHUNK = 10
_CHUNK_POW = 3**_CHUNK
_CHUNK_TABLE: list[bytes] = []


def _chunk_table() -> list[bytes]:
    # 3**10 entries of ten digit bytes each, composed from a 3**5 half table
    if not _CHUNK_TABLE:
        half = []
        for v in range(243):
            out = bytearray(5)
            for i in range(4, -1, -1):
                v, out[i] = divmod(v, 3)
            half.append(bytes(out))
        _CHUNK_TABLE.extend(
            half[v // 243] + half[v % 243] for v in range(_CHUNK_POW)
        )
    return _CHUNK_TABLE


def _digits_base3(n: int, width: int) -> bytes:
    """Exactly `width` base-3 digits of n, divide-and-conquer for big inputs."""
    if width <= 320:
        if n == 0:
            return bytes(width)
        table = _chunk_table()
        parts = []
        while n:
            n, rem = divmod(n, _CHUNK_POW)
            parts.append(table[rem])
        s = b"".join(reversed(parts))
        if len(s) >= width:
            return s[-width:]
        return bytes(width - len(s)) + s
    if _mpz is not None:
        s = _mpz(n).digits(3).encode("ascii").translate(_ASCII_TO_DIGITS)
        if len(s) >= width:
            return s[-width:]
        return bytes(width - len(s)) + s
    half = width >> 1
    hi, lo = divmod(n, _pow3(half))
    return _digits_base3(hi, width - half) + _digits_base3(lo, half)


def _int_to_digits_padded(n: int, base: int, width: int) -> bytes:
    return _digits_base2(n, width) if base == 2 else _digits_base3(n, width)


def _base3_width(n: int) -> int:
    # exact digit count of n > 0 in base 3
    w = max(1, int(n.bit_length() * 0.6309297535714574))
    while _pow3(w) <= n:
        w += 1
    while w > 1 and _pow3(w - 1) > n:
        w -= 1
    return w


def _int_to_digits(n: int, base: int) -> bytes:
    if n == 0:
        return b""
    if base == 2:
        return _digits_base2(n, n.bit_length())
    return _digits_base3(n, _base3_width(n))


def _int_from_digits(digits: bytes, base: int) -> int:
    if not digits:
        return 0
    if base == 2:
        return int(digits.translate(_DIGITS_TO_ASCII), 2)

    if _mpz is not None and len(digits) > 320:
        return int(_mpz(digits.translate(_DIGITS_TO_ASCII).decode("ascii"), 3))

    def rec(d: bytes) -> int:
        w = len(d)
        if w <= 320:
            return int(d.translate(_DIGITS_TO_ASCII), 3)
        half = w >> 1
        return rec(d[: w - half]) * _pow3(half) + rec(d[w - half :])

    return rec(digits)


def _proper_divisors(n: int):
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            if d != n:
                small.append(d)
            if d * d != n and n // d != n:
                large.append(n // d)
    yield from small
    yield from reversed(large)


# ---------------------------------------------------------------------------
# canonical expansions


@dataclass(frozen=True)
class DigitExpansion:
    """Canonical positional expansion of a rational in base 2 or 3.

    Digits are stored as bytes, one digit value per byte, most significant
    first.  ``cycle == b""`` means the expansion terminates.  Canonical form
    bans cycles that are all zeros or all (base-1), requires the shortest
    possible cycle, starts the cycle as early as possible, and represents
    zero as ``+0`` with no digits.  The constructor rejects anything else.
    """

    base: int
    sign: int
    integer_digits: bytes
    prefix: bytes
    cycle: bytes

    def __post_init__(self):
        object.__setattr__(self, "integer_digits", bytes(self.integer_digits))
        object.__setattr__(self, "prefix", bytes(self.prefix))
        object.__setattr__(self, "cycle", bytes(self.cycle))
        _check_base(self.base)
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        top = self.base - 1
        for part in (self.integer_digits, self.prefix, self.cycle):
            if part and max(part) > top:
                raise ValueError("digit out of range for base")
        if self.integer_digits and self.integer_digits[0] == 0:
            raise ValueError("leading zero in integer digits")
        n = len(self.cycle)
        if n:
            if self.cycle.count(0) == n:
                raise ValueError("all-zero cycle is not canonical")
            if self.cycle.count(top) == n:
                raise ValueError(f"all-{top} cycle is the excluded representation")
            for d in _proper_divisors(n):
                if self.cycle == self.cycle[:d] * (n // d):
                    raise ValueError("cycle is not minimal")
            if self.prefix and self.prefix[-1] == self.cycle[-1]:
                raise ValueError("cycle does not start as early as possible")
        elif self.prefix and self.prefix[-1] == 0:
            raise ValueError("terminating expansion must not end in zero")
        if not (self.integer_digits or self.prefix or self.cycle) and self.sign != 1:
            raise ValueError("zero carries sign +1")

    @property
    def is_terminating(self) -> bool:
        return not self.cycle

    def digit_str(self) -> str:
        out = "-" if self.sign < 0 else ""
        out += self.integer_digits.translate(_DIGITS_TO_ASCII).decode() or "0"
        if self.prefix or self.cycle:
            out += "." + self.prefix.translate(_DIGITS_TO_ASCII).decode()
            if self.cycle:
                out += "(" + self.cycle.translate(_DIGITS_TO_ASCII).decode() + ")"
        return out

    def __str__(self) -> str:
        return self.digit_str()


def _cycle_by_division(r0: int, m: int, base: int) -> bytes:
    # tail r0/m is purely periodic: stop when the starting remainder returns
    out = bytearray()
    r = r0
    while True:
        d, r = divmod(r * base, m)
        out.append(d)
        if r == r0:
            return bytes(out)


_SMALL_PRIMES: list[int] = []


def _small_primes() -> list[int]:
    if not _SMALL_PRIMES:
        sieve = bytearray(b"\x01") * 1001
        sieve[:2] = b"\x00\x00"
        for p in range(2, 32):
            if sieve[p]:
                sieve[p * p :: p] = b"\x00" * len(sieve[p * p :: p])
        _SMALL_PRIMES.extend(i for i in range(1001) if sieve[i])
    return _SMALL_PRIMES


def _factorize(m: int) -> list[tuple[int, int]]:
    # valid for m <= _ORDER_LIMIT: after trial division by primes < 1000 the
    # leftover is 1 or prime
    out = []
    for p in _small_primes():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
    if m > 1:
        out.append((m, 1))
    return out


def _multiplicative_order(b: int, m: int) -> int:
    lam = 1
    for p, e in _factorize(m):
        if p == 2 and e >= 3:
            t = 1 << (e - 2)
        elif p == 2:
            t = 1 << (e - 1)
        else:
            t = (p - 1) * p ** (e - 1)
        lam = lam * t // gcd(lam, t)
    order = lam
    for p, _ in _factorize(lam):
        while order % p == 0 and pow(b, order // p, m) == 1:
            order //= p
    return order


def _fraction_digits(num: int, den: int, base: int) -> tuple[bytes, bytes]:
    """(prefix, cycle) digits of num/den in [0, 1), gcd(num, den) = 1."""
    if num == 0:
        return b"", b""
    pre = 0
    m = den
    while m % base == 0:
        m //= base
        pre += 1
    head, r = divmod(num * base**pre, den)
    prefix = _int_to_digits_padded(head, base, pre)
    if r == 0:
        return prefix, b""
    r0 = r // base**pre  # tail r0/m is reduced and purely periodic
    if _DIVISION_LIMIT < m <= _ORDER_LIMIT:
        n = _multiplicative_order(base, m)
        cycle = _int_to_digits_padded(r0 * (base**n - 1) // m, base, n)
    else:
        cycle = _cycle_by_division(r0, m, base)
    return prefix, cycle


def to_expansion(x: Fraction, base: int) -> DigitExpansion:
    """Canonical expansion of x; the repeating block is detected exactly."""
    _check_base(base)
    x = Fraction(x)
    sign = 1
    if x < 0:
        sign, x = -1, -x
    ipart, rem = divmod(x.numerator, x.denominator)
    prefix, cycle = _fraction_digits(rem, x.denominator, base)
    return DigitExpansion(base, sign, _int_to_digits(ipart, base), prefix, cycle)


def fraction_value(prefix: bytes, cycle: bytes, base: int) -> Fraction:
    """Exact value of 0.<prefix>(<cycle>) in the given base.

    Pure value computation; the digits need not be in canonical form.
    """
    p, n = len(prefix), len(cycle)
    head = _int_from_digits(prefix, base)
    if n:
        c = _int_from_digits(cycle, base)
        return Fraction(head * (base**n - 1) + c, base**p * (base**n - 1))
    return Fraction(head, base**p)


def from_expansion(e: DigitExpansion) -> Fraction:
    """Exact value of a canonical expansion.

    Canonical form is enforced by the `DigitExpansion` constructor, so any
    instance that exists can be converted.
    """
    ipart = _int_from_digits(e.integer_digits, e.base)
    return e.sign * (ipart + fraction_value(e.prefix, e.cycle, e.base))


# ---------------------------------------------------------------------------
# digit cylinders


@dataclass(frozen=True)
class CylinderPrefix:
    """Digit prefix whose closed cylinder [value, value + base**-depth] sits
    strictly inside the open interval it was built for."""

    base: int
    depth: int
    value: Fraction

    def right(self) -> Fraction:
        return self.value + Fraction(1, self.base**self.depth)

    def integer_part(self) -> int:
        return self.value.numerator // self.value.denominator

    def fraction_digits(self) -> bytes:
        scaled = (self.value - self.integer_part()) * self.base**self.depth
        return _int_to_digits_padded(int(scaled), self.base, self.depth)


def cylinder_for_interval(l: Fraction, r: Fraction, base: int) -> CylinderPrefix:
    """Smallest-depth cylinder (leftmost on ties) strictly inside (l, r)."""
    _check_base(base)
    l, r = Fraction(l), Fraction(r)
    if l >= r:
        raise ValueError("empty interval")
    k = 0
    while True:
        scale = base**k
        m = (l.numerator * scale) // l.denominator + 1  # least m with m/scale > l
        if Fraction(m + 1, scale) < r:
            return CylinderPrefix(base, k, Fraction(m, scale))
        k += 1
