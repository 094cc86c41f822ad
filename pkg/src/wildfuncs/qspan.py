"""Finite-dimensional exact models of additive maps.

A basis declares finitely many real numbers (the unit 1, square roots of
distinct squarefree integers, or named constants with certified interval
evaluators); elements are rational coordinate vectors over it and additive
maps are rational matrices.  Linear algebra is exact; questions about the
real line (signs, ordering, interval membership) are answered through
certified enclosures that are exact for surd-only bases and degrade to an
explicit undecided outcome for named constants.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .projections import Direction, ShiftClass, ShiftKind

DEFAULT_PRECISION = 128


class UndecidedComparisonError(Exception):
    """A comparison involving named constants ran out of precision budget."""


# ---------------------------------------------------------------------------
# certified enclosures for the built-in named constants


def _atan_inv_bounds(n: int, terms: int) -> tuple[Fraction, Fraction]:
    # alternating series for atan(1/n); consecutive partial sums bracket it
    s = Fraction(0)
    sign = 1
    npow = n
    for j in range(terms):
        s += Fraction(sign, (2 * j + 1) * npow)
        sign = -sign
        npow *= n * n
    nxt = Fraction(sign, (2 * terms + 1) * npow)
    return (s + nxt, s) if nxt < 0 else (s, s + nxt)


@lru_cache(maxsize=None)
def _pi_enclosure(bits: int) -> tuple[Fraction, Fraction]:
    target = Fraction(1, 1 << bits)
    terms = bits // 4 + 2
    while True:
        lo5, hi5 = _atan_inv_bounds(5, terms)
        lo239, hi239 = _atan_inv_bounds(239, terms)
        lo = 16 * lo5 - 4 * hi239
        hi = 16 * hi5 - 4 * lo239
        if hi - lo <= target:
            return lo, hi
        terms *= 2


@lru_cache(maxsize=None)
def _e_enclosure(bits: int) -> tuple[Fraction, Fraction]:
    target = Fraction(1, 1 << bits)
    k = 8
    while True:
        s = Fraction(0)
        fact = 1
        for j in range(k + 1):
            if j:
                fact *= j
            s += Fraction(1, fact)
        rem = Fraction(2, fact * (k + 1))
        if rem <= target:
            return s, s + rem
        k *= 2


OPAQUE_ENCLOSURES = {"pi": _pi_enclosure, "e": _e_enclosure}


def register_opaque(name: str, encloser) -> None:
    """Register a certified interval evaluator bits -> (lo, hi)."""
    OPAQUE_ENCLOSURES[name] = encloser


@lru_cache(maxsize=None)
def _sqrt_enclosure(d: int, bits: int) -> tuple[Fraction, Fraction]:
    lo = Fraction(isqrt(d << (2 * bits)), 1 << bits)
    return lo, lo + Fraction(1, 1 << bits)


def _is_squarefree(d: int) -> bool:
    if d % 4 == 0:
        return False
    f = 3
    while f * f <= d:
        if d % (f * f) == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# bases, elements, maps


@dataclass(frozen=True)
class Symbol:
    """One declared basis number: the unit 1, sqrt(radicand), or a named
    constant looked up in the opaque-evaluator registry."""

    kind: str
    radicand: int = 0
    name: str = ""

    def __post_init__(self):
        if self.kind == "one":
            return
        if self.kind == "sqrt":
            if self.radicand < 2 or not _is_squarefree(self.radicand):
                raise ValueError(
                    f"radicand must be squarefree and >= 2, got {self.radicand}"
                )
            return
        if self.kind == "opaque":
            if self.name not in OPAQUE_ENCLOSURES:
                raise ValueError(f"unknown opaque constant: {self.name!r}")
            return
        raise ValueError(f"unknown symbol kind: {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> "Symbol":
        if text == "1":
            return cls("one")
        if text.startswith("sqrt:"):
            return cls("sqrt", radicand=int(text[5:]))
        if text.startswith("opaque:"):
            return cls("opaque", name=text[7:])
        raise ValueError(f"unknown symbol: {text!r}")

    def describe(self) -> str:
        if self.kind == "one":
            return "1"
        if self.kind == "sqrt":
            return f"sqrt:{self.radicand}"
        return f"opaque:{self.name}"

    def enclosure(self, bits: int) -> tuple[Fraction, Fraction]:
        if self.kind == "one":
            return Fraction(1), Fraction(1)
        if self.kind == "sqrt":
            return _sqrt_enclosure(self.radicand, bits)
        return OPAQUE_ENCLOSURES[self.name](bits)


@dataclass(frozen=True)
class SpanBasis:
    """Ordered basis of declared reals, asserted Q-linearly independent.

    Independence is checkable (and checked) only for the unit-and-surd case:
    distinct squarefree radicands plus at most one unit are independent.
    """

    symbols: tuple[Symbol, ...]

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        if not self.symbols:
            raise ValueError("basis needs at least one symbol")
        if sum(1 for s in self.symbols if s.kind == "one") > 1:
            raise ValueError("at most one unit symbol")
        radicands = [s.radicand for s in self.symbols if s.kind == "sqrt"]
        if len(radicands) != len(set(radicands)):
            raise ValueError("surd radicands must be pairwise distinct")

    @classmethod
    def from_strings(cls, items) -> "SpanBasis":
        return cls(tuple(Symbol.parse(t) for t in items))

    @property
    def dim(self) -> int:
        return len(self.symbols)

    def describe(self) -> list[str]:
        return [s.describe() for s in self.symbols]


@dataclass(frozen=True)
class SpanElement:
    basis: SpanBasis
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(q) for q in self.coords))
        if len(self.coords) != self.basis.dim:
            raise ValueError("coordinate count does not match basis size")

    @property
    def is_zero(self) -> bool:
        return all(q == 0 for q in self.coords)

    def _join(self, other: "SpanElement") -> None:
        if self.basis != other.basis:
            raise ValueError("basis mismatch")

    def __add__(self, other: "SpanElement") -> "SpanElement":
        self._join(other)
        return SpanElement(self.basis, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "SpanElement") -> "SpanElement":
        self._join(other)
        return SpanElement(self.basis, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "SpanElement":
        return SpanElement(self.basis, tuple(-a for a in self.coords))

    def scale(self, q: Fraction) -> "SpanElement":
        q = Fraction(q)
        return SpanElement(self.basis, tuple(q * a for a in self.coords))


@dataclass(frozen=True)
class AdditiveMap:
    """Rational matrix over a span basis; column k holds the coordinates of
    the image of basis symbol k."""

    basis: SpanBasis
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(v) for v in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        n = self.basis.dim
        if len(rows) != n or any(len(row) != n for row in rows):
            raise ValueError("matrix must be square with basis dimension")


def apply_map(f: AdditiveMap, x: SpanElement) -> SpanElement:
    if f.basis != x.basis:
        raise ValueError("basis mismatch")
    coords = tuple(
        sum((r * c for r, c in zip(row, x.coords)), Fraction(0)) for row in f.rows
    )
    return SpanElement(f.basis, coords)


# ---------------------------------------------------------------------------
# exact linear algebra


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    row = 0
    for col in range(ncols):
        pivot_row = next((r for r in range(row, nrows) if m[r][col] != 0), None)
        if pivot_row is None:
            continue
        m[row], m[pivot_row] = m[pivot_row], m[row]
        inv = m[row][col]
        m[row] = [v / inv for v in m[row]]
        for r in range(nrows):
            if r != row and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[row])]
        pivots.append(col)
        row += 1
        if row == nrows:
            break
    return m, pivots


def rank(f: AdditiveMap) -> int:
    """Pivot count from forward elimination (no back-substitution)."""
    m = [list(r) for r in f.rows]
    n = f.basis.dim
    r = 0
    for col in range(n):
        pivot_row = next((i for i in range(r, n) if m[i][col] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        for i in range(r + 1, n):
            if m[i][col] != 0:
                factor = m[i][col] / m[r][col]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def kernel_basis(f: AdditiveMap) -> list[SpanElement]:
    """Basis of the null space; every member is a period of the map."""
    n = f.basis.dim
    reduced, pivots = _rref([list(r) for r in f.rows])
    free = [c for c in range(n) if c not in pivots]
    out = []
    for fc in free:
        coords = [Fraction(0)] * n
        coords[fc] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            coords[pc] = -reduced[row_idx][fc]
        out.append(SpanElement(f.basis, tuple(coords)))
    return out


def is_injective(f: AdditiveMap) -> bool:
    return rank(f) == f.basis.dim


def is_surjective(f: AdditiveMap) -> bool:
    # full row rank; over a square rational matrix this coincides with
    # injectivity, which is what makes in-interval witnesses need a kernel
    return rank(f) == f.basis.dim


def solve_image(f: AdditiveMap, y: SpanElement) -> SpanElement | None:
    """One exact solution of f(x) = y, or None if y is outside the image.
    Free coordinates are set to zero."""
    if f.basis != y.basis:
        raise ValueError("basis mismatch")
    n = f.basis.dim
    augmented = [list(row) + [y.coords[i]] for i, row in enumerate(f.rows)]
    reduced, pivots = _rref(augmented)
    if n in pivots:
        return None
    coords = [Fraction(0)] * n
    for row_idx, pc in enumerate(pivots):
        coords[pc] = reduced[row_idx][n]
    return SpanElement(f.basis, tuple(coords))


# ---------------------------------------------------------------------------
# certified real-line questions


def _irrational_support(x: SpanElement) -> bool:
    return any(
        q != 0 and s.kind != "one" for q, s in zip(x.coords, x.basis.symbols)
    )


def _opaque_support(x: SpanElement) -> bool:
    return any(
        q != 0 and s.kind == "opaque" for q, s in zip(x.coords, x.basis.symbols)
    )


def _rational_part(x: SpanElement) -> Fraction:
    for q, s in zip(x.coords, x.basis.symbols):
        if s.kind == "one":
            return q
    return Fraction(0)


def enclosure_value(x: SpanElement, bits: int) -> tuple[Fraction, Fraction]:
    """Certified bounds on the real value of x at the given precision."""
    lo = hi = Fraction(0)
    for q, sym in zip(x.coords, x.basis.symbols):
        if q == 0:
            continue
        slo, shi = sym.enclosure(bits)
        if q > 0:
            lo += q * slo
            hi += q * shi
        else:
            lo += q * shi
            hi += q * slo
    return lo, hi


def real_sign_offset(
    x: SpanElement, offset: Fraction, precision_budget: int = DEFAULT_PRECISION
) -> int | None:
    """Exact sign of value(x) - offset; None only when opaque symbols are
    involved and the precision budget runs out."""
    offset = Fraction(offset)
    if not _irrational_support(x):
        diff = _rational_part(x) - offset
        return (diff > 0) - (diff < 0)
    opaque = _opaque_support(x)
    bits = 32
    while True:
        lo, hi = enclosure_value(x, bits)
        if lo > offset:
            return 1
        if hi < offset:
            return -1
        if opaque and bits >= precision_budget:
            return None
        bits *= 2


def real_sign(x: SpanElement, precision_budget: int = DEFAULT_PRECISION) -> int | None:
    return real_sign_offset(x, Fraction(0), precision_budget)


def real_compare(
    u: SpanElement, v: SpanElement, precision_budget: int = DEFAULT_PRECISION
) -> int | None:
    """-1/0/+1 for the real values of u, v; 0 only on identical coordinates;
    None when the budget is exhausted (opaque bases only)."""
    if u.basis != v.basis:
        raise ValueError("basis mismatch")
    if u.coords == v.coords:
        return 0
    return real_sign(u - v, precision_budget)


def classify_shift(
    f: AdditiveMap, t: SpanElement, precision_budget: int = DEFAULT_PRECISION
) -> ShiftClass:
    """Period when f(t) = 0, else quasiperiod with increment f(t); the
    direction compares the real-value signs of t and f(t)."""
    if t.is_zero:
        raise ValueError("shift must be nonzero")
    increment = apply_map(f, t)
    if increment.is_zero:
        return ShiftClass(ShiftKind.PERIOD, increment, None)
    st = real_sign(t, precision_budget)
    si = real_sign(increment, precision_budget)
    if st is None or si is None or st == 0 or si == 0:
        raise UndecidedComparisonError(
            "shift direction is undecided at the configured precision"
        )
    direction = Direction.INCREASING if st == si else Direction.DECREASING
    return ShiftClass(ShiftKind.QUASIPERIOD, increment, direction)


def surjection_witness(
    f: AdditiveMap,
    y: SpanElement,
    l: Fraction,
    r: Fraction,
    precision_budget: int = DEFAULT_PRECISION,
) -> SpanElement:
    """Exact x with f(x) = y whose real value lies strictly in (l, r).

    Solves for one preimage, then steers it along a kernel element of
    nonzero real value; the dyadic coefficient is found on refining grids
    and every candidate is admitted only after exact interval checks.
    """
    l, r = Fraction(l), Fraction(r)
    if l >= r:
        raise ValueError("empty interval")
    x0 = solve_image(f, y)
    if x0 is None:
        raise ValueError("target is not in the image")
    kernel = kernel_basis(f)
    if not kernel:
        raise ValueError("map is injective: no kernel to steer with")
    steer = None
    for k in kernel:
        s = real_sign(k, precision_budget)
        if s is None:
            raise UndecidedComparisonError("kernel sign undecided within budget")
        if s != 0:
            steer = k
            break
    if steer is None:
        raise ValueError("kernel has no element of nonzero real value")
    mid = (l + r) / 2
    depth = 0
    while depth <= 4 * precision_budget:
        bits = 32 + depth
        v0_lo, v0_hi = enclosure_value(x0, bits)
        vk_lo, vk_hi = enclosure_value(steer, bits)
        mid_vk = (vk_lo + vk_hi) / 2
        if mid_vk != 0:
            est = (mid - (v0_lo + v0_hi) / 2) / mid_vk
            scale = 1 << depth
            base_m = (est.numerator * scale) // est.denominator
            for m in range(base_m - 2, base_m + 4):
                x = x0 + steer.scale(Fraction(m, scale))
                s_lo = real_sign_offset(x, l, precision_budget)
                if s_lo is None:
                    raise UndecidedComparisonError("interval check undecided")
                if s_lo <= 0:
                    continue
                s_hi = real_sign_offset(x, r, precision_budget)
                if s_hi is None:
                    raise UndecidedComparisonError("interval check undecided")
                if s_hi < 0:
                    return x
        depth += 1
    raise UndecidedComparisonError("no admissible coefficient within budget")


# ---------------------------------------------------------------------------
# graph identities


def graph_translation_identity(f: AdditiveMap, x: SpanElement, s: SpanElement) -> bool:
    """Translating the graph point (x, f(x)) by (s, f(s)) stays on the graph."""
    return apply_map(f, x + s) == apply_map(f, x) + apply_map(f, s)


def point_symmetry_identity(f: AdditiveMap, x0: SpanElement, x: SpanElement) -> bool:
    """The graph is symmetric about each of its points (x0, f(x0))."""
    return apply_map(f, x0.scale(2) - x) == apply_map(f, x0).scale(2) - apply_map(f, x)


# ---------------------------------------------------------------------------
# declaration files


def load_map(path: str) -> AdditiveMap:
    """Read an additive map declaration: JSON with a `basis` list of symbol
    strings and a `matrix` of rational literals (rows)."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    basis = SpanBasis.from_strings(data["basis"])
    rows = tuple(tuple(Fraction(v) for v in row) for row in data["matrix"])
    return AdditiveMap(basis, rows)


def parse_coords(text: str, basis: SpanBasis) -> SpanElement:
    parts = [p.strip() for p in text.split(",")]
    return SpanElement(basis, tuple(Fraction(p) for p in parts))


def format_element(x: SpanElement) -> str:
    return ",".join(str(q) for q in x.coords)
