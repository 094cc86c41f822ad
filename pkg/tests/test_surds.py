import random
from fractions import Fraction as F

import pytest

from wildfuncs.surds import (
    EQUAL,
    GREATER,
    LESS,
    QuadraticSurd,
    format_surd,
    parse_surd,
    sqrt2_enclosure,
    surd_arith,
    surd_compare,
    surd_floor,
    surd_sign,
)


def rand_surd(rng, bound=50, den=20):
    return QuadraticSurd(
        F(rng.randint(-bound, bound), rng.randint(1, den)),
        F(rng.randint(-bound, bound), rng.randint(1, den)),
    )


class TestCompare:
    def test_mixed_sign_examples(self):
        # 3 - 2*sqrt(2) > 0 because 3**2 = 9 > 8 = 2*2**2
        assert surd_compare(QuadraticSurd(3, -2), QuadraticSurd(0, 0)) == GREATER
        assert surd_compare(QuadraticSurd(-3, 2), QuadraticSurd(0, 0)) == LESS

    def test_one_below_root_two(self):
        assert surd_compare(QuadraticSurd(1, 0), QuadraticSurd(0, 1)) == LESS

    def test_equal(self):
        assert surd_compare(QuadraticSurd(F(1, 2), 3), QuadraticSurd(F(1, 2), 3)) == EQUAL

    def test_antisymmetry_randomized(self):
        rng = random.Random(11)
        for _ in range(500):
            u, v = rand_surd(rng), rand_surd(rng)
            assert surd_compare(u, v) == -surd_compare(v, u)

    def test_consistent_with_rational_order(self):
        rng = random.Random(12)
        for _ in range(300):
            a = F(rng.randint(-99, 99), rng.randint(1, 30))
            b = F(rng.randint(-99, 99), rng.randint(1, 30))
            expected = (a > b) - (a < b)
            assert surd_compare(QuadraticSurd(a, 0), QuadraticSurd(b, 0)) == expected

    def test_sign_agrees_with_float_sanity(self):
        rng = random.Random(13)
        root = 2**0.5
        for _ in range(300):
            u = rand_surd(rng)
            approx = float(u.a) + float(u.b) * root
            if abs(approx) > 1e-6:
                assert surd_sign(u) == (1 if approx > 0 else -1)


class TestArith:
    def test_add_cancels(self):
        assert surd_arith(QuadraticSurd(1, 1), QuadraticSurd(1, -1), "add") == QuadraticSurd(2, 0)

    def test_root_two_squared(self):
        assert surd_arith(QuadraticSurd(0, 1), QuadraticSurd(0, 1), "mul") == QuadraticSurd(2, 0)

    def test_conjugate_product(self):
        assert surd_arith(QuadraticSurd(1, 1), QuadraticSurd(1, -1), "mul") == QuadraticSurd(-1, 0)

    def test_unknown_op(self):
        with pytest.raises(ValueError):
            surd_arith(QuadraticSurd(1, 0), QuadraticSurd(1, 0), "div")


class TestFloor:
    def test_randomized_against_compare(self):
        rng = random.Random(21)
        for _ in range(400):
            u = rand_surd(rng, 200, 40)
            n = surd_floor(u)
            assert surd_compare(QuadraticSurd(n, 0), u) in (LESS, EQUAL)
            assert surd_compare(QuadraticSurd(n + 1, 0), u) == GREATER

    def test_exact_integers(self):
        assert surd_floor(QuadraticSurd(5, 0)) == 5
        assert surd_floor(QuadraticSurd(-5, 0)) == -5
        assert surd_floor(QuadraticSurd(0, 1)) == 1
        assert surd_floor(QuadraticSurd(0, -1)) == -2


class TestEnclosure:
    def test_brackets_root_two(self):
        for bits in (4, 16, 64):
            lo, hi = sqrt2_enclosure(bits)
            assert lo * lo <= 2 < hi * hi
            assert hi - lo == F(1, 2**bits)


class TestLiterals:
    def test_parse_full_form(self):
        assert parse_surd("-1+1*s2") == QuadraticSurd(-1, 1)
        assert parse_surd("11/2+-7/2*s2") == QuadraticSurd(F(11, 2), F(-7, 2))

    def test_parse_bare_rational(self):
        assert parse_surd("3/4") == QuadraticSurd(F(3, 4), 0)

    def test_round_trip(self):
        rng = random.Random(31)
        for _ in range(100):
            u = rand_surd(rng)
            assert parse_surd(format_surd(u)) == u

    def test_reject_garbage(self):
        for bad in ("s2", "1+1", "1+1*s3", "one+two*s2"):
            with pytest.raises(ValueError):
                parse_surd(bad)
