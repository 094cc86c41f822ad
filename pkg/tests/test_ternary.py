import random
from fractions import Fraction as F

import pytest

from wildfuncs import ternary
from wildfuncs.exactcore import DigitExpansion, from_expansion, to_expansion


class TestEvaluate:
    def test_adjacent_twos_fraction_only(self):
        # 226/243 = 0.22101 in base 3: empty block, tail 101 -> 0.101 binary
        assert ternary.evaluate(F(226, 243)) == F(5, 8)

    def test_block_carries_integer_part(self):
        # 70/81 = 0.2121: block "1", tail "1" -> 1.1 in binary
        assert to_expansion(F(70, 81), 3).digit_str() == "0.2121"
        assert ternary.evaluate(F(70, 81)) == F(3, 2)

    def test_no_twos_gives_zero(self):
        assert ternary.evaluate(F(1, 3)) == 0

    def test_single_two_gives_zero(self):
        assert ternary.evaluate(F(2, 3)) == 0  # 0.2

    def test_infinitely_many_twos_gives_zero(self):
        assert to_expansion(F(1, 4), 3).digit_str() == "0.(02)"
        assert ternary.evaluate(F(1, 4)) == 0

    def test_repeating_tail(self):
        # 0.22(01) in base 3: tail value 0.(01) binary = 1/3
        x = from_expansion(DigitExpansion(3, 1, b"", bytes([2, 2]), bytes([0, 1])))
        assert ternary.evaluate(x) == F(1, 3)

    def test_negative_argument_uses_fractional_part(self):
        x = F(226, 243)
        assert ternary.evaluate(x - 1) == ternary.evaluate(x)


class TestEvaluateSigned:
    def test_positive_flag(self):
        assert ternary.evaluate_signed(F(70, 81)) == F(1, 2)

    def test_negative_flag(self):
        assert to_expansion(F(61, 81), 3).digit_str() == "0.2021"
        assert ternary.evaluate_signed(F(61, 81)) == F(-1, 2)

    def test_empty_block_stays_positive(self):
        assert ternary.evaluate_signed(F(226, 243)) == F(5, 8)

    def test_zero_cases_match_unsigned(self):
        for x in (F(1, 3), F(1, 4), F(0)):
            assert ternary.evaluate_signed(x) == 0


class TestPeriodicity:
    def test_shift_pairs(self):
        assert ternary.shift_pair(F(226, 243), 1) == (F(5, 8), F(5, 8))
        assert ternary.shift_pair(F(226, 243), -3) == (F(5, 8), F(5, 8))
        assert ternary.shift_pair(F(0), 5) == (F(0), F(0))

    def test_randomized(self):
        rng = random.Random(51)
        for _ in range(300):
            x = F(rng.randint(-3000, 3000), rng.randint(1, 500))
            k = rng.randint(-4, 4)
            a, b = ternary.shift_pair(x, k)
            assert a == b


class TestPreimage:
    def test_golden_five_eighths(self):
        x = ternary.preimage(F(5, 8), F(1, 2), F(2, 3))
        assert x == F(3628, 6561)
        assert to_expansion(x, 3).digit_str() == "0.11222101"
        assert ternary.evaluate(x) == F(5, 8)
        assert F(1, 2) < x < F(2, 3)

    def test_golden_three_halves(self):
        x = ternary.preimage(F(3, 2), F(0), F(1))
        assert x == F(151, 243)
        assert to_expansion(x, 3).digit_str() == "0.12121"

    def test_golden_zero_target(self):
        x = ternary.preimage(F(0), F(0), F(1))
        assert x == F(17, 27)
        assert to_expansion(x, 3).digit_str() == "0.122"
        assert ternary.evaluate(x) == 0

    def test_errors(self):
        with pytest.raises(ValueError):
            ternary.preimage(F(1), F(1, 3), F(1, 3))
        with pytest.raises(ValueError):
            ternary.preimage(F(-1), F(0), F(1))

    def test_signed_negative_round_trip(self):
        x = ternary.preimage(F(-9, 4), F(5), F(6), signed=True)
        assert 5 < x < 6
        assert ternary.evaluate_signed(x) == F(-9, 4)

    def test_randomized_round_trip(self):
        rng = random.Random(52)
        for _ in range(200):
            signed = rng.random() < 0.5
            y = F(rng.randint(-400, 400), rng.randint(1, 64))
            if not signed:
                y = abs(y)
            l = F(rng.randint(-900, 900), rng.randint(1, 30))
            r = l + F(rng.randint(1, 60), rng.randint(1, 30))
            x = ternary.preimage(y, l, r, signed=signed)
            assert l < x < r
            value = ternary.evaluate_signed(x) if signed else ternary.evaluate(x)
            assert value == y

    def test_rationality_preserved(self):
        # evaluation of rationals lands on rationals by construction
        assert isinstance(ternary.evaluate(F(70, 81)), F)


class TestAudit:
    def test_positions_and_blocks(self):
        audit = ternary.digit_audit(F(70, 81))
        assert audit["expansion"] == "0.2121"
        assert audit["two_positions"] == (0, 2)
        assert audit["block_digits"] == "1"
        assert audit["tail_digits"] == "1"
        assert audit["value"] == "3/2"
        assert audit["value_signed"] == "1/2"

    def test_zero_case(self):
        audit = ternary.digit_audit(F(1, 3))
        assert audit["two_positions"] is None
        assert audit["value"] == "0"
