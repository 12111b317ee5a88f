"""Tests of the exact numeration arithmetic (val/rep/successor/ordering/language)."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ratbase.core import (
    Base,
    EMPTY_WORD,
    ceil_step,
    enumerate_rc,
    is_in_language,
    radix_cmp,
    rep,
    successor,
    val,
    val_int,
    word_from_str,
    word_to_str,
)
from ratbase.errors import InvalidBaseError, InvalidWordError, ResourceLimitError

B73 = Base(7, 3)
B32 = Base(3, 2)

# Expansions of 0..29 in base 7/3 (counting table of the source system).
TABLE_7_3 = [
    "", "3", "6", "32", "35", "61", "64", "320", "323", "326",
    "352", "355", "611", "614", "640", "643", "646", "3202", "3205", "3231",
    "3234", "3260", "3263", "3266", "3522", "3525", "3551", "3554", "6110", "6113",
]


def w(base, s):
    return word_from_str(base, s)


class TestBase:
    def test_parse(self):
        assert Base.parse("7/3") == B73
        assert Base.parse(" 3/2 ") == B32
        assert Base.parse("5") == Base(5, 1)

    @pytest.mark.parametrize("bad", ["3/3", "2/3", "6/3", "0/1", "4/2", "x/y"])
    def test_invalid(self, bad):
        with pytest.raises(InvalidBaseError):
            Base.parse(bad)


class TestVal:
    def test_single_digit_three(self):
        assert val(B73, w(B73, "3")).as_integer() == 1

    def test_digit_one_is_one_over_q(self):
        r = val(B73, w(B73, "1"))
        assert (r.numerator, r.denominator) == (1, 3)

    def test_empty_word_is_zero(self):
        assert val(B73, EMPTY_WORD).as_integer() == 0

    def test_ten_is_seven_ninths(self):
        r = val(B73, w(B73, "10"))
        assert (r.numerator, r.denominator) == (7, 9)

    def test_digit_out_of_range(self):
        with pytest.raises(InvalidWordError):
            val(B73, (7,))


class TestRep:
    def test_table_7_3(self):
        for n, expected in enumerate(TABLE_7_3):
            assert word_to_str(B73, rep(B73, n)).replace("ε", "") == expected

    def test_zero_is_empty(self):
        assert rep(B73, 0) == EMPTY_WORD

    def test_round_trip_3_2(self):
        for n in range(1001):
            u = rep(B32, n)
            assert val_int(B32, u) == n
            assert not u or u[0] != 0

    @given(st.integers(min_value=0, max_value=10**30))
    @settings(max_examples=200, deadline=None)
    def test_round_trip_random_large(self, n):
        assert val_int(B73, rep(B73, n)) == n

    def test_q1_matches_integer_bases(self):
        for p in range(2, 10):
            base = Base(p, 1)
            for n in range(1001):
                digits = rep(base, n)
                expected = tuple(int(c, p) for c in _to_base(n, p))
                assert digits == expected


def _to_base(n, b):
    if n == 0:
        return ""
    out = []
    while n:
        n, d = divmod(n, b)
        out.append("0123456789abcdef"[d])
    return "".join(reversed(out))


class TestSuccessor:
    def test_carry_cascade(self):
        assert successor(B73, w(B73, "3234")) == w(B73, "3260")

    def test_empty_word(self):
        assert successor(B73, EMPTY_WORD) == w(B73, "3")

    def test_table_rows_9_10(self):
        assert successor(B73, w(B73, "326")) == w(B73, "352")

    def test_odometer_matches_rep(self):
        for base in (B32, B73, Base(8, 5)):
            for n in range(10**4):
                assert successor(base, rep(base, n)) == rep(base, n + 1)

    def test_rejects_non_canonical(self):
        with pytest.raises(InvalidWordError):
            successor(B73, w(B73, "1"))


class TestRadixOrder:
    def test_three_less_than_ten(self):
        assert radix_cmp(w(B73, "3"), w(B73, "10")) == -1

    def test_shorter_wins(self):
        # mirrors the classic ba < abb < baa illustration, on digits
        assert radix_cmp((1, 0), (0, 1, 1)) == -1

    def test_equal(self):
        assert radix_cmp(w(B73, "614"), w(B73, "614")) == 0

    def test_monotone_in_n(self):
        for n in range(10**4):
            assert radix_cmp(rep(B73, n), rep(B73, n + 1)) == -1


class TestLanguage:
    def test_members(self):
        assert is_in_language(B73, w(B73, "614"))
        assert is_in_language(B73, EMPTY_WORD)

    def test_non_integral(self):
        assert not is_in_language(B73, w(B73, "1"))

    def test_leading_zero(self):
        assert not is_in_language(B73, (0, 3))

    def test_prefix_closure(self):
        for n in range(10**4):
            u = rep(B73, n)
            for k in range(len(u)):
                assert is_in_language(B73, u[:k])


class TestEnumerateRC:
    def test_rc_of_3_length_1(self):
        got = enumerate_rc(B73, w(B73, "3"), 1)
        assert [word_to_str(B73, v) for v in got] == ["2", "5"]

    def test_rc_of_3_length_2(self):
        got = enumerate_rc(B73, w(B73, "3"), 2)
        assert [word_to_str(B73, v) for v in got] == ["20", "23", "26", "52", "55"]

    def test_rc_of_empty_length_1(self):
        got = enumerate_rc(B73, EMPTY_WORD, 1)
        assert [word_to_str(B73, v) for v in got] == ["3", "6"]

    def test_right_extendable(self):
        for n in range(10**3):
            assert enumerate_rc(B73, rep(B73, n), 1)

    def test_extensions_land_in_language(self):
        u = w(B73, "32")
        for v in enumerate_rc(B73, u, 3):
            assert is_in_language(B73, u + v)

    def test_matches_scan_of_language(self):
        # Independent route: scan expansions of 0..N and collect those
        # extending u by exactly l digits.
        u = w(B73, "3")
        by_scan = sorted(
            rep(B73, n)[len(u) :]
            for n in range(3000)
            if rep(B73, n)[: len(u)] == u and len(rep(B73, n)) == len(u) + 3
        )
        assert enumerate_rc(B73, u, 3) == by_scan

    def test_cap(self):
        with pytest.raises(ResourceLimitError):
            enumerate_rc(B73, w(B73, "3"), 10, cap=16)


class TestCeilStep:
    def test_small_trajectory(self):
        xs = [1]
        for _ in range(2):
            xs.append(ceil_step(B73, xs[-1]))
        assert xs == [1, 3, 7]
        assert ceil_step(B73, 7) == 17

    def test_zero_fixed_point(self):
        assert ceil_step(B32, 0) == 0

    def test_collatz_like_rewrite(self):
        for n in range(1, 11):
            expected = (3 * n + 1) // 2 if n % 2 else 3 * n // 2
            assert ceil_step(B32, n) == expected


class TestWordText:
    def test_round_trip_small_alphabet(self):
        for s in ("", "3", "6113"):
            assert word_to_str(B73, word_from_str(B73, s)).replace("ε", "") == s

    def test_dot_separated_large_alphabet(self):
        base = Base(13, 4)
        word = (12, 0, 5)
        assert word_to_str(base, word) == "12.0.5"
        assert word_from_str(base, "12.0.5") == word

    def test_epsilon_glyph(self):
        assert word_from_str(B73, "ε") == EMPTY_WORD
        assert word_to_str(B73, EMPTY_WORD) == "ε"
