"""Digit words of pi and sqrt(2), cross-checked against an independent library."""

import mpmath
import pytest

from ratbase.constants import pi_stream, pi_word, sqrt2_word


def _mpmath_digits(value_expr, q, count):
    """Base-q digits via mpmath at generous precision (independent oracle)."""
    mpmath.mp.prec = int(count * mpmath.log(q, 2)) + 64
    x = value_expr()
    scaled = int(mpmath.floor(x * mpmath.mpf(q) ** count))
    out = []
    while scaled:
        scaled, d = divmod(scaled, q)
        out.append(d)
    return bytes(reversed(out))[:count]


@pytest.mark.parametrize("q", [2, 3, 5, 8, 10])
def test_pi_prefix_matches_mpmath(q):
    count = 2000
    ours = pi_word(q, count)
    oracle = _mpmath_digits(lambda: mpmath.pi, q, count)
    assert ours[: len(oracle)] == oracle[: len(ours)]


def test_pi_binary_head():
    # 3.14159... = 11.001001000011111101101010100010... in binary
    assert pi_word(2, 32) == bytes(
        int(c) for c in "11001001000011111101101010100010"
    )


def test_pi_decimal_head():
    assert pi_word(10, 20) == bytes(int(c) for c in "31415926535897932384")


@pytest.mark.parametrize("q", [2, 3, 5, 8, 10])
def test_sqrt2_prefix_matches_mpmath(q):
    count = 2000
    ours = sqrt2_word(q, count)
    oracle = _mpmath_digits(lambda: mpmath.sqrt(2), q, count)
    assert ours[: len(oracle)] == oracle[: len(ours)]


def test_sqrt2_binary_head():
    # 1.41421... = 1.0110101000001001111... in binary
    assert sqrt2_word(2, 20) == bytes(int(c) for c in "10110101000001001111")


def test_stream_interface():
    s = pi_stream(10, 100)
    assert bytes(s.take(5)) == bytes([3, 1, 4, 1, 5])
    assert s.position == 5
