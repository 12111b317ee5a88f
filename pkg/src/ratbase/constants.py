"""Base-q digit words of pi and sqrt(2), computed offline and verified.

pi comes from the Chudnovsky series with binary splitting, in pure integer
arithmetic; sqrt(2) from an integer square root.  Both are scaled so the
word is the base-q expansion including the integer part: the binary pi
word starts "1100100100..." (digits of floor(pi * 2**m)).

Every extraction is re-verified by recomputing at 10% extra precision and
comparing the requested prefix; a mismatch raises instead of returning
questionable digits.
"""

from __future__ import annotations

from functools import lru_cache

try:
    from gmpy2 import isqrt as _isqrt, mpz as _mpz
except ImportError:  # pragma: no cover
    from math import isqrt as _isqrt

    _mpz = int

_LOG10 = {q: __import__("math").log10(q) for q in range(2, 63)}


def _chudnovsky_split(a: int, b: int):
    """P, Q, T of the Chudnovsky series over term range [a, b)."""
    if b - a == 1:
        if a == 0:
            return _mpz(1), _mpz(1), _mpz(13591409)
        k = _mpz(a)
        P = (6 * k - 5) * (2 * k - 1) * (6 * k - 1)
        Q = k * k * k * 10939058860032000
        T = (13591409 + 545140134 * k) * P
        if a & 1:
            T = -T
        return P, Q, T
    m = (a + b) // 2
    P1, Q1, T1 = _chudnovsky_split(a, m)
    P2, Q2, T2 = _chudnovsky_split(m, b)
    return P1 * P2, Q1 * Q2, Q2 * T1 + P1 * T2


def _pi_scaled(bits: int) -> int:
    """floor(pi * 2**bits), with the series truncated safely past `bits`."""
    # each term contributes ~47.11 bits; a couple of spare terms cover rounding
    terms = bits // 47 + 3
    _, Q, T = _chudnovsky_split(0, terms)
    guard = 64
    s = _isqrt(_mpz(10005) << (2 * (bits + guard)))
    pi_big = (426880 * s * Q) // T  # pi * 2**(bits+guard)
    return int(pi_big >> guard)


def _digits_of(n: int, q: int) -> bytes:
    """Base-q digits of a nonnegative integer, most significant first."""
    n = _mpz(n)
    if hasattr(n, "digits"):
        text = n.digits(q)
        if q <= 10:
            return bytes(ord(c) - 48 for c in text)
        alphabet = "0123456789abcdefghijklmnopqrstuvwxyz"
        lut = {c: i for i, c in enumerate(alphabet)}
        return bytes(lut[c] for c in text)
    return _digits_fallback(int(n), q)


def _digits_fallback(n: int, q: int) -> bytes:
    """Divide-and-conquer base conversion for the no-gmpy2 case."""
    if n < q**16:
        out = []
        while n:
            n, d = divmod(n, q)
            out.append(d)
        return bytes(reversed(out)) or b"\x00"
    shift = q
    width = 1
    while shift * shift <= n:
        shift *= shift
        width *= 2
    hi, lo = divmod(n, shift)
    right = _digits_fallback(lo, q)
    return _digits_fallback(hi, q) + bytes(width - len(right)) + right


def _pi_digits_once(q: int, count: int) -> bytes:
    import math

    bits = int(count * math.log2(q)) + 32
    scaled = _pi_scaled(bits)
    # floor(pi * q**count) = floor(scaled * q**count / 2**bits); the 32 spare
    # bits make the truncation safe, and the guard recomputation checks it.
    value = (scaled * q**count) >> bits
    return _digits_of(value, q)[:count]


@lru_cache(maxsize=8)
def pi_word(q: int, count: int) -> bytes:
    """First `count` base-q digits of pi (integer part included)."""
    if not 2 <= q <= 36:
        raise ValueError("pi digits supported for 2 <= q <= 36")
    if count < 1:
        return b""
    first = _pi_digits_once(q, count)
    check = _pi_digits_once(q, count + count // 10 + 8)
    if first != check[:count]:
        raise ArithmeticError("pi digit extraction failed its guard recomputation")
    return first


def _sqrt2_digits_once(q: int, count: int) -> bytes:
    value = _isqrt(_mpz(2) * q ** (2 * count))
    return _digits_of(value, q)[:count]


@lru_cache(maxsize=8)
def sqrt2_word(q: int, count: int) -> bytes:
    """First `count` base-q digits of sqrt(2) (integer part included)."""
    if not 2 <= q <= 36:
        raise ValueError("sqrt(2) digits supported for 2 <= q <= 36")
    if count < 1:
        return b""
    first = _sqrt2_digits_once(q, count)
    check = _sqrt2_digits_once(q, count + count // 10 + 8)
    if first != check[:count]:
        raise ArithmeticError("sqrt(2) digit extraction failed its guard recomputation")
    return first


def pi_stream(q: int, length: int):
    from .analysis import LetterBuffer

    return LetterBuffer(pi_word(q, length), q, label=f"pi[q={q}]")


def sqrt2_stream(q: int, length: int):
    from .analysis import LetterBuffer

    return LetterBuffer(sqrt2_word(q, length), q, label=f"sqrt2[q={q}]")
