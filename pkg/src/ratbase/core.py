"""Exact arithmetic for rational-base p/q numeration systems.

A base is a coprime pair p > q >= 1.  A word is a tuple of digits in
{0, ..., p-1}, most significant first; the empty tuple is the empty word
and represents 0.  All arithmetic here is exact integer/rational work --
no floating point, so language membership is a true integrality test.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import (
    InvalidBaseError,
    InvalidWordError,
    ResourceLimitError,
)

Word = tuple[int, ...]

EMPTY_WORD: Word = ()

#: Glyph used for the empty word in textual output.
EPSILON = "ε"

# Default cap on the number of candidate extensions enumerate_rc may hold.
DEFAULT_ENUM_CAP = 1 << 20


@dataclass(frozen=True)
class Base:
    """A rational base p/q with p > q >= 1 and gcd(p, q) = 1."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if not (isinstance(self.p, int) and isinstance(self.q, int)):
            raise InvalidBaseError(f"base components must be integers, got {self.p!r}/{self.q!r}")
        if not self.p > self.q >= 1:
            raise InvalidBaseError(f"need p > q >= 1, got {self.p}/{self.q}")
        if gcd(self.p, self.q) != 1:
            raise InvalidBaseError(f"p and q must be coprime, got {self.p}/{self.q}")

    @classmethod
    def parse(cls, text: str) -> "Base":
        """Parse a base from a "p/q" string ("3" is shorthand for "3/1")."""
        s = text.strip()
        if "/" in s:
            num, _, den = s.partition("/")
        else:
            num, den = s, "1"
        try:
            p, q = int(num), int(den)
        except ValueError:
            raise InvalidBaseError(f"cannot parse base from {text!r}") from None
        return cls(p, q)

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


@dataclass(frozen=True)
class Rational:
    """An exact nonnegative rational whose denominator is a power of the base's q.

    Stored in lowest terms over powers of q: the denominator is q**j with
    j minimal, so integers always carry denominator 1.
    """

    numerator: int
    denominator: int

    @property
    def is_integer(self) -> bool:
        return self.denominator == 1

    def as_integer(self) -> int:
        if not self.is_integer:
            raise ValueError(f"{self} is not an integer")
        return self.numerator

    def __str__(self) -> str:
        if self.denominator == 1:
            return str(self.numerator)
        return f"{self.numerator}/{self.denominator}"


def _make_rational(num: int, q: int, exponent: int) -> Rational:
    """Reduce num / q**exponent by whole factors of q only."""
    den = q**exponent
    if q > 1:
        while den > 1 and num % q == 0:
            num //= q
            den //= q
    else:
        den = 1
    return Rational(num, den)


def check_word(base: Base, w: Word) -> None:
    """Raise InvalidWordError unless every digit of w fits the alphabet {0,...,p-1}."""
    for d in w:
        if not (isinstance(d, int) and 0 <= d <= base.p - 1):
            raise InvalidWordError(f"digit {d!r} out of range for base {base}")


def word_to_str(base: Base, w: Word) -> str:
    """Render a word: contiguous characters for p <= 10, dot-separated values above."""
    if not w:
        return EPSILON
    if base.p <= 10:
        return "".join(str(d) for d in w)
    return ".".join(str(d) for d in w)


def word_from_str(base: Base, text: str) -> Word:
    """Parse a word rendered by word_to_str; "" and the epsilon glyph mean the empty word."""
    s = text.strip()
    if s in ("", EPSILON, "eps", "epsilon"):
        return EMPTY_WORD
    if base.p <= 10:
        if not s.isdigit():
            raise InvalidWordError(f"cannot parse word {text!r} for base {base}")
        w = tuple(int(c) for c in s)
    else:
        try:
            w = tuple(int(part) for part in s.split("."))
        except ValueError:
            raise InvalidWordError(f"cannot parse word {text!r} for base {base}") from None
    check_word(base, w)
    return w


def val(base: Base, w: Word) -> Rational:
    """Exact value represented by w: (1/q) * sum of a_i * (p/q)**i.

    The result's denominator is a power of q, reduced; integral values
    come back with denominator 1.
    """
    check_word(base, w)
    p, q = base.p, base.q
    # Appending digit d maps num/q**e to (p*num + d*q**e) / q**(e+1).
    num, exponent, qe = 0, 0, 1
    for d in w:
        num = p * num + d * qe
        qe *= q
        exponent += 1
    return _make_rational(num, q, exponent)


def val_int(base: Base, w: Word) -> int:
    """Value of a word known to be in the language; raises if non-integral."""
    v = val(base, w)
    if not v.is_integer:
        raise InvalidWordError(f"word {word_to_str(base, w)} has non-integer value {v}")
    return v.numerator


def rep(base: Base, n: int) -> Word:
    """Canonical expansion of a nonnegative integer; rep(0) is the empty word.

    Digits are produced least significant first: a_0 = (q*n) mod p, then
    n <- (q*n - a_0) / p until n reaches 0.
    """
    if n < 0:
        raise ValueError(f"rep expects a nonnegative integer, got {n}")
    p, q = base.p, base.q
    digits = []
    while n > 0:
        qn = q * n
        a = qn % p
        digits.append(a)
        n = (qn - a) // p
    digits.reverse()
    return tuple(digits)


def is_in_language(base: Base, w: Word) -> bool:
    """True iff w is the canonical expansion of some nonnegative integer."""
    try:
        check_word(base, w)
    except InvalidWordError:
        return False
    if not w:
        return True
    if w[0] == 0:
        return False
    return val(base, w).is_integer


def successor(base: Base, w: Word) -> Word:
    """Digit-local odometer: the expansion of val(w) + 1.

    Reading right to left, the rightmost digit below p-q gains q and every
    digit to its right gains q-p; with no such digit, all digits gain q-p
    and a leading digit q is prepended.
    """
    if not is_in_language(base, w):
        raise InvalidWordError(f"{word_to_str(base, w)} is not a canonical expansion in base {base}")
    p, q = base.p, base.q
    digits = list(w)
    for j in range(len(digits) - 1, -1, -1):
        if digits[j] < p - q:
            digits[j] += q
            for i in range(j + 1, len(digits)):
                digits[i] += q - p
            return tuple(digits)
    return tuple([q] + [d + q - p for d in digits])


def radix_cmp(w1: Word, w2: Word) -> int:
    """Radix order: shorter words first, ties broken lexicographically.

    Returns -1, 0 or 1.
    """
    if len(w1) != len(w2):
        return -1 if len(w1) < len(w2) else 1
    if w1 == w2:
        return 0
    return -1 if w1 < w2 else 1


def ceil_step(base: Base, n: int) -> int:
    """One application of the ceiling map n -> ceil(p*n / q), computed exactly."""
    if n < 0:
        raise ValueError(f"ceil_step expects a nonnegative integer, got {n}")
    return -((-base.p * n) // base.q)


def enumerate_rc(base: Base, u: Word, l: int, cap: int = DEFAULT_ENUM_CAP) -> list[Word]:
    """All right continuations of u of length exactly l, in radix order.

    Level-by-level value arithmetic: every prefix of a language word is a
    language word, so a length-t extension survives iff its value is an
    integer (and, when u is empty, iff it does not start with 0).  This is
    deliberately independent of the stream generators and serves as their
    brute-force oracle.
    """
    if l < 0:
        raise ValueError("extension length must be nonnegative")
    if not is_in_language(base, u):
        raise InvalidWordError(f"seed {word_to_str(base, u)} is not in the language of base {base}")
    p, q = base.p, base.q
    level: list[tuple[Word, int]] = [(EMPTY_WORD, val_int(base, u))]
    for step in range(l):
        nxt: list[tuple[Word, int]] = []
        for v, x in level:
            d0 = (-p * x) % q
            for d in range(d0, p, q):
                if step == 0 and not u and d == 0:
                    continue  # a continuation of the empty word must not start with 0
                nxt.append((v + (d,), (p * x + d) // q))
            if len(nxt) > cap:
                raise ResourceLimitError(
                    f"enumerate_rc would exceed cap={cap} candidate extensions at length {step + 1}"
                )
        level = nxt
    words = sorted(w for w, _ in level)
    return words


