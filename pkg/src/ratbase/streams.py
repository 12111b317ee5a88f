"""Resumable letter-at-a-time generators for minimal and maximal words.

Letters obey the modular recurrence on the running valuation n of the
extended word: the next minimal letter is (-p*n) mod q and the next
maximal letter is the unique member of {p-q, ..., p-1} congruent to
-p*n mod q; either way n becomes (p*n + letter) / q, exactly.

Two interchangeable backends hold that state:

* Nat -- the exact valuation as an arbitrary-precision integer (grows
  roughly log2(p/q) bits per letter, unbounded horizon).
* ShrinkingResidue -- the valuation modulo q**m where m is the remaining
  letter budget; each emitted letter consumes one modulus factor, so the
  state never exceeds the budget's footprint and the stream refuses to
  run past it.

The Nat backend advances in batches: the next k letters depend only on
n mod q**k, so they are produced from that small residue and n is then
pushed forward k steps in one multiply/exact-divide.  This is the same
recurrence, just regrouped; both backends emit identical letters.

Snapshot wire format (``snapshot``/``resume``), all big-endian:
magic "RBWS", version u16, kind u8 (0 min / 1 max), backend u8
(0 nat / 1 shrink), p u64, q u64, seed length u32, seed digits u32 each,
position u64, then the state: nat = length-prefixed magnitude bytes;
shrink = modulus exponent u64 followed by length-prefixed residue bytes.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

from .core import Base, EMPTY_WORD, Word, ceil_step, is_in_language, rep, val_int, word_to_str
from .errors import (
    InvalidLetterError,
    InvalidSeedError,
    InvalidWordError,
    SnapshotError,
    StreamExhaustedError,
)

try:  # big-int acceleration; plain int is used when unavailable
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover
    _mpz = int

_CHUNK = 4096

_MAGIC = b"RBWS"
_VERSION = 1


def _advance(p: int, q: int, n, count: int, off: int):
    """Advance the valuation `count` letters, returning (letters, new state).

    `off` is 0 for minimal letters and p-q for maximal ones.  Letters are
    returned as a bytearray (alphabets here never exceed one byte; the
    stream classes guard that).
    """
    out = bytearray()
    if count <= 0:
        return out, n
    P, Q = _mpz(p), _mpz(q)
    n = _mpz(n)
    pk = qk = None
    left = count
    while left > 0:
        k = min(_CHUNK, left)
        if k == _CHUNK:
            if pk is None:
                pk, qk = P**k, Q**k
            pm, qm = pk, qk
        else:
            pm, qm = P**k, Q**k
        r0 = n % qm
        r = r0
        if off:
            for _ in range(k):
                a = off + ((-P * (r + 1)) % Q)
                r = (P * r + a) // Q
                out.append(a)
        else:
            for _ in range(k):
                a = (-P * r) % Q
                r = (P * r + a) // Q
                out.append(a)
        n = pm * ((n - r0) // qm) + r
        left -= k
    return out, int(n)


@dataclass(frozen=True)
class ShrinkingResidue:
    """State of the fixed-budget backend: valuation mod q**modulus_exponent."""

    residue: int
    modulus_exponent: int


class _NatBackend:
    __slots__ = ("n",)
    name = "nat"

    def __init__(self, n: int):
        self.n = n

    def advance(self, p: int, q: int, count: int, off: int) -> bytearray:
        letters, self.n = _advance(p, q, self.n, count, off)
        return letters

    @property
    def state(self) -> int:
        return self.n

    def remaining(self):
        return None


class _ShrinkBackend:
    __slots__ = ("r", "m", "_modulus")
    name = "shrink"

    def __init__(self, q: int, n: int, budget: int):
        if budget < 0:
            raise ValueError("letter budget must be nonnegative")
        self.m = budget
        self._modulus = q**budget
        self.r = n % self._modulus

    def advance(self, p: int, q: int, count: int, off: int) -> bytearray:
        if count > self.m:
            raise StreamExhaustedError(
                f"budget exhausted: {count} letters requested, {self.m} left"
            )
        out = bytearray()
        r, m, modulus = self.r, self.m, self._modulus
        for _ in range(count):
            if off:
                a = off + ((-p * (r + 1)) % q)
            else:
                a = (-p * r) % q
            r = (p * r + a) // q
            m -= 1
            modulus //= q
            if modulus > 1:
                r %= modulus
            else:
                r = 0
            out.append(a)
        self.r, self.m, self._modulus = r, m, modulus
        return out

    @property
    def state(self) -> ShrinkingResidue:
        return ShrinkingResidue(self.r, self.m)

    def remaining(self):
        return self.m


class _WordStream:
    """Common machinery for minimal and maximal word streams."""

    _kind_code: int
    _is_max: bool

    def __init__(self, base: Base, seed: Word, *, backend: str = "nat", budget: int | None = None):
        self._check_seed(base, seed)
        if base.p - 1 > 255:
            raise InvalidLetterError("streams emit single-byte letters; need p <= 256")
        self.base = base
        self.seed = seed
        self._off = (base.p - base.q) if self._is_max else 0
        self._position = 0
        n0 = val_int(base, seed)
        if backend == "nat":
            if budget is not None:
                raise ValueError("the nat backend takes no budget")
            self._backend = _NatBackend(n0)
        elif backend == "shrink":
            if budget is None:
                raise ValueError("the shrink backend needs a letter budget")
            self._backend = _ShrinkBackend(base.q, n0, budget)
        else:
            raise ValueError(f"unknown backend {backend!r}")

    def _check_seed(self, base: Base, seed: Word) -> None:
        if not is_in_language(base, seed):
            raise InvalidWordError(
                f"seed {word_to_str(base, seed)} is not in the language of base {base}"
            )

    @classmethod
    def from_valuation(cls, base: Base, n: int, **kwargs) -> "_WordStream":
        return cls(base, rep(base, n), **kwargs)

    @property
    def position(self) -> int:
        """Number of letters emitted so far."""
        return self._position

    @property
    def state(self) -> Union[int, ShrinkingResidue]:
        """Exact valuation of seed + emitted letters (or its shrinking residue)."""
        return self._backend.state

    @property
    def alphabet_size(self) -> int:
        return self.base.q

    @property
    def letter_offset(self) -> int:
        """Smallest letter this stream can emit (0 for min, p-q for max)."""
        return self._off

    @property
    def subalphabet(self) -> range:
        return range(self._off, self._off + self.base.q)

    def next_letter(self) -> int:
        return self.take(1)[0]

    def take(self, count: int) -> bytearray:
        """Emit the next `count` letters; state and position stay exact."""
        letters = self._backend.advance(self.base.p, self.base.q, count, self._off)
        self._position += len(letters)
        return letters

    def letters(self, count: int, chunk: int = 1 << 16) -> Iterator[int]:
        """Iterate over the next `count` letters, drawing in chunks."""
        left = count
        while left > 0:
            for a in self.take(min(chunk, left)):
                yield a
            left -= min(chunk, left)

    def prefix(self, length: int) -> Word:
        """First `length` letters from a fresh clone of this stream's seed."""
        clone = type(self)(self.base, self.seed)
        return tuple(clone.take(length))

    # -- snapshots ---------------------------------------------------

    def snapshot(self) -> bytes:
        parts = [
            _MAGIC,
            struct.pack(">HBB", _VERSION, self._kind_code, 0 if self._backend.name == "nat" else 1),
            struct.pack(">QQ", self.base.p, self.base.q),
            struct.pack(">I", len(self.seed)),
            struct.pack(f">{len(self.seed)}I", *self.seed) if self.seed else b"",
            struct.pack(">Q", self._position),
        ]
        if self._backend.name == "nat":
            parts.append(_pack_nat(self._backend.n))
        else:
            parts.append(struct.pack(">Q", self._backend.m))
            parts.append(_pack_nat(self._backend.r))
        return b"".join(parts)

    @classmethod
    def resume(cls, blob: bytes) -> "_WordStream":
        if blob[:4] != _MAGIC:
            raise SnapshotError("not a ratbase stream snapshot")
        version, kind, backend_code = struct.unpack(">HBB", blob[4:8])
        if version != _VERSION:
            raise SnapshotError(f"unsupported snapshot version {version}")
        if kind != cls._kind_code:
            raise SnapshotError("snapshot holds a different stream kind")
        p, q = struct.unpack(">QQ", blob[8:24])
        (seedlen,) = struct.unpack(">I", blob[24:28])
        pos0 = 28 + 4 * seedlen
        seed = struct.unpack(f">{seedlen}I", blob[28:pos0]) if seedlen else ()
        (position,) = struct.unpack(">Q", blob[pos0 : pos0 + 8])
        rest = blob[pos0 + 8 :]
        stream = cls.__new__(cls)
        stream.base = Base(p, q)
        stream.seed = tuple(seed)
        stream._off = (p - q) if cls._is_max else 0
        stream._position = position
        if backend_code == 0:
            n, rest = _unpack_nat(rest)
            stream._backend = _NatBackend(n)
        else:
            (m,) = struct.unpack(">Q", rest[:8])
            r, rest = _unpack_nat(rest[8:])
            backend = _ShrinkBackend.__new__(_ShrinkBackend)
            backend.r, backend.m, backend._modulus = r, m, q**m
            stream._backend = backend
        if rest:
            raise SnapshotError("trailing bytes in snapshot")
        return stream

    def save(self, path) -> None:
        import os

        tmp = f"{path}.tmp"
        with open(tmp, "wb") as fh:
            fh.write(self.snapshot())
        os.replace(tmp, path)

    @classmethod
    def load(cls, path) -> "_WordStream":
        with open(path, "rb") as fh:
            return cls.resume(fh.read())


def _pack_nat(n: int) -> bytes:
    raw = int(n).to_bytes((int(n).bit_length() + 7) // 8 or 1, "big")
    return struct.pack(">I", len(raw)) + raw


def _unpack_nat(blob: bytes):
    (size,) = struct.unpack(">I", blob[:4])
    return int.from_bytes(blob[4 : 4 + size], "big"), blob[4 + size :]


class MinWordStream(_WordStream):
    """Letters of the minimal word with the given seed, over {0, ..., q-1}."""

    _kind_code = 0
    _is_max = False

    def _check_seed(self, base: Base, seed: Word) -> None:
        super()._check_seed(base, seed)
        if seed == EMPTY_WORD:
            raise InvalidSeedError("minimal words need a nonempty seed word")


class MaxWordStream(_WordStream):
    """Letters of the maximal word with the given seed, over {p-q, ..., p-1}."""

    _kind_code = 1
    _is_max = True


def sigma(base: Base, letters: Sequence[int]):
    """Letterwise shift i -> i + p - q, taking {0,...,q-1} onto {p-q,...,p-1}."""
    shift = base.p - base.q
    for a in letters:
        if not 0 <= a < base.q:
            raise InvalidLetterError(f"letter {a} outside {{0,...,{base.q - 1}}}")
    if isinstance(letters, (bytes, bytearray)):
        return bytes(a + shift for a in letters)
    return tuple(a + shift for a in letters)


def nmin(base: Base, u: Word, l: int) -> int:
    """Valuation of u extended by its first l minimal letters.

    Computed by iterating the ceiling map on val(u); the stream state and
    val(u . wmin_prefix(u, l)) must agree with this, which the tests check.
    """
    if u == EMPTY_WORD:
        raise InvalidSeedError("nmin is undefined for the empty seed word")
    if l < 0:
        raise ValueError("l must be nonnegative")
    x = val_int(base, u)
    for _ in range(l):
        x = ceil_step(base, x)
    return x


def wmin_prefix(base: Base, u: Word, length: int) -> Word:
    """First `length` letters of the minimal word with seed u."""
    return tuple(MinWordStream(base, u).take(length))


def wmax_prefix(base: Base, u: Word, length: int) -> Word:
    """First `length` letters of the maximal word with seed u."""
    return tuple(MaxWordStream(base, u).take(length))
