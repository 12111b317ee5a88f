"""Baseline word streams: seeded random, Champernowne, infinite de Bruijn.

The random stream uses a splitmix-style 64-bit generator so that runs are
bit-reproducible across implementations: the state advances by the golden
constant and is mixed by two xor-shift-multiply rounds.  A letter is the
top of the product z*q (multiply-shift), whose deviation from uniform is
below q/2**64 < 2**-50 for every alphabet used here.

The infinite de Bruijn stream is built by order raising: the order-(l+1)
prefix extends the order-l prefix along an Eulerian path of the unused
(l+1)-grams, chosen smallest-letter-first so the word is deterministic.
Such extensions exist for every alphabet of size at least three, which is
also why q = 2 is refused.  The construction is not assumed correct: the
tests replay the exactly-once prefix property on the emitted word.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass

from .errors import ResourceLimitError, UnsupportedError

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

#: Largest buffer (letters) the de Bruijn stream will materialize.
DEBRUIJN_BUFFER_CAP = 1 << 25


def splitmix64(state: int) -> tuple[int, int]:
    """One generator step: returns (output, new state)."""
    state = (state + _GOLDEN) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return z ^ (z >> 31), state


def random_letters(rng_seed: int, start: int, count: int, q: int) -> bytearray:
    """Letters start+1 .. start+count of the seeded random q-ary word.

    Output position i uses the mix of rng_seed + i*golden, so any window
    can be produced without replaying the stream.
    """
    out = bytearray(count)
    for i in range(count):
        s = (rng_seed + (start + 1 + i) * _GOLDEN) & _MASK64
        z = ((s ^ (s >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        z ^= z >> 31
        out[i] = (z * q) >> 64
    return out


def random_letters_np(rng_seed: int, start: int, count: int, q: int):
    """Vectorized random_letters (identical output, tested against it)."""
    import numpy as np

    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    s = np.uint64(rng_seed & _MASK64) + idx * np.uint64(_GOLDEN)
    z = s ^ (s >> np.uint64(30))
    z = z * np.uint64(_MIX1)
    z = z ^ (z >> np.uint64(27))
    z = z * np.uint64(_MIX2)
    z = z ^ (z >> np.uint64(31))
    zh = z >> np.uint64(32)
    zl = z & np.uint64(0xFFFFFFFF)
    q64 = np.uint64(q)
    letters = (zh * q64 + ((zl * q64) >> np.uint64(32))) >> np.uint64(32)
    return letters.astype(np.uint8)


@dataclass(frozen=True)
class BaselineSpec:
    """Which baseline word to stream: random / champernowne / debruijn."""

    kind: str
    alphabet_size: int
    rng_seed: int | None = None

    def __post_init__(self):
        if self.kind not in ("random", "champernowne", "debruijn"):
            raise ValueError(f"unknown baseline kind {self.kind!r}")
        if self.alphabet_size < 2:
            raise ValueError("baseline words need an alphabet of size >= 2")
        if self.kind == "debruijn" and self.alphabet_size < 3:
            raise UnsupportedError("infinite de Bruijn words require q >= 3")
        if self.kind == "random" and self.rng_seed is None:
            raise ValueError("random baselines need an rng_seed")

    def label(self) -> str:
        if self.kind == "random":
            return f"random[q={self.alphabet_size}]"
        return f"{self.kind}[q={self.alphabet_size}]"


class _BaselineStream:
    def __init__(self, q: int):
        self.alphabet_size = q
        self.letter_offset = 0
        self._position = 0

    @property
    def position(self) -> int:
        return self._position

    def next_letter(self) -> int:
        return self.take(1)[0]

    def letters(self, count: int, chunk: int = 1 << 16):
        left = count
        while left > 0:
            for a in self.take(min(chunk, left)):
                yield a
            left -= min(chunk, left)

    def skip(self, count: int) -> None:
        self.take(count)


class RandomWordStream(_BaselineStream):
    """Independent uniform letters from the documented splitmix generator."""

    def __init__(self, q: int, rng_seed: int, use_numpy: bool = True):
        super().__init__(q)
        self.rng_seed = rng_seed & _MASK64
        self._use_numpy = use_numpy

    def take(self, count: int) -> bytearray:
        if self._use_numpy and count >= 1024:
            try:
                letters = bytearray(random_letters_np(self.rng_seed, self._position, count, self.alphabet_size).tobytes())
            except ImportError:  # pragma: no cover
                letters = random_letters(self.rng_seed, self._position, count, self.alphabet_size)
        else:
            letters = random_letters(self.rng_seed, self._position, count, self.alphabet_size)
        self._position += count
        return letters

    def skip(self, count: int) -> None:
        self._position += count  # counter-addressed, nothing to replay


class ChampernowneStream(_BaselineStream):
    """Concatenation of the base-q expansions of 1, 2, 3, ..."""

    def __init__(self, q: int):
        if q < 2:
            raise UnsupportedError("the Champernowne word needs q >= 2")
        super().__init__(q)
        self._k = 0
        self._digits = b""
        self._used = 0

    def take(self, count: int) -> bytearray:
        out = bytearray()
        q = self.alphabet_size
        while len(out) < count:
            if self._used == len(self._digits):
                self._k += 1
                n, ds = self._k, []
                while n:
                    n, d = divmod(n, q)
                    ds.append(d)
                self._digits = bytes(reversed(ds))
                self._used = 0
            grab = min(count - len(out), len(self._digits) - self._used)
            out += self._digits[self._used : self._used + grab]
            self._used += grab
        self._position += count
        return out


class DeBruijnStream(_BaselineStream):
    """An infinite q-ary de Bruijn word (q >= 3).

    Every prefix of length q**l + l - 1 contains each length-l word exactly
    once, for every l down to 1.
    """

    def __init__(self, q: int, buffer_cap: int = DEBRUIJN_BUFFER_CAP):
        if q < 3:
            raise UnsupportedError("infinite de Bruijn words require q >= 3")
        super().__init__(q)
        self._cap = buffer_cap
        self._word = bytearray(range(q))  # order 1: each letter once
        self._order = 1

    def take(self, count: int) -> bytearray:
        end = self._position + count
        while len(self._word) < end:
            self._raise_order()
        out = self._word[self._position : end]
        self._position = end
        return out

    def _raise_order(self) -> None:
        q, l = self.alphabet_size, self._order
        next_len = q ** (l + 1) + l
        if next_len > self._cap:
            raise ResourceLimitError(
                f"de Bruijn buffer cap {self._cap} letters reached at order {l + 1}"
            )
        n_nodes = q**l
        if q <= 8:
            used = bytearray(n_nodes)
        else:
            used = array("Q", [0]) * n_nodes
        rem = bytearray([q]) * n_nodes

        word = self._word
        drop = q ** (l - 1)
        # mark the (l+1)-grams already spent by the current word
        code = 0
        for i in range(l):
            code = code * q + word[i]
        for i in range(l, len(word)):
            c = word[i]
            used[code] |= 1 << c
            rem[code] -= 1
            code = (code % drop) * q + c
        start = code  # last l-gram of the word

        stack = [start]
        path = []
        while stack:
            u = stack[-1]
            if rem[u]:
                mask = used[u]
                c = 0
                while mask & (1 << c):
                    c += 1
                used[u] = mask | (1 << c)
                rem[u] -= 1
                stack.append((u % drop) * q + c)
            else:
                path.append(stack.pop())
        if len(path) != q ** (l + 1) - (n_nodes - 1) + 1 or any(rem):
            raise RuntimeError(
                f"de Bruijn order raising failed at order {l + 1} (q={q})"
            )  # cannot happen for q >= 3
        path.reverse()
        word.extend(v % q for v in path[1:])
        self._order += 1


def baseline_stream(spec: BaselineSpec):
    """Instantiate the stream a BaselineSpec describes."""
    if spec.kind == "random":
        return RandomWordStream(spec.alphabet_size, spec.rng_seed)
    if spec.kind == "champernowne":
        return ChampernowneStream(spec.alphabet_size)
    return DeBruijnStream(spec.alphabet_size)
