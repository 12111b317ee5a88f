"""Executable consequences of the conjecture chain.

These checks probe open conjectures, so out-of-tolerance results are not
errors: they are emitted as structured findings (a counterexample would be
the most valuable possible output) and the caller decides what to do with
them.  Exit codes stay zero on findings.
"""

from __future__ import annotations

import json
import os
import threading
import time
from array import array
from collections import deque
from dataclasses import dataclass, field

from .core import Base, ceil_step, rep
from .errors import InvalidLetterError, ResourceLimitError, UnsupportedError
from .streams import MinWordStream

_CHUNK = 1 << 16

#: Cap on q**k residue classes tracked by a histogram.
HISTOGRAM_CAP = 1 << 27


@dataclass
class ResidueHistogram:
    """Occupancy of residue classes mod q**k along the ceiling-map orbit."""

    modulus: int
    counts: list[int]
    total: int

    @property
    def frequencies(self) -> list[float]:
        return [c / self.total for c in self.counts]

    def max_abs_deviation(self) -> float:
        """Largest |frequency - 1/modulus| over the classes."""
        target = 1.0 / self.modulus
        return max(abs(f - target) for f in self.frequencies)


def min_letter_of_residue(base: Base, r: int) -> int:
    """First minimal letter of any word whose valuation is r mod q."""
    return (-base.p * r) % base.q


def residue_prefix_table(base: Base, k: int) -> array:
    """Inverse of the residue -> length-k min prefix bijection.

    Indexed by the prefix's base-q code, yields the residue class mod q**k.
    Class 0 is represented by q**k itself (0 is the empty expansion).
    """
    p, q = base.p, base.q
    modulus = q**k
    table = array("L", [0]) * modulus
    for r in range(modulus):
        x = r if r else modulus
        code = 0
        for _ in range(k):
            a = (-p * x) % q
            x = (p * x + a) // q
            code = code * q + a
        table[code] = r
    return table


def equidistribution_histogram(
    base: Base, n: int, k: int, iterations: int, *, memory_cap: int = HISTOGRAM_CAP
) -> ResidueHistogram:
    """Histogram of the first `iterations` ceiling-map iterates of n, mod q**k.

    Computed from the letters of the minimal word with seed rep(n): the
    residue of the m-th iterate is read off the length-k window at
    position m through the residue/prefix bijection, so the letter stream's
    batched backend does the heavy lifting.  equidistribution_direct is the
    plain iterate-and-reduce route and must agree (tested).
    """
    if n <= 0:
        raise ValueError("need n >= 1 (0 is a fixed point of the ceiling map)")
    if k < 0:
        raise ValueError("k must be nonnegative")
    q = base.q
    modulus = q**k
    if modulus > memory_cap:
        raise ResourceLimitError(f"q**k = {modulus} exceeds histogram cap {memory_cap}")
    if modulus == 1:
        return ResidueHistogram(modulus=1, counts=[iterations], total=iterations)

    table = residue_prefix_table(base, k)
    counts = array("q", bytes(8 * modulus))
    stream = MinWordStream(base, rep(base, n))
    need = iterations + k - 1
    code = 0
    pos = 0
    windows = 0
    while windows < iterations:
        chunk = stream.take(min(_CHUNK, need - pos))
        for a in chunk:
            code = (code * q + a) % modulus
            pos += 1
            if pos >= k:
                counts[table[code]] += 1
                windows += 1
                if windows == iterations:
                    break
    return ResidueHistogram(modulus=modulus, counts=list(counts), total=iterations)


def equidistribution_direct(base: Base, n: int, k: int, iterations: int) -> ResidueHistogram:
    """Oracle route: iterate the ceiling map and reduce each value mod q**k."""
    if n <= 0:
        raise ValueError("need n >= 1 (0 is a fixed point of the ceiling map)")
    modulus = base.q**k
    counts = [0] * modulus
    x = n
    for _ in range(iterations):
        counts[x % modulus] += 1
        x = ceil_step(base, x)
    return ResidueHistogram(modulus=modulus, counts=counts, total=iterations)


def factor_search(stream, target, cap: int):
    """1-based position of the first occurrence of `target`, or None.

    Scans at most `cap` letters.  Target letters must lie in the stream's
    subalphabet.
    """
    q = stream.alphabet_size
    off = getattr(stream, "letter_offset", 0)
    target = bytes(target)
    if not target:
        raise ValueError("target must be nonempty")
    for a in target:
        if not off <= a < off + q:
            raise InvalidLetterError(
                f"target letter {a} outside the stream subalphabet [{off}, {off + q - 1}]"
            )
    keep = len(target) - 1
    window = b""
    consumed = 0
    while consumed < cap:
        chunk = bytes(stream.take(min(_CHUNK, cap - consumed)))
        consumed += len(chunk)
        hay = window + chunk
        hit = hay.find(target)
        if hit != -1:
            # hay covers absolute positions (consumed - len(hay), consumed]
            return consumed - len(hay) + hit + 1
        window = hay[-keep:] if keep else b""
    return None


@dataclass
class CoverageReport:
    """First-occurrence positions of each subalphabet letter within a cap."""

    subalphabet: tuple[int, ...]
    cap: int
    first_positions: dict[int, int]

    @property
    def complete(self) -> bool:
        return len(self.first_positions) == len(self.subalphabet)

    @property
    def zero_letter_seen(self) -> bool:
        """Whether the smallest subalphabet letter (letter 0 for minimal
        words, its sigma image for maximal ones) occurred; a single such
        occurrence rules out a simultaneous minimal/maximal word."""
        return min(self.subalphabet) in self.first_positions


def letter_coverage(stream, cap: int) -> CoverageReport:
    q = stream.alphabet_size
    off = getattr(stream, "letter_offset", 0)
    first: dict[int, int] = {}
    pos = 0
    while pos < cap and len(first) < q:
        for a in stream.take(min(_CHUNK, cap - pos)):
            pos += 1
            if a not in first:
                first[a] = pos
                if len(first) == q:
                    break
    return CoverageReport(
        subalphabet=tuple(range(off, off + q)), cap=cap, first_positions=dict(sorted(first.items()))
    )


@dataclass
class StopMapRun:
    """Outcome of the ceiling stop map: iterate while x mod q stays in the
    continue set, stop when it leaves."""

    base: Base
    continue_residues: frozenset[int]
    start: int
    budget: int
    steps_to_stop: int | None
    final_value: int

    @property
    def stopped(self) -> bool:
        return self.steps_to_stop is not None


def stop_map_run(base: Base, continue_residues, x0: int, budget: int) -> StopMapRun:
    S = frozenset(continue_residues)
    if not S:
        raise ValueError("the continue set must be nonempty")
    if not all(0 <= s < base.q for s in S):
        raise ValueError(f"continue residues must lie in [0, {base.q - 1}]")
    if x0 < 1:
        raise ValueError("start value must be positive")
    x = x0
    for steps in range(budget + 1):
        if x % base.q not in S:
            return StopMapRun(base, S, x0, budget, steps, x)
        if steps == budget:
            break
        x = ceil_step(base, x)
    return StopMapRun(base, S, x0, budget, None, x)


@dataclass
class CollatzRun:
    """Trajectory summary of x -> (p*x+1)/2 (odd) / x/2 (even)."""

    p: int
    start: int
    steps: int
    status: str  # "cycle" or "budget"
    cycle: tuple[int, ...] | None
    max_value: int

    @property
    def reached_trivial_cycle(self) -> bool:
        return self.status == "cycle" and set(self.cycle) == {1, 2}


#: Values above this are only remembered through a rolling window.
_COLLATZ_HASH_LIMIT = 1 << 64
_COLLATZ_WINDOW = 1024


def collatz_like_trajectory(p: int, x0: int, budget: int) -> CollatzRun:
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be an odd integer >= 3")
    if x0 < 1:
        raise ValueError("start value must be positive")
    seen: set[int] = set()
    window: deque[int] = deque()
    x = x0
    max_value = x0
    for step in range(budget):
        if x in seen:
            cycle = _extract_cycle(p, x)
            return CollatzRun(p, x0, step, "cycle", cycle, max_value)
        if x < _COLLATZ_HASH_LIMIT:
            seen.add(x)
        else:
            window.append(x)
            seen.add(x)
            if len(window) > _COLLATZ_WINDOW:
                seen.discard(window.popleft())
        x = (p * x + 1) // 2 if x & 1 else x // 2
        if x > max_value:
            max_value = x
    return CollatzRun(p, x0, budget, "budget", None, max_value)


def _extract_cycle(p: int, x: int) -> tuple[int, ...]:
    cycle = [x]
    y = (p * x + 1) // 2 if x & 1 else x // 2
    while y != x:
        cycle.append(y)
        y = (p * y + 1) // 2 if y & 1 else y // 2
    return tuple(cycle)


def z_number_witness_check(base: Base, n: int, cap: int):
    """Position of the factor (q-1)(q-1) in the minimal word of rep(n).

    A hit certifies that n yields no witness word for a Z-type number in
    this base.  Only meaningful for p < q**2, where the factor exclusion
    argument applies; other bases are refused.
    """
    if base.p > base.q**2:
        raise UnsupportedError(
            f"base {base} has p > q**2: Z-number witness words do not arise; "
            "use factor_search directly for raw positions"
        )
    stream = MinWordStream(base, rep(base, n))
    target = bytes([base.q - 1, base.q - 1])
    return factor_search(stream, target, cap)


# -- findings ledger -------------------------------------------------------


@dataclass
class Finding:
    check: str
    params: dict
    outcome: dict
    timestamp: float = field(default_factory=time.time)

    def to_json(self) -> str:
        record = {
            "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime(self.timestamp)),
            "check": self.check,
            "params": self.params,
            "outcome": self.outcome,
        }
        return json.dumps(record, sort_keys=True)


class FindingsLog:
    """Append-only line-delimited findings sink; writes are serialized."""

    def __init__(self, path):
        self.path = path
        self._lock = threading.Lock()

    def append(self, finding: Finding) -> None:
        line = finding.to_json() + "\n"
        with self._lock:
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(line)
                fh.flush()
                os.fsync(fh.fileno())
