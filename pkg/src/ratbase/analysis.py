"""Streaming normality statistics: richness thresholds, deviation from
uniformity, factor complexity, and ensemble order statistics.

All folds are single-pass.  A length-l window is kept as an integer code
in base q (one multiply-add and one mod per letter) and the seen-set is a
flat byte array of q**l cells, capped at 2**27.  Counts are exact
integers; division happens only when a value is emitted, in double
precision.
"""

from __future__ import annotations

import csv
import math
import os
import warnings
from array import array
from dataclasses import dataclass, field

from .errors import AlignmentError, ResourceLimitError

#: Hard cap on q**l cells for any windowed fold.
MEMORY_CAP = 1 << 27

_CHUNK = 1 << 16


class LetterBuffer:
    """Stream interface over letters already in memory (replays, constants)."""

    def __init__(self, letters, alphabet_size: int, label: str = "buffer", letter_offset: int = 0):
        self._letters = bytes(letters)
        self._position = 0
        self.alphabet_size = alphabet_size
        self.letter_offset = letter_offset
        self.label = label

    def __len__(self) -> int:
        return len(self._letters)

    @property
    def position(self) -> int:
        return self._position

    def take(self, count: int):
        end = self._position + count
        if end > len(self._letters):
            raise ValueError(f"{self.label}: only {len(self._letters)} letters buffered")
        out = self._letters[self._position : end]
        self._position = end
        return out

    def next_letter(self) -> int:
        return self.take(1)[0]

    def letters(self, count: int, chunk: int = _CHUNK):
        left = count
        while left > 0:
            for a in self.take(min(chunk, left)):
                yield a
            left -= min(chunk, left)


def gather(stream, count: int) -> bytes:
    """Materialize `count` letters, shifted down to the 0-based alphabet."""
    off = getattr(stream, "letter_offset", 0)
    out = bytearray()
    while len(out) < count:
        out += stream.take(min(_CHUNK, count - len(out)))
    if off:
        out = bytearray(a - off for a in out)
    return bytes(out)


def _check_window_cap(q: int, l: int, memory_cap: int) -> int:
    cells = q**l
    if cells > memory_cap:
        raise ResourceLimitError(
            f"q**l = {cells} exceeds the windowed-fold memory cap {memory_cap}"
        )
    return cells


@dataclass(frozen=True)
class RichnessReport:
    """First-completion position for length-l factors, or what is missing.

    threshold is the least prefix length containing all q**l factors, or
    None when the cap was reached first; missing_count is then positive.
    """

    l: int
    cap: int
    threshold: int | None
    missing_count: int

    @property
    def complete(self) -> bool:
        return self.threshold is not None

    @property
    def table_entry(self) -> int:
        """Positive threshold, or negated missing count (table convention)."""
        return self.threshold if self.complete else -self.missing_count


def richness_threshold(stream, l: int, cap: int, *, memory_cap: int = MEMORY_CAP) -> RichnessReport:
    """Scan the stream once, recording when the last unseen factor appears."""
    if l < 1:
        raise ValueError("factor length must be >= 1")
    q = stream.alphabet_size
    off = getattr(stream, "letter_offset", 0)
    ql = _check_window_cap(q, l, memory_cap)
    seen = bytearray(ql)
    unseen = ql
    code = 0
    pos = 0
    while pos < cap:
        chunk = stream.take(min(_CHUNK, cap - pos))
        for a in chunk:
            code = (code * q + a - off) % ql
            pos += 1
            if pos >= l and not seen[code]:
                seen[code] = 1
                unseen -= 1
                if not unseen:
                    return RichnessReport(l=l, cap=cap, threshold=pos, missing_count=0)
    return RichnessReport(l=l, cap=cap, threshold=None, missing_count=unseen)


def rt_champernowne(q: int, l: int) -> int:
    """Closed-form richness threshold of the q-ary Champernowne word."""
    if q < 2 or l < 1:
        raise ValueError("need q >= 2 and l >= 1")
    return l * q**l - (q**l - 1) // (q - 1) + l + 1


def rt_debruijn(q: int, l: int) -> int:
    """Closed-form richness threshold of any infinite q-ary de Bruijn word."""
    if q < 3 or l < 1:
        raise ValueError("need q >= 3 and l >= 1")
    return q**l + l - 1


@dataclass
class DeviationCurve:
    """Sampled deviation from uniformity D(n) for one word and one l."""

    l: int
    samples: list[tuple[int, float]] = field(default_factory=list)

    @property
    def final(self) -> float:
        return self.samples[-1][1]


def geometric_grid(l: int, n: int, ratio: float = 1.1) -> list[int]:
    """Default sample grid: ceil(ratio**i), deduplicated, clipped to [l, n]."""
    pts = set()
    x = 1.0
    while x <= n:
        v = math.ceil(x)
        if v >= l:
            pts.add(min(v, n))
        x *= ratio
    pts.add(n)
    return sorted(pts)


def deviation_curve(stream, l: int, sample_grid, *, memory_cap: int = MEMORY_CAP) -> DeviationCurve:
    """One pass of sliding-window counts; D at each grid point.

    D(n) is the largest absolute difference between any factor's empirical
    frequency over the n-letter prefix and 1/q**l; with integer counts the
    extremes are attained at the most and least frequent factor.
    """
    import numpy as np

    q = stream.alphabet_size
    off = getattr(stream, "letter_offset", 0)
    ql = _check_window_cap(q, l, memory_cap)
    grid = sorted(set(int(g) for g in sample_grid))
    usable = [g for g in grid if g >= l]
    if len(usable) != len(grid):
        warnings.warn(f"dropping {len(grid) - len(usable)} grid points below l={l}")
    if not usable:
        raise ValueError("no usable grid points at or above l")

    counts = array("q", bytes(8 * ql))
    view = np.frombuffer(counts, dtype=np.int64)
    inv = 1.0 / ql
    curve = DeviationCurve(l=l)
    code = 0
    pos = 0
    for target in usable:
        while pos < target:
            chunk = stream.take(min(_CHUNK, target - pos))
            for a in chunk:
                code = (code * q + a - off) % ql
                pos += 1
                if pos >= l:
                    counts[code] += 1
        windows = pos - l + 1
        total = int(view.sum())
        if total != windows:
            raise RuntimeError(f"count conservation broken: {total} != {windows}")
        cmax = int(view.max())
        cmin = int(view.min())
        d = max(cmax / windows - inv, inv - cmin / windows)
        curve.samples.append((pos, d))
    return curve


def complexity_count(prefix, l: int, alphabet_size: int | None = None) -> int:
    """Number of distinct length-l factors of a finite word."""
    if l < 0:
        raise ValueError("factor length must be nonnegative")
    if l == 0:
        return 1 if len(prefix) >= 0 else 0
    if l > len(prefix):
        raise ValueError(f"factor length {l} exceeds prefix length {len(prefix)}")
    q = alphabet_size if alphabet_size is not None else max(prefix) + 1
    seen = set()
    code = 0
    ql = q**l
    for i, a in enumerate(prefix):
        code = (code * q + a) % ql
        if i + 1 >= l:
            seen.add(code)
    return len(seen)


@dataclass(frozen=True)
class EnsemblePoint:
    x: int
    min: float
    d10: float
    mean: float
    d90: float
    max: float

    @property
    def band_ordered(self) -> bool:
        return self.min <= self.d10 <= self.mean <= self.d90 <= self.max


@dataclass
class EnsembleStats:
    points: list[EnsemblePoint]

    @property
    def band_ordered(self) -> bool:
        return all(p.band_ordered for p in self.points)


def _nearest_rank(sorted_vals, fraction: float) -> float:
    k = len(sorted_vals)
    idx = max(1, math.ceil(fraction * k))
    return sorted_vals[idx - 1]


def ensemble_stats(xs, series) -> EnsembleStats:
    """Per-point order statistics over aligned series.

    xs is the shared grid; series is one list of values per ensemble
    member, each aligned to xs.  Deciles use the nearest-rank definition
    (the ceil(0.1*k)-th order statistic).
    """
    if not series:
        raise AlignmentError("ensemble is empty")
    npts = len(xs)
    for s in series:
        if len(s) != npts:
            raise AlignmentError(f"series of length {len(s)} does not match grid of {npts} points")
    points = []
    for i, x in enumerate(xs):
        vals = sorted(s[i] for s in series)
        points.append(
            EnsemblePoint(
                x=x,
                min=vals[0],
                d10=_nearest_rank(vals, 0.10),
                mean=sum(vals) / len(vals),
                d90=_nearest_rank(vals, 0.90),
                max=vals[-1],
            )
        )
    return EnsembleStats(points)


def ensemble_from_curves(curves: list[DeviationCurve]) -> EnsembleStats:
    grids = {tuple(n for n, _ in c.samples) for c in curves}
    if len(grids) != 1:
        raise AlignmentError("deviation curves use different sample grids")
    xs = list(grids.pop())
    return ensemble_stats(xs, [[d for _, d in c.samples] for c in curves])


# -- vectorized paths for large random ensembles -------------------------
#
# These recompute the same statistics as the streaming folds (the tests
# hold them equal) but draw the splitmix letters and window codes with
# numpy, which is what makes thousand-word baseline ensembles practical.


def _np_codes(letters, q: int, l: int):
    import numpy as np

    arr = np.frombuffer(bytes(letters), dtype=np.uint8).astype(np.int64)
    n = arr.size
    codes = np.zeros(n - l + 1, dtype=np.int64)
    for j in range(l):
        codes *= q
        codes += arr[j : n - l + 1 + j]
    return codes


def random_richness_entry(q: int, l: int, cap: int, rng_seed: int) -> int:
    """Richness table entry of one seeded random word, vectorized."""
    from .baselines import random_letters_np

    letters = random_letters_np(rng_seed, 0, cap, q)
    return letters_richness_entry(letters, q, l)


def letters_richness_entry(letters, q: int, l: int) -> int:
    import numpy as np

    codes = _np_codes(letters, q, l)
    uniq, first = np.unique(codes, return_index=True)
    ql = q**l
    if uniq.size < ql:
        return -(ql - int(uniq.size))
    return int(first.max()) + l


def random_deviation_at(q: int, l: int, n: int, rng_seed: int) -> float:
    """D(n) of one seeded random word, vectorized."""
    from .baselines import random_letters_np

    letters = random_letters_np(rng_seed, 0, n, q)
    return letters_deviation_at(letters, q, l)


def letters_deviation_at(letters, q: int, l: int) -> float:
    import numpy as np

    codes = _np_codes(letters, q, l)
    counts = np.bincount(codes, minlength=q**l)
    windows = codes.size
    inv = 1.0 / q**l
    return max(float(counts.max()) / windows - inv, inv - float(counts.min()) / windows)


def random_deviation_curve(q: int, l: int, grid, rng_seed: int) -> DeviationCurve:
    import numpy as np

    from .baselines import random_letters_np

    usable = sorted(set(int(g) for g in grid if g >= l))
    n = usable[-1]
    letters = random_letters_np(rng_seed, 0, n, q)
    codes = _np_codes(letters, q, l)
    ql = q**l
    inv = 1.0 / ql
    counts = np.zeros(ql, dtype=np.int64)
    curve = DeviationCurve(l=l)
    prev = 0
    for g in usable:
        w = g - l + 1
        seg = np.bincount(codes[prev:w], minlength=ql)
        counts += seg
        prev = w
        d = max(float(counts.max()) / w - inv, inv - float(counts.min()) / w)
        curve.samples.append((g, d))
    return curve


# -- CSV output -----------------------------------------------------------

RICHNESS_HEADER = ["base", "seed", "l", "threshold_or_negative_missing", "cap"]
DEVIATION_HEADER = ["base", "seed", "l", "n", "D"]
ENSEMBLE_HEADER = ["n_or_l", "min", "d10", "mean", "d90", "max"]


def _write_csv(path, header, rows) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    os.replace(tmp, path)


def write_richness_csv(path, rows) -> None:
    """rows: (base_label, seed_label, l, table_entry, cap)."""
    _write_csv(path, RICHNESS_HEADER, rows)


def write_deviation_csv(path, rows) -> None:
    """rows: (base_label, seed_label, l, n, D)."""
    _write_csv(path, DEVIATION_HEADER, rows)


def write_ensemble_csv(path, stats: EnsembleStats) -> None:
    rows = [(p.x, p.min, p.d10, p.mean, p.d90, p.max) for p in stats.points]
    _write_csv(path, ENSEMBLE_HEADER, rows)
