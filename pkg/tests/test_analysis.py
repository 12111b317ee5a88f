"""Tests for richness, deviation, complexity, and ensemble statistics."""

import csv

import pytest

from ratbase.analysis import (
    DeviationCurve,
    LetterBuffer,
    complexity_count,
    deviation_curve,
    ensemble_from_curves,
    ensemble_stats,
    gather,
    geometric_grid,
    letters_deviation_at,
    letters_richness_entry,
    random_deviation_at,
    random_deviation_curve,
    richness_threshold,
    rt_champernowne,
    rt_debruijn,
    write_deviation_csv,
    write_ensemble_csv,
    write_richness_csv,
)
from ratbase.baselines import ChampernowneStream, DeBruijnStream, RandomWordStream
from ratbase.core import Base, rep
from ratbase.errors import AlignmentError, ResourceLimitError
from ratbase.streams import MinWordStream

B32 = Base(3, 2)
B72 = Base(7, 2)
B73 = Base(7, 3)


@pytest.fixture(scope="module")
def wmin_32_million():
    return gather(MinWordStream.from_valuation(B32, 1), 10**6)


@pytest.fixture(scope="module")
def wmin_72_million():
    return gather(MinWordStream.from_valuation(B72, 1), 10**6)


def buf(letters, q):
    return LetterBuffer(bytes(letters), q)


class TestRichness:
    def test_tiny_word(self):
        report = richness_threshold(buf([0, 1], 2), l=1, cap=2)
        assert report.threshold == 2 and report.complete

    def test_wmin_32_l3(self, wmin_32_million):
        report = richness_threshold(buf(wmin_32_million[:200], 2), l=3, cap=200)
        assert report.threshold == 51

    def test_wmin_73_l3(self):
        letters = gather(MinWordStream.from_valuation(B73, 1), 200)
        report = richness_threshold(buf(letters, 3), l=3, cap=200)
        assert report.threshold == 98

    def test_wmin_32_l17_missing(self, wmin_32_million):
        report = richness_threshold(buf(wmin_32_million, 2), l=17, cap=10**6)
        assert not report.complete
        assert report.missing_count == 63
        assert report.table_entry == -63

    def test_matches_vectorized_oracle(self, wmin_32_million):
        for l in (1, 2, 5, 9):
            fold = richness_threshold(buf(wmin_32_million[:50000], 2), l=l, cap=50000)
            assert fold.table_entry == letters_richness_entry(wmin_32_million[:50000], 2, l)
        rand = RandomWordStream(3, rng_seed=99).take(30000)
        for l in (1, 3, 6):
            fold = richness_threshold(buf(rand, 3), l=l, cap=30000)
            assert fold.table_entry == letters_richness_entry(rand, 3, l)

    def test_floor(self, wmin_32_million):
        for l in range(1, 12):
            report = richness_threshold(buf(wmin_32_million[:10**5], 2), l=l, cap=10**5)
            assert report.threshold >= 2**l + l - 1

    def test_monotone_in_l(self, wmin_32_million):
        prev = 0
        for l in range(1, 12):
            report = richness_threshold(buf(wmin_32_million[:10**5], 2), l=l, cap=10**5)
            assert report.threshold >= prev
            prev = report.threshold

    def test_memory_cap(self):
        with pytest.raises(ResourceLimitError):
            richness_threshold(buf([0, 1], 2), l=40, cap=2)


class TestClosedForms:
    def test_champernowne_formula_values(self):
        assert rt_champernowne(2, 1) == 3
        assert rt_champernowne(2, 2) == 2 * 4 - 3 + 3

    @pytest.mark.parametrize("q", [2, 3])
    @pytest.mark.parametrize("l", [1, 2, 3, 4])
    def test_champernowne_measured(self, q, l):
        expected = rt_champernowne(q, l)
        stream = ChampernowneStream(q)
        report = richness_threshold(stream, l=l, cap=expected + 64)
        assert report.threshold == expected

    @pytest.mark.parametrize("l", [1, 2, 3, 4])
    def test_debruijn_measured_q3(self, l):
        expected = rt_debruijn(3, l)
        report = richness_threshold(DeBruijnStream(3), l=l, cap=expected + 64)
        assert report.threshold == expected


class TestDeviation:
    def test_all_zero_word(self):
        curve = deviation_curve(buf([0, 0, 0], 2), l=1, sample_grid=[3])
        assert curve.samples == [(3, 0.5)]

    def test_balanced_word(self):
        curve = deviation_curve(buf([0, 1, 0, 1], 2), l=1, sample_grid=[4])
        assert curve.samples == [(4, 0.0)]

    def test_bounds(self, wmin_72_million):
        grid = geometric_grid(7, 10**5)
        curve = deviation_curve(buf(wmin_72_million[:10**5], 2), l=7, sample_grid=grid)
        for n, d in curve.samples:
            assert 0.0 <= d <= 1 - 1 / 2**7

    def test_trend_decreases(self, wmin_72_million):
        curve = deviation_curve(buf(wmin_72_million, 2), l=7, sample_grid=[10**3, 10**6])
        assert curve.samples[1][1] < curve.samples[0][1]

    def test_matches_vectorized(self):
        letters = RandomWordStream(2, rng_seed=4242).take(20000)
        curve = deviation_curve(buf(letters, 2), l=5, sample_grid=[20000])
        assert curve.final == pytest.approx(letters_deviation_at(letters, 2, 5), abs=0)
        assert random_deviation_at(2, 5, 20000, 4242) == curve.final

    def test_vectorized_curve_matches_fold(self):
        grid = [64, 300, 2000, 20000]
        fold = deviation_curve(buf(RandomWordStream(3, rng_seed=7).take(20000), 3), l=3, sample_grid=grid)
        vect = random_deviation_curve(3, 3, grid, rng_seed=7)
        assert [n for n, _ in fold.samples] == [n for n, _ in vect.samples]
        for (_, a), (_, b) in zip(fold.samples, vect.samples):
            assert a == pytest.approx(b, abs=1e-12)

    def test_low_grid_points_warn(self):
        with pytest.warns(UserWarning):
            deviation_curve(buf([0, 1, 0, 1, 1], 2), l=2, sample_grid=[1, 4])


class TestComplexity:
    def test_constant_word(self):
        assert complexity_count(bytes([0, 0, 0, 0]), 2, alphabet_size=2) == 1

    def test_three_factors(self):
        assert complexity_count(bytes([0, 1, 1, 0]), 2, alphabet_size=2) == 3

    def test_morse_hedlund_floor(self, wmin_32_million):
        prefix = wmin_32_million[:10**4]
        for l in range(1, 14):
            assert complexity_count(prefix, l, alphabet_size=2) >= l + 1

    def test_length_guard(self):
        with pytest.raises(ValueError):
            complexity_count(bytes([0, 1]), 3, alphabet_size=2)


class TestEnsemble:
    def test_single_curve(self):
        c = DeviationCurve(l=1, samples=[(10, 0.25), (20, 0.125)])
        stats = ensemble_from_curves([c])
        for p, (_, d) in zip(stats.points, c.samples):
            assert p.min == p.d10 == p.mean == p.d90 == p.max == d

    def test_nearest_rank_example(self):
        stats = ensemble_stats([1], [[v] for v in range(1, 11)])
        p = stats.points[0]
        assert (p.min, p.d10, p.mean, p.d90, p.max) == (1, 1, 5.5, 9, 10)

    def test_band_ordering(self):
        vals = [[float(i + j) for j in range(3)] for i in range(40)]
        stats = ensemble_stats([0, 1, 2], vals)
        assert stats.band_ordered

    def test_misaligned(self):
        c1 = DeviationCurve(l=1, samples=[(10, 0.5)])
        c2 = DeviationCurve(l=1, samples=[(11, 0.5)])
        with pytest.raises(AlignmentError):
            ensemble_from_curves([c1, c2])
        with pytest.raises(AlignmentError):
            ensemble_stats([1, 2], [[0.1]])

    def test_empty(self):
        with pytest.raises(AlignmentError):
            ensemble_stats([1], [])


class TestGrid:
    def test_geometric_grid(self):
        grid = geometric_grid(7, 1000)
        assert grid[0] >= 7
        assert grid[-1] == 1000
        assert grid == sorted(set(grid))


class TestCsv:
    def test_richness_round_trip(self, tmp_path):
        path = tmp_path / "richness.csv"
        write_richness_csv(path, [("3/2", "1", 3, 51, 100000), ("3/2", "1", 17, -63, 10**6)])
        with open(path, encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["base", "seed", "l", "threshold_or_negative_missing", "cap"]
        assert rows[1] == ["3/2", "1", "3", "51", "100000"]
        assert rows[2][3] == "-63"

    def test_deviation_and_ensemble(self, tmp_path):
        dev = tmp_path / "dev.csv"
        write_deviation_csv(dev, [("7/2", "1", 7, 1000, 0.015625)])
        with open(dev, encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["base", "seed", "l", "n", "D"]
        assert float(rows[1][4]) == 0.015625

        ens = tmp_path / "ens.csv"
        stats = ensemble_stats([10], [[0.5], [0.25], [0.125]])
        write_ensemble_csv(ens, stats)
        with open(ens, encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["n_or_l", "min", "d10", "mean", "d90", "max"]
        assert float(rows[1][1]) == 0.125


class TestGather:
    def test_gather_shifts_offset(self):
        from ratbase.streams import MaxWordStream

        letters = gather(MaxWordStream.from_valuation(B73, 1), 3)
        assert letters == bytes([5 - 4, 5 - 4, 4 - 4])
