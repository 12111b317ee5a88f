"""Rational-base p/q numeration systems: exact arithmetic, minimal/maximal
word streams, normality statistics, and conjecture checks."""

__version__ = "0.1.0"

from .core import (
    Base,
    EMPTY_WORD,
    Rational,
    Word,
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
from .streams import (
    MaxWordStream,
    MinWordStream,
    ShrinkingResidue,
    nmin,
    sigma,
    wmax_prefix,
    wmin_prefix,
)
from .baselines import (
    BaselineSpec,
    ChampernowneStream,
    DeBruijnStream,
    RandomWordStream,
    baseline_stream,
)
from .analysis import (
    DeviationCurve,
    EnsembleStats,
    LetterBuffer,
    RichnessReport,
    complexity_count,
    deviation_curve,
    ensemble_stats,
    richness_threshold,
    rt_champernowne,
    rt_debruijn,
)
from .checks import (
    CollatzRun,
    CoverageReport,
    Finding,
    FindingsLog,
    ResidueHistogram,
    StopMapRun,
    collatz_like_trajectory,
    equidistribution_histogram,
    factor_search,
    letter_coverage,
    stop_map_run,
)

__all__ = [name for name in dir() if not name.startswith("_")]
