"""Command-line harness for the rational-base toolkit.

Exit codes: 0 success (findings included), 2 usage errors, 3 resource caps.
"""

from __future__ import annotations

import argparse
import sys

if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)  # valuations easily exceed the default print limit

from . import __version__
from .analysis import (
    LetterBuffer,
    complexity_count,
    deviation_curve,
    ensemble_stats,
    geometric_grid,
    random_deviation_curve,
    random_richness_entry,
    richness_threshold,
    write_deviation_csv,
    write_ensemble_csv,
    write_richness_csv,
)
from .baselines import ChampernowneStream, DeBruijnStream, RandomWordStream
from .checks import (
    Finding,
    FindingsLog,
    collatz_like_trajectory,
    equidistribution_histogram,
    factor_search,
    letter_coverage,
    stop_map_run,
)
from .core import (
    Base,
    radix_cmp,
    rep,
    successor,
    val,
    word_from_str,
    word_to_str,
)
from .errors import RatbaseError, ResourceLimitError
from .harness import run_repro
from .manifests import FIGURE_IDS, TABLE_IDS
from .streams import MaxWordStream, MinWordStream, nmin


def _int(text: str) -> int:
    """Integer flag values; accepts 1_000_000 and 1e6 spellings."""
    s = text.strip().replace("_", "")
    try:
        return int(s)
    except ValueError:
        value = float(s)
        if value != int(value):
            raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
        return int(value)


def _l_list(text: str) -> list[int]:
    """Parse --l values: "3", "1..11", or "1,2,5"."""
    s = text.strip()
    if ".." in s:
        a, _, b = s.partition("..")
        return list(range(int(a), int(b) + 1))
    if "," in s:
        return [int(part) for part in s.split(",")]
    return [int(s)]


def _residue_set(text: str) -> set[int]:
    return {int(part) for part in text.split(",") if part.strip() != ""}


def _add_base(parser, required=True):
    parser.add_argument("--base", type=Base.parse, required=required, help="rational base p/q")


def _add_seed(parser):
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--seed-val", type=_int, help="seed word given by its valuation")
    group.add_argument("--seed-word", help="seed word given as digit text")


def _seed_word(args):
    if args.seed_word is not None:
        return word_from_str(args.base, args.seed_word)
    if args.seed_val is not None:
        return rep(args.base, args.seed_val)
    raise RatbaseError("need --seed-val or --seed-word")


def _add_word_source(parser):
    """Flags selecting what word to analyze: a min/max word or a baseline."""
    _add_base(parser, required=False)
    _add_seed(parser)
    parser.add_argument(
        "--word",
        choices=["wmin", "wmax", "random", "champernowne", "debruijn", "pi", "sqrt2"],
        default="wmin",
    )
    parser.add_argument("--q", type=int, help="alphabet size for baseline words")
    parser.add_argument("--rng-seed", type=_int, default=0x5EED0001)


def _word_stream(args, length: int):
    """(label, seed_label, stream) for the analysis subcommands."""
    kind = args.word
    if kind in ("wmin", "wmax"):
        if args.base is None:
            raise RatbaseError(f"--word {kind} needs --base")
        seed = _seed_word(args)
        cls = MinWordStream if kind == "wmin" else MaxWordStream
        stream = cls(args.base, seed)
        return str(args.base), word_to_str(args.base, seed), stream
    if args.q is None:
        raise RatbaseError(f"--word {kind} needs --q")
    q = args.q
    if kind == "random":
        return f"random[q={q}]", str(args.rng_seed), RandomWordStream(q, args.rng_seed)
    if kind == "champernowne":
        return f"champernowne[q={q}]", "-", ChampernowneStream(q)
    if kind == "debruijn":
        return f"debruijn[q={q}]", "-", DeBruijnStream(q)
    if kind == "pi":
        from .constants import pi_stream

        return f"pi[q={q}]", "-", pi_stream(q, length)
    if kind == "sqrt2":
        from .constants import sqrt2_stream

        return f"sqrt2[q={q}]", "-", sqrt2_stream(q, length)
    raise RatbaseError(f"unknown word kind {kind!r}")


def _emit_csv(rows, header, out, writer):
    if out:
        writer(out, rows)
    else:
        print(",".join(header))
        for row in rows:
            print(",".join(str(c) for c in row))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ratbase",
        description="rational-base numeration: words, streams, normality statistics, conjecture checks",
    )
    parser.add_argument("--version", action="version", version=f"ratbase {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rep", help="expansion of an integer")
    _add_base(p)
    p.add_argument("n", type=_int)

    p = sub.add_parser("val", help="exact value of a word")
    _add_base(p)
    p.add_argument("word")

    p = sub.add_parser("succ", help="successor of a word (odometer)")
    _add_base(p)
    p.add_argument("word")

    p = sub.add_parser("cmp", help="radix-order comparison of two words")
    _add_base(p)
    p.add_argument("word1")
    p.add_argument("word2")

    for name in ("wmin", "wmax"):
        p = sub.add_parser(name, help=f"letters of the {name} word")
        _add_base(p, required=False)
        _add_seed(p)
        p.add_argument("--len", type=_int, default=64, dest="length")
        p.add_argument("--backend", choices=["nat", "shrink"], default="nat")
        p.add_argument("--budget", type=_int, help="letter budget (shrink backend)")
        p.add_argument("--resume", help="resume from a snapshot file")
        p.add_argument("--snapshot-out", help="write a snapshot after emitting")
        p.add_argument("--raw-out", help="also write letters as raw bytes to this file")

    p = sub.add_parser("nmin", help="valuation after l minimal letters (ceiling-map iterate)")
    _add_base(p, required=False)
    _add_seed(p)
    p.add_argument("--l", type=_int, required=True)
    p.add_argument("--resume", help="advance a min-stream snapshot by --l letters instead")

    p = sub.add_parser("richness", help="richness thresholds of a word prefix")
    _add_word_source(p)
    p.add_argument("--len", type=_int, required=True, dest="length")
    p.add_argument("--l", type=_l_list, required=True)
    p.add_argument("--cap", type=_int, help="defaults to --len")
    p.add_argument("--out", help="write CSV here instead of stdout")

    p = sub.add_parser("deviation", help="deviation from uniformity along a prefix")
    _add_word_source(p)
    p.add_argument("--len", type=_int, required=True, dest="length")
    p.add_argument("--l", type=_int, required=True)
    p.add_argument("--grid", default="geometric", help='"geometric" or comma-separated positions')
    p.add_argument("--out")

    p = sub.add_parser("complexity", help="distinct factor counts of a word prefix")
    _add_word_source(p)
    p.add_argument("--len", type=_int, required=True, dest="length")
    p.add_argument("--l", type=_l_list, required=True)

    p = sub.add_parser("ensemble", help="order statistics over seeded random words")
    p.add_argument("--stat", choices=["richness", "deviation"], required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--count", type=_int, default=100)
    p.add_argument("--len", type=_int, required=True, dest="length")
    p.add_argument("--l", type=_l_list, required=True)
    p.add_argument("--rng-seed", type=_int, default=0x5EEDBA5E)
    p.add_argument("--out")

    p = sub.add_parser("equidist", help="residue histogram of ceiling-map iterates")
    _add_base(p)
    p.add_argument("--n", type=_int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--len", type=_int, required=True, dest="length", help="iterations")
    p.add_argument("--tolerance", type=float, default=0.01)
    p.add_argument("--findings", help="append a finding record here on tolerance violation")

    p = sub.add_parser("factor", help="first occurrence of a factor in a stream")
    _add_base(p)
    _add_seed(p)
    p.add_argument("--target", required=True, help="factor as digit text")
    p.add_argument("--cap", type=_int, default=10**6)
    p.add_argument("--stream", choices=["min", "max"], default="min")

    p = sub.add_parser("coverage", help="first positions of each subalphabet letter")
    _add_base(p)
    _add_seed(p)
    p.add_argument("--cap", type=_int, default=10**6)
    p.add_argument("--stream", choices=["min", "max"], default="min")

    p = sub.add_parser("stopmap", help="iterate the ceiling stop map")
    _add_base(p)
    p.add_argument("--s", type=_residue_set, required=True, help="continue residues, e.g. 0,1")
    p.add_argument("--x0", type=_int, required=True)
    p.add_argument("--budget", type=_int, default=10**5)
    p.add_argument("--findings")

    p = sub.add_parser("collatz", help="trajectory of x -> (p*x+1)/2 | x/2")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--x0", type=_int, required=True)
    p.add_argument("--budget", type=_int, default=10**4)
    p.add_argument("--findings")

    p = sub.add_parser("repro", help="reproduce a table or figure dataset")
    p.add_argument("identifier", choices=TABLE_IDS + FIGURE_IDS)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--len", type=_int, dest="length", help="override prefix length (smoke runs)")
    p.add_argument("--count", type=_int, help="override ensemble sizes (smoke runs)")
    p.add_argument("--rng-seed", type=_int)

    return parser


def _cmd_stream_letters(args, kind: str) -> int:
    cls = MinWordStream if kind == "wmin" else MaxWordStream
    if args.resume:
        stream = cls.load(args.resume)
    else:
        if args.base is None:
            raise RatbaseError("need --base (or --resume)")
        seed = _seed_word(args)
        if args.backend == "shrink":
            budget = args.budget if args.budget is not None else args.length
            stream = cls(args.base, seed, backend="shrink", budget=budget)
        else:
            stream = cls(args.base, seed)
    letters = stream.take(args.length)
    print("".join(str(a) for a in letters))
    if args.raw_out:
        with open(args.raw_out, "wb") as fh:
            fh.write(bytes(letters))
    if args.snapshot_out:
        stream.save(args.snapshot_out)
    return 0


def _cmd_richness(args) -> int:
    cap = args.cap if args.cap is not None else args.length
    label, seed_label, stream = _word_stream(args, max(cap, args.length))
    from .analysis import gather

    letters = gather(stream, cap)
    rows = []
    for l in args.l:
        report = richness_threshold(LetterBuffer(letters, stream.alphabet_size), l, cap)
        rows.append((label, seed_label, l, report.table_entry, cap))
    _emit_csv(rows, ["base", "seed", "l", "threshold_or_negative_missing", "cap"], args.out, write_richness_csv)
    return 0


def _cmd_deviation(args) -> int:
    label, seed_label, stream = _word_stream(args, args.length)
    if args.grid == "geometric":
        grid = geometric_grid(args.l, args.length)
    else:
        grid = sorted({_int(g) for g in args.grid.split(",")})
    curve = deviation_curve(stream, args.l, grid)
    rows = [(label, seed_label, args.l, n, d) for n, d in curve.samples]
    _emit_csv(rows, ["base", "seed", "l", "n", "D"], args.out, write_deviation_csv)
    return 0


def _cmd_complexity(args) -> int:
    label, _, stream = _word_stream(args, args.length)
    from .analysis import gather

    letters = gather(stream, args.length)
    print("l,count")
    for l in args.l:
        print(f"{l},{complexity_count(letters, l, alphabet_size=stream.alphabet_size)}")
    return 0


def _cmd_ensemble(args) -> int:
    q = args.q
    if args.stat == "richness":
        per_word = [
            [random_richness_entry(q, l, args.length, args.rng_seed + i) for l in args.l]
            for i in range(args.count)
        ]
        points = []
        for j, l in enumerate(args.l):
            vals = [w[j] for w in per_word if w[j] > 0]
            points.extend(ensemble_stats([l], [[v] for v in vals]).points)
        from .analysis import EnsembleStats

        stats = EnsembleStats(points)
    else:
        l = args.l[0]
        grid = geometric_grid(l, args.length)
        xs = [g for g in grid if g >= l]
        series = [
            [d for _, d in random_deviation_curve(q, l, grid, args.rng_seed + i).samples]
            for i in range(args.count)
        ]
        stats = ensemble_stats(xs, series)
    if args.out:
        write_ensemble_csv(args.out, stats)
    else:
        print("n_or_l,min,d10,mean,d90,max")
        for pt in stats.points:
            print(f"{pt.x},{pt.min},{pt.d10},{pt.mean},{pt.d90},{pt.max}")
    return 0


def _cmd_equidist(args) -> int:
    hist = equidistribution_histogram(args.base, args.n, args.k, args.length)
    dev = hist.max_abs_deviation()
    print(f"modulus={hist.modulus} iterations={hist.total} max_abs_deviation={dev:.6f}")
    for r, count in enumerate(hist.counts):
        print(f"{r},{count},{count / hist.total:.6f}")
    if dev > args.tolerance:
        finding = Finding(
            "equidistribution",
            {"base": str(args.base), "n": args.n, "k": args.k, "iterations": args.length},
            {"max_abs_deviation": dev, "tolerance": args.tolerance},
        )
        if args.findings:
            FindingsLog(args.findings).append(finding)
        print(f"FINDING: deviation {dev:.6f} exceeds tolerance {args.tolerance}", file=sys.stderr)
    return 0


def _cmd_factor(args) -> int:
    seed = _seed_word(args)
    cls = MinWordStream if args.stream == "min" else MaxWordStream
    stream = cls(args.base, seed)
    target = bytes(word_from_str(args.base, args.target))
    pos = factor_search(stream, target, args.cap)
    print("absent" if pos is None else pos)
    return 0


def _cmd_coverage(args) -> int:
    seed = _seed_word(args)
    cls = MinWordStream if args.stream == "min" else MaxWordStream
    stream = cls(args.base, seed)
    report = letter_coverage(stream, args.cap)
    for letter in report.subalphabet:
        pos = report.first_positions.get(letter)
        print(f"{letter},{'absent' if pos is None else pos}")
    print(f"complete={report.complete} zero_letter_seen={report.zero_letter_seen}")
    return 0


def _cmd_stopmap(args) -> int:
    run = stop_map_run(args.base, args.s, args.x0, args.budget)
    if run.stopped:
        print(f"stopped after {run.steps_to_stop} steps at value {run.final_value}")
    else:
        print(f"did not stop within budget {run.budget}")
        finding = Finding(
            "stopmap",
            {"base": str(args.base), "S": sorted(args.s), "x0": args.x0, "budget": args.budget},
            {"stopped": False},
        )
        if args.findings:
            FindingsLog(args.findings).append(finding)
    return 0


def _cmd_collatz(args) -> int:
    run = collatz_like_trajectory(args.p, args.x0, args.budget)
    if run.status == "cycle":
        kind = "trivial (1,2)" if run.reached_trivial_cycle else f"cycle {run.cycle}"
        print(f"cycle after {run.steps} steps: {kind}; max value {run.max_value}")
        if not run.reached_trivial_cycle and args.findings:
            FindingsLog(args.findings).append(
                Finding(
                    "collatz",
                    {"p": args.p, "x0": args.x0},
                    {"cycle": list(run.cycle), "steps": run.steps},
                )
            )
    else:
        print(f"still running at budget {args.budget}; max value {run.max_value}")
    return 0


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cmd = args.command
    if cmd == "rep":
        print(word_to_str(args.base, rep(args.base, args.n)))
    elif cmd == "val":
        print(val(args.base, word_from_str(args.base, args.word)))
    elif cmd == "succ":
        print(word_to_str(args.base, successor(args.base, word_from_str(args.base, args.word))))
    elif cmd == "cmp":
        order = radix_cmp(word_from_str(args.base, args.word1), word_from_str(args.base, args.word2))
        print({-1: "less", 0: "equal", 1: "greater"}[order])
    elif cmd in ("wmin", "wmax"):
        return _cmd_stream_letters(args, cmd)
    elif cmd == "nmin":
        if args.resume:
            stream = MinWordStream.load(args.resume)
            stream.take(args.l)
            print(stream.state)
        else:
            if args.base is None:
                raise RatbaseError("need --base (or --resume)")
            print(nmin(args.base, _seed_word(args), args.l))
    elif cmd == "richness":
        return _cmd_richness(args)
    elif cmd == "deviation":
        return _cmd_deviation(args)
    elif cmd == "complexity":
        return _cmd_complexity(args)
    elif cmd == "ensemble":
        return _cmd_ensemble(args)
    elif cmd == "equidist":
        return _cmd_equidist(args)
    elif cmd == "factor":
        return _cmd_factor(args)
    elif cmd == "coverage":
        return _cmd_coverage(args)
    elif cmd == "stopmap":
        return _cmd_stopmap(args)
    elif cmd == "collatz":
        return _cmd_collatz(args)
    elif cmd == "repro":
        files = run_repro(
            args.identifier,
            args.out,
            workers=args.workers,
            n_letters=args.length,
            count=args.count,
            rng_seed=args.rng_seed,
        )
        for path in files:
            print(path)
    return 0


def main(argv=None) -> int:
    try:
        return run(argv)
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    except (RatbaseError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
