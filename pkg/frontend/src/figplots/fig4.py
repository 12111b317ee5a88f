"""Subject-ensemble deviation bands against random-word bands, per base."""

from __future__ import annotations

import glob
import os

from .common import make_parser, resolve, run_main
from .panels import band_pair_panel
from .render import PANEL_FIGSIZE, finish, new_figure
from .schema import SchemaError, load_ensemble


def build_panels(in_dir, out_path):
    subject_files = sorted(glob.glob(os.path.join(in_dir, "fig4_*_subject_band.csv")))
    if not subject_files:
        raise SchemaError(f"{in_dir}: no fig4_*_subject_band.csv panels found")
    fig = new_figure(PANEL_FIGSIZE)
    series = []
    for i, subject_path in enumerate(subject_files, start=1):
        slug = os.path.basename(subject_path)[len("fig4_") : -len("_subject_band.csv")]
        baseline_path = os.path.join(in_dir, f"fig4_{slug}_baseline_band.csv")
        ax = fig.add_subplot(2, (len(subject_files) + 1) // 2, i)
        series += band_pair_panel(
            ax, load_ensemble(subject_path), load_ensemble(baseline_path), title=slug
        )
    finish(fig, out_path)
    return series


def build_single(subject_path, baseline_path, out_path):
    fig = new_figure()
    series = band_pair_panel(
        fig.add_subplot(111), load_ensemble(subject_path), load_ensemble(baseline_path)
    )
    finish(fig, out_path)
    return series


def _build(argv):
    parser = make_parser(
        "fig4",
        extra=[
            ("--subject-band", "ensemble CSV of the subject words"),
            ("--baseline-band", "ensemble CSV of the random baselines"),
        ],
    )
    args = parser.parse_args(argv)
    if args.subject_band or args.baseline_band:
        if not (args.subject_band and args.baseline_band):
            raise ValueError("--subject-band and --baseline-band go together")
        series = build_single(
            resolve(args.in_dir, args.subject_band),
            resolve(args.in_dir, args.baseline_band),
            args.out,
        )
    else:
        series = build_panels(args.in_dir, args.out)
    print(f"wrote {args.out} ({len(series)} series)")
    return 0


def main(argv=None) -> int:
    return run_main(_build, argv)


if __name__ == "__main__":
    raise SystemExit(main())
