"""Log-log deviation curve of one subject word against ensemble bands."""

from __future__ import annotations

from .common import make_parser, resolve, run_main
from .panels import deviation_panel
from .render import finish, new_figure
from .schema import load_deviation, load_ensemble


def build(subject_path, band_path, overlay_path=None, out_path="fig2.png"):
    subject = load_deviation(subject_path)
    band = load_ensemble(band_path)
    overlay = load_deviation(overlay_path) if overlay_path else None
    fig = new_figure()
    series = deviation_panel(
        fig.add_subplot(111), subject_rows=subject, band_rows=band, overlay_rows=overlay,
        title="deviation from uniformity",
    )
    finish(fig, out_path)
    return series


def _build(argv):
    parser = make_parser(
        "fig2",
        extra=[
            ("--subject", "deviation CSV of the subject word"),
            ("--band", "ensemble CSV with the baseline band"),
            ("--overlay", "extra deviation CSV drawn as a line"),
        ],
    )
    args = parser.parse_args(argv)
    series = build(
        resolve(args.in_dir, args.subject, "fig2_subject.csv"),
        resolve(args.in_dir, args.band, "fig2_band.csv"),
        resolve(args.in_dir, args.overlay),
        args.out,
    )
    print(f"wrote {args.out} ({len(series)} series)")
    return 0


def main(argv=None) -> int:
    return run_main(_build, argv)


if __name__ == "__main__":
    raise SystemExit(main())
