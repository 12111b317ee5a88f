"""Two overlay panels: richness cloud plus de Bruijn dots on the left,
deviation cloud plus a Champernowne curve on the right."""

from __future__ import annotations

from .common import make_parser, resolve, run_main
from .panels import deviation_panel, richness_panel
from .render import finish, new_figure
from .schema import load_deviation, load_ensemble, load_richness


def build(in_dir, out_path, names=None):
    names = names or {}

    def path(key, default):
        return resolve(in_dir, names.get(key), default)

    left_cloud = load_richness(path("left_cloud", "fig5_left_cloud.csv"))
    left_band = load_ensemble(path("left_band", "fig5_left_band.csv"))
    left_overlay = load_richness(path("left_overlay", "fig5_left_overlay.csv"))
    right_cloud = load_deviation(path("right_cloud", "fig5_right_cloud.csv"))
    right_band = load_ensemble(path("right_band", "fig5_right_band.csv"))
    right_overlay = load_deviation(path("right_overlay", "fig5_right_overlay.csv"))

    fig = new_figure((12.0, 5.0))
    series = richness_panel(
        fig.add_subplot(121), left_cloud, left_band, left_overlay, title="richness + de Bruijn"
    )
    series += deviation_panel(
        fig.add_subplot(122),
        cloud_rows=right_cloud,
        band_rows=right_band,
        overlay_rows=right_overlay,
        title="deviation + Champernowne",
    )
    finish(fig, out_path)
    return series


def _build(argv):
    parser = make_parser("fig5")
    args = parser.parse_args(argv)
    series = build(args.in_dir, args.out)
    print(f"wrote {args.out} ({len(series)} series)")
    return 0


def main(argv=None) -> int:
    return run_main(_build, argv)


if __name__ == "__main__":
    raise SystemExit(main())
