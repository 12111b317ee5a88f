"""Richness-threshold point clouds with random-word ensemble bands.

Default mode renders one panel per fig1_<base>_cloud.csv in --in; passing
--cloud (any richness-schema CSV, e.g. a table dataset) renders a single
panel instead.  --band / --overlay are optional ensemble / richness CSVs.
"""

from __future__ import annotations

import os

from .common import conventional_panels, make_parser, resolve, run_main
from .panels import richness_panel
from .render import PANEL_FIGSIZE, finish, new_figure
from .schema import SchemaError, load_ensemble, load_richness


def build_single(cloud_path, band_path=None, overlay_path=None, out_path="fig1.png", title="fig1"):
    cloud = load_richness(cloud_path)
    band = load_ensemble(band_path) if band_path else None
    overlay = load_richness(overlay_path) if overlay_path else None
    fig = new_figure()
    series = richness_panel(fig.add_subplot(111), cloud, band, overlay, title=title)
    finish(fig, out_path)
    return series


def build_panels(in_dir, out_path):
    panels = conventional_panels(in_dir, "fig1")
    if not panels:
        raise SchemaError(f"{in_dir}: no fig1_*_cloud.csv panels found (and no --cloud given)")
    fig = new_figure(PANEL_FIGSIZE)
    series = []
    for i, (slug, cloud_path, band_path) in enumerate(panels, start=1):
        ax = fig.add_subplot(2, (len(panels) + 1) // 2, i)
        cloud = load_richness(cloud_path)
        band = load_ensemble(band_path) if os.path.exists(band_path) else None
        series += richness_panel(ax, cloud, band, title=slug)
    finish(fig, out_path)
    return series


def _build(argv):
    parser = make_parser(
        "fig1",
        extra=[
            ("--cloud", "richness CSV for a single panel"),
            ("--band", "ensemble CSV with the random-word band"),
            ("--overlay", "richness CSV drawn as large overlay dots"),
        ],
    )
    args = parser.parse_args(argv)
    if args.cloud:
        series = build_single(
            resolve(args.in_dir, args.cloud),
            resolve(args.in_dir, args.band),
            resolve(args.in_dir, args.overlay),
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
