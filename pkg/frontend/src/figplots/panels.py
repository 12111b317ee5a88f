"""Panel builders: each returns the list of series labels it drew."""

from __future__ import annotations

from .render import (
    OVERLAY_STYLE,
    SUBJECT_STYLE,
    draw_band,
    draw_cloud,
    group_by_series,
)


def richness_panel(ax, cloud_rows, band_rows=None, overlay_rows=None, title=""):
    """Thresholds versus factor length: point cloud, optional band/overlay.

    Negative table entries (incomplete at the cap) carry no threshold and
    are left out of the plot.
    """
    series = []
    groups = group_by_series(cloud_rows)
    points = []
    for (base, seed), rows in sorted(groups.items()):
        pts = [(r.l, r.entry) for r in rows if r.entry > 0]
        points.extend(pts)
        series.append(f"cloud:{base}:{seed}")
    draw_cloud(ax, points, label="thresholds")
    if band_rows:
        series += draw_band(ax, band_rows)
    if overlay_rows:
        xs = [r.l for r in overlay_rows if r.entry > 0]
        ys = [r.entry for r in overlay_rows if r.entry > 0]
        ax.scatter(xs, ys, label="overlay", **OVERLAY_STYLE)
        series.append("overlay:richness")
    ax.set_yscale("log")
    ax.set_xlabel("factor length l")
    ax.set_ylabel("richness threshold")
    if title:
        ax.set_title(title)
    return series


def deviation_panel(
    ax,
    subject_rows=None,
    cloud_rows=None,
    band_rows=None,
    overlay_rows=None,
    title="",
):
    """Deviation from uniformity versus prefix length, log-log."""
    series = []
    if subject_rows:
        for (base, seed), rows in sorted(group_by_series(subject_rows).items()):
            rows = sorted(rows, key=lambda r: r.n)
            ax.plot([r.n for r in rows], [r.d for r in rows], **SUBJECT_STYLE)
            series.append(f"subject:{base}:{seed}")
    if cloud_rows:
        pts = [(r.n, r.d) for r in cloud_rows]
        draw_cloud(ax, pts, label="subject cloud")
        series += [f"cloud:{base}:{seed}" for (base, seed) in sorted(group_by_series(cloud_rows))]
    if band_rows:
        series += draw_band(ax, band_rows)
    if overlay_rows:
        rows = sorted(overlay_rows, key=lambda r: r.n)
        ax.plot(
            [r.n for r in rows],
            [r.d for r in rows],
            color="tab:blue",
            linewidth=1.6,
            label="overlay",
        )
        series.append("overlay:deviation")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("prefix length n")
    ax.set_ylabel("deviation from uniformity")
    if title:
        ax.set_title(title)
    return series


def band_pair_panel(ax, subject_band, baseline_band, title=""):
    """Two five-curve bands: subjects in black, baselines in red."""
    series = draw_band(ax, subject_band, style={"color": "black"}, label="subjects")
    series += draw_band(ax, baseline_band, label="random baseline")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("prefix length n")
    ax.set_ylabel("deviation from uniformity")
    if title:
        ax.set_title(title)
    return series
