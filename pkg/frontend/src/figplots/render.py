"""Shared plotting pieces: ensemble bands, point clouds, figure save."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

FIGSIZE = (7.0, 5.0)
PANEL_FIGSIZE = (12.0, 9.0)
DPI = 120

BAND_STYLE = {"color": "tab:red", "linewidth": 0.9}
SUBJECT_STYLE = {"color": "black", "linewidth": 1.3}
CLOUD_STYLE = {"color": "black", "s": 6, "alpha": 0.55}
OVERLAY_STYLE = {"color": "tab:green", "s": 36, "zorder": 5}

BAND_PARTS = ["min", "d10", "mean", "d90", "max"]


def draw_band(ax, ensemble_rows, style=None, label="random baseline"):
    """Five ordered curves from ensemble rows; returns the series labels."""
    style = {**BAND_STYLE, **(style or {})}
    xs = [row.x for row in ensemble_rows]
    labels = []
    for part in BAND_PARTS:
        ys = [getattr(row, part) for row in ensemble_rows]
        ax.plot(xs, ys, label=f"{label} {part}" if part == "mean" else None, **style)
        labels.append(f"{label}:{part}")
    return labels


def draw_cloud(ax, points, style=None, label="subjects"):
    style = {**CLOUD_STYLE, **(style or {})}
    xs = [x for x, _ in points]
    ys = [y for _, y in points]
    ax.scatter(xs, ys, label=label, **style)
    return [f"{label}:cloud"]


def group_by_series(rows, key=lambda r: (r.base, r.seed)):
    groups: dict = {}
    for row in rows:
        groups.setdefault(key(row), []).append(row)
    return groups


def finish(fig, out_path):
    fig.tight_layout()
    fig.savefig(out_path, dpi=DPI)
    plt.close(fig)


def new_figure(figsize=FIGSIZE):
    return plt.figure(figsize=figsize)
