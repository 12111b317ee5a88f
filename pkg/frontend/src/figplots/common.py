"""Argument plumbing shared by the five figure scripts."""

from __future__ import annotations

import argparse
import glob
import os
import sys

from .schema import SchemaError


def make_parser(figure_id: str, extra=()) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=f"figplot-{figure_id}",
        description=f"render a {figure_id} analogue from harness CSVs",
    )
    parser.add_argument("--in", dest="in_dir", required=True, help="directory of harness CSVs")
    parser.add_argument("--out", required=True, help="output image file")
    for flag, help_text in extra:
        parser.add_argument(flag, help=help_text)
    return parser


def resolve(in_dir: str, name_or_path: str | None, default: str | None = None) -> str | None:
    """A flag value may be a bare file name (relative to --in) or a path."""
    target = name_or_path or default
    if target is None:
        return None
    if os.path.isabs(target) or os.path.exists(target):
        return target
    return os.path.join(in_dir, target)


def conventional_panels(in_dir: str, prefix: str) -> list[tuple[str, str, str]]:
    """(slug, cloud_path, band_path) for each <prefix>_<slug>_cloud.csv."""
    panels = []
    for cloud in sorted(glob.glob(os.path.join(in_dir, f"{prefix}_*_cloud.csv"))):
        slug = os.path.basename(cloud)[len(prefix) + 1 : -len("_cloud.csv")]
        band = os.path.join(in_dir, f"{prefix}_{slug}_band.csv")
        panels.append((slug, cloud, band))
    return panels


def run_main(build, argv=None) -> int:
    """Parse, build, save; schema problems exit 2 with the named column."""
    try:
        return build(argv)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 2
    except (FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
