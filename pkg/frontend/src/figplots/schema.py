"""CSV loading with strict schema validation.

Every loader checks the header column-for-column and converts fields with
a named-column error on any mismatch, so a bad input fails before any
figure is touched.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass


class SchemaError(Exception):
    """An input CSV does not match its declared schema."""


RICHNESS_COLUMNS = ["base", "seed", "l", "threshold_or_negative_missing", "cap"]
DEVIATION_COLUMNS = ["base", "seed", "l", "n", "D"]
ENSEMBLE_COLUMNS = ["n_or_l", "min", "d10", "mean", "d90", "max"]


@dataclass(frozen=True)
class RichnessRow:
    base: str
    seed: str
    l: int
    entry: int
    cap: int


@dataclass(frozen=True)
class DeviationRow:
    base: str
    seed: str
    l: int
    n: int
    d: float


@dataclass(frozen=True)
class EnsembleRow:
    x: int
    min: float
    d10: float
    mean: float
    d90: float
    max: float


def _read_rows(path, columns) -> list[dict]:
    if not os.path.exists(path):
        raise SchemaError(f"{path}: file does not exist")
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file, expected header {columns}") from None
        if header != columns:
            for want, got in zip(columns, header + [None] * len(columns)):
                if want != got:
                    raise SchemaError(
                        f"{path}: expected column {want!r}, found {got!r} "
                        f"(full header {header})"
                    )
            raise SchemaError(f"{path}: unexpected extra columns {header[len(columns):]}")
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(columns):
                raise SchemaError(f"{path}:{lineno}: expected {len(columns)} fields, got {len(row)}")
            rows.append(dict(zip(columns, row)))
    return rows


def _convert(path, row_dict, column, caster, lineno_hint=""):
    raw = row_dict[column]
    try:
        return caster(raw)
    except ValueError:
        raise SchemaError(
            f"{path}: column {column!r} holds non-numeric value {raw!r}{lineno_hint}"
        ) from None


def load_richness(path) -> list[RichnessRow]:
    rows = []
    for raw in _read_rows(path, RICHNESS_COLUMNS):
        rows.append(
            RichnessRow(
                base=raw["base"],
                seed=raw["seed"],
                l=_convert(path, raw, "l", int),
                entry=_convert(path, raw, "threshold_or_negative_missing", int),
                cap=_convert(path, raw, "cap", int),
            )
        )
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return rows


def load_deviation(path) -> list[DeviationRow]:
    rows = []
    for raw in _read_rows(path, DEVIATION_COLUMNS):
        rows.append(
            DeviationRow(
                base=raw["base"],
                seed=raw["seed"],
                l=_convert(path, raw, "l", int),
                n=_convert(path, raw, "n", int),
                d=_convert(path, raw, "D", float),
            )
        )
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return rows


def load_ensemble(path) -> list[EnsembleRow]:
    rows = []
    for raw in _read_rows(path, ENSEMBLE_COLUMNS):
        rows.append(
            EnsembleRow(
                x=_convert(path, raw, "n_or_l", int),
                min=_convert(path, raw, "min", float),
                d10=_convert(path, raw, "d10", float),
                mean=_convert(path, raw, "mean", float),
                d90=_convert(path, raw, "d90", float),
                max=_convert(path, raw, "max", float),
            )
        )
    if not rows:
        raise SchemaError(f"{path}: no data rows (an empty ensemble is an error)")
    return rows
