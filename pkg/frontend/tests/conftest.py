"""Fixtures: a reduced-scale dataset produced through the harness CLI."""

import subprocess
import sys

import pytest


def _repro(out_dir, identifier, *extra):
    cmd = [
        sys.executable,
        "-m",
        "ratbase.cli",
        "repro",
        identifier,
        "--out",
        str(out_dir),
        *extra,
    ]
    proc = subprocess.run(cmd, capture_output=True, text=True)
    assert proc.returncode == 0, f"{identifier} failed: {proc.stderr[-2000:]}"


@pytest.fixture(scope="session")
def dataset(tmp_path_factory):
    out = tmp_path_factory.mktemp("csvs")
    _repro(out, "table2", "--len", "4000")
    _repro(out, "fig2", "--len", "3000", "--count", "10")
    _repro(out, "fig1", "--len", "2000", "--count", "8")
    _repro(out, "fig3", "--len", "2000", "--count", "6")
    _repro(out, "fig4", "--len", "3000", "--count", "6")
    _repro(out, "fig5", "--len", "2500", "--count", "6")
    return out
