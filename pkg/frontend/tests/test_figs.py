"""End-to-end figure rendering from harness CSVs."""

import os

from figplots import fig1, fig2, fig3, fig4, fig5
from figplots.render import BAND_PARTS


def test_fig1_panels(dataset, tmp_path):
    out = tmp_path / "fig1.png"
    series = fig1.build_panels(str(dataset), str(out))
    assert out.exists() and out.stat().st_size > 10_000
    clouds = [s for s in series if s.startswith("cloud:")]
    bands = [s for s in series if ":min" in s or ":max" in s]
    assert len(clouds) >= 4  # one cloud per base panel
    assert bands  # ensemble band drawn


def test_fig1_single_panel_from_table2(dataset, tmp_path):
    out = tmp_path / "fig1_table2.png"
    series = fig1.build_single(os.path.join(dataset, "table2.csv"), out_path=str(out))
    assert out.exists()
    # every table series except the all-negative ones shows up
    assert sum(1 for s in series if s.startswith("cloud:")) == 8


def test_fig1_cli_entry(dataset, tmp_path):
    out = tmp_path / "cli.png"
    code = fig1.main(["--in", str(dataset), "--out", str(out)])
    assert code == 0 and out.exists()


def test_fig2_series_roles(dataset, tmp_path):
    out = tmp_path / "fig2.png"
    series = fig2.build(
        os.path.join(dataset, "fig2_subject.csv"),
        os.path.join(dataset, "fig2_band.csv"),
        out_path=str(out),
    )
    assert out.exists()
    assert any(s.startswith("subject:7/2") for s in series)
    for part in BAND_PARTS:
        assert any(s.endswith(f":{part}") for s in series)


def test_fig2_rejects_bad_band(dataset, tmp_path):
    bad = tmp_path / "band.csv"
    bad.write_text("n_or_l,min,d10,mean,d90\n")
    code = fig2.main(
        ["--in", str(dataset), "--band", str(bad), "--out", str(tmp_path / "x.png")]
    )
    assert code == 2
    assert not (tmp_path / "x.png").exists()


def test_fig3(dataset, tmp_path):
    out = tmp_path / "fig3.png"
    series = fig3.build(
        os.path.join(dataset, "fig3_cloud.csv"),
        os.path.join(dataset, "fig3_band.csv"),
        out_path=str(out),
    )
    assert out.exists()
    assert sum(1 for s in series if s.startswith("cloud:")) >= 6  # 6 seeds at smoke scale


def test_fig4_panels(dataset, tmp_path):
    out = tmp_path / "fig4.png"
    series = fig4.build_panels(str(dataset), str(out))
    assert out.exists()
    subject_means = [s for s in series if s.startswith("subjects:")]
    baseline_means = [s for s in series if s.startswith("random baseline:")]
    assert len(subject_means) == 4 * len(BAND_PARTS)
    assert len(baseline_means) == 4 * len(BAND_PARTS)


def test_fig5_overlays(dataset, tmp_path):
    out = tmp_path / "fig5.png"
    series = fig5.build(str(dataset), str(out))
    assert out.exists()
    assert "overlay:richness" in series  # de Bruijn dots
    assert "overlay:deviation" in series  # Champernowne curve


def test_rendering_is_pure(dataset, tmp_path):
    a = fig2.build(
        os.path.join(dataset, "fig2_subject.csv"),
        os.path.join(dataset, "fig2_band.csv"),
        out_path=str(tmp_path / "a.png"),
    )
    b = fig2.build(
        os.path.join(dataset, "fig2_subject.csv"),
        os.path.join(dataset, "fig2_band.csv"),
        out_path=str(tmp_path / "b.png"),
    )
    assert a == b
