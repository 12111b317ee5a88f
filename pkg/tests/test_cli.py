"""CLI behavior: outputs, exit codes, snapshots, repro file layout."""

import json

import pytest

from ratbase.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBasicCommands:
    def test_rep(self, capsys):
        code, out, _ = run_cli(capsys, "rep", "--base", "7/3", "13")
        assert code == 0 and out.strip() == "614"

    def test_val_rational(self, capsys):
        code, out, _ = run_cli(capsys, "val", "--base", "7/3", "10")
        assert code == 0 and out.strip() == "7/9"

    def test_val_integer(self, capsys):
        code, out, _ = run_cli(capsys, "val", "--base", "7/3", "614")
        assert code == 0 and out.strip() == "13"

    def test_succ(self, capsys):
        code, out, _ = run_cli(capsys, "succ", "--base", "7/3", "3234")
        assert code == 0 and out.strip() == "3260"

    def test_cmp(self, capsys):
        code, out, _ = run_cli(capsys, "cmp", "--base", "7/3", "3", "10")
        assert code == 0 and out.strip() == "less"

    def test_wmin_example(self, capsys):
        code, out, _ = run_cli(capsys, "wmin", "--base", "7/3", "--seed-val", "1", "--len", "3")
        assert code == 0 and out.strip() == "202"

    def test_wmax_empty_seed(self, capsys):
        code, out, _ = run_cli(capsys, "wmax", "--base", "7/3", "--seed-word", "", "--len", "5")
        assert code == 0 and out.strip() == "64656"

    def test_nmin(self, capsys):
        code, out, _ = run_cli(capsys, "nmin", "--base", "7/3", "--seed-val", "1", "--l", "3")
        assert code == 0 and out.strip() == "17"


class TestExitCodes:
    def test_non_coprime_base_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "rep", "--base", "6/3", "4")
        assert code == 2 and "coprime" in err

    def test_p_not_greater_than_q(self, capsys):
        code, _, err = run_cli(capsys, "rep", "--base", "3/5", "4")
        assert code == 2

    def test_empty_min_seed_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "wmin", "--base", "7/3", "--seed-word", "", "--len", "3")
        assert code == 2

    def test_resource_cap_exit_3(self, capsys):
        code, _, err = run_cli(
            capsys, "richness", "--base", "3/2", "--seed-val", "1", "--len", "100", "--l", "60"
        )
        assert code == 3 and "cap" in err

    def test_usage_error_from_argparse(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["rep"])  # missing --base and n
        assert exc.value.code == 2


class TestSnapshotFlow:
    def test_resume_continues_stream(self, tmp_path, capsys):
        snap = tmp_path / "wmin.snap"
        code, first, _ = run_cli(
            capsys,
            "wmin", "--base", "7/3", "--seed-val", "1", "--len", "30",
            "--snapshot-out", str(snap),
        )
        assert code == 0
        code, rest, _ = run_cli(capsys, "wmin", "--resume", str(snap), "--len", "29")
        assert code == 0
        from ratbase.core import Base
        from ratbase.streams import wmin_prefix, rep

        whole = "".join(
            str(a) for a in wmin_prefix(Base(7, 3), rep(Base(7, 3), 1), 59)
        )
        assert first.strip() + rest.strip() == whole

    def test_raw_out(self, tmp_path, capsys):
        raw = tmp_path / "letters.bin"
        run_cli(
            capsys,
            "wmin", "--base", "3/2", "--seed-val", "1", "--len", "8", "--raw-out", str(raw),
        )
        assert raw.read_bytes() == bytes([1, 0, 1, 1, 0, 0, 0, 1])

    def test_nmin_resume(self, tmp_path, capsys):
        snap = tmp_path / "s.snap"
        run_cli(
            capsys,
            "wmin", "--base", "7/3", "--seed-val", "1", "--len", "1",
            "--snapshot-out", str(snap),
        )
        code, out, _ = run_cli(capsys, "nmin", "--resume", str(snap), "--l", "2")
        assert code == 0 and out.strip() == "17"  # state after 3 letters total

    def test_huge_valuation_prints(self, capsys):
        # states outgrow the default int->str conversion limit quickly
        code, out, _ = run_cli(capsys, "nmin", "--base", "3/2", "--seed-val", "1", "--l", "20000")
        assert code == 0 and len(out.strip()) > 3000


class TestAnalysisCommands:
    def test_richness_csv_out(self, tmp_path, capsys):
        out = tmp_path / "r.csv"
        code, _, _ = run_cli(
            capsys,
            "richness", "--base", "3/2", "--seed-val", "1",
            "--len", "200", "--l", "1..3", "--out", str(out),
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "base,seed,l,threshold_or_negative_missing,cap"
        assert lines[3].split(",")[3] == "51"

    def test_deviation_stdout(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "deviation", "--word", "random", "--q", "2", "--rng-seed", "7",
            "--len", "2000", "--l", "3", "--grid", "100,2000",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "base,seed,l,n,D"
        assert len(lines) == 3

    def test_complexity(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "complexity", "--base", "3/2", "--seed-val", "1", "--len", "100", "--l", "1,2,3",
        )
        assert code == 0
        rows = dict(line.split(",") for line in out.strip().splitlines()[1:])
        assert rows["1"] == "2"

    def test_ensemble_richness(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "ensemble", "--stat", "richness", "--q", "2", "--count", "10",
            "--len", "2000", "--l", "1..3", "--rng-seed", "11",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "n_or_l,min,d10,mean,d90,max"
        assert len(lines) == 4


class TestCheckCommands:
    def test_equidist_writes_finding_on_violation(self, tmp_path, capsys):
        findings = tmp_path / "findings.ndjson"
        # tiny iteration count -> frequencies far from uniform -> finding
        code, out, err = run_cli(
            capsys,
            "equidist", "--base", "3/2", "--n", "1", "--k", "2", "--len", "5",
            "--tolerance", "0.01", "--findings", str(findings),
        )
        assert code == 0  # findings never break the exit status
        assert "FINDING" in err
        record = json.loads(findings.read_text().splitlines()[0])
        assert record["check"] == "equidistribution"

    def test_factor(self, capsys):
        code, out, _ = run_cli(
            capsys, "factor", "--base", "3/2", "--seed-val", "1", "--target", "11", "--cap", "10"
        )
        assert code == 0 and out.strip() == "3"

    def test_coverage(self, capsys):
        code, out, _ = run_cli(
            capsys, "coverage", "--base", "7/3", "--seed-val", "1", "--cap", "10"
        )
        assert code == 0
        assert "complete=True zero_letter_seen=True" in out

    def test_stopmap_finding(self, tmp_path, capsys):
        findings = tmp_path / "f.ndjson"
        code, out, _ = run_cli(
            capsys,
            "stopmap", "--base", "3/2", "--s", "0,1", "--x0", "7", "--budget", "50",
            "--findings", str(findings),
        )
        assert code == 0 and "did not stop" in out
        assert findings.exists()

    def test_collatz(self, capsys):
        code, out, _ = run_cli(capsys, "collatz", "--p", "3", "--x0", "6")
        assert code == 0 and "trivial (1,2)" in out


class TestRepro:
    def test_table1_layout(self, tmp_path, capsys):
        code, out, _ = run_cli(capsys, "repro", "table1", "--out", str(tmp_path))
        assert code == 0
        lines = (tmp_path / "table1.csv").read_text(encoding="utf-8").splitlines()
        assert lines[0] == "n,rep"
        assert lines[1] == "0,ε"
        assert lines[30] == "29,6113"
        manifest = json.loads((tmp_path / "table1.manifest.json").read_text())
        assert manifest["id"] == "table1" and "tool_version" in manifest

    def test_table_smoke_with_overrides(self, tmp_path, capsys):
        code, out, _ = run_cli(
            capsys, "repro", "table3", "--out", str(tmp_path), "--len", "5000"
        )
        assert code == 0
        lines = (tmp_path / "table3.csv").read_text().splitlines()
        assert lines[0] == "base,seed,l,threshold_or_negative_missing,cap"
        # 4 wmin rows + sqrt2 + pi + random + expected, 11 l-values each
        assert len(lines) == 1 + 8 * 11
        manifest = json.loads((tmp_path / "table3.manifest.json").read_text())
        assert manifest["overrides"]["n_letters"] == 5000

    def test_fig2_smoke(self, tmp_path, capsys):
        code, out, _ = run_cli(
            capsys,
            "repro", "fig2", "--out", str(tmp_path), "--len", "3000", "--count", "8",
            "--workers", "2",
        )
        assert code == 0
        subject = (tmp_path / "fig2_subject.csv").read_text().splitlines()
        band = (tmp_path / "fig2_band.csv").read_text().splitlines()
        assert subject[0] == "base,seed,l,n,D"
        assert band[0] == "n_or_l,min,d10,mean,d90,max"
        # bands start at the information floor, so their grid is a suffix
        # of the subject grid
        subject_ns = [int(r.split(",")[3]) for r in subject[1:]]
        band_ns = [int(r.split(",")[0]) for r in band[1:]]
        assert band_ns and set(band_ns) <= set(subject_ns)
        assert min(band_ns) >= 2**7 + 7 - 1
