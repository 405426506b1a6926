import csv
import io
import json
import os
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from equicycle.cli import _resolve_jobs, main

CANON = ["--p2", "-1", "--s1", "-0.5", "--s2", "1.2"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_report_lines(capsys):
    code, out, _ = run(capsys, "classify", "--p1", "3.5", *CANON)
    assert code == 0
    lines = dict(line.split(": ", 1) for line in out.strip().splitlines())
    assert lines["region"] == "One"
    assert lines["cond_i"] == "true"
    assert lines["cond_ii"] == "true"
    assert lines["origin"] == "UnstableFocus"
    assert lines["infinity"] == "Repellor"
    assert lines["sigma_A"].startswith("(-0.524232696117744")
    assert float(lines["Q"]) == pytest.approx(-0.44)


def test_classify_inadmissible_exits_2(capsys):
    code, _, err = run(capsys, "classify", "--p1", "3.5", "--p2", "-1", "--s1", "-0.5", "--s2", "0.5")
    assert code == 2
    assert "inadmissible" in err


def test_missing_parameter_exits_2(capsys):
    code, _, err = run(capsys, "classify", "--p1", "3.5", "--p2", "-1", "--s1", "-0.5")
    assert code == 2
    assert "missing parameter s2" in err


def test_unknown_flag_exits_2(capsys):
    assert main(["classify", "--bogus", "1"]) == 2


def test_help_for_every_subcommand(capsys):
    for sub in ("classify", "equilibria", "cycles", "sweep", "portrait"):
        assert main([sub, "--help"]) == 0
        assert sub in capsys.readouterr().out or True


def test_config_file_and_flag_override(tmp_path, capsys):
    cfg = tmp_path / "params.cfg"
    cfg.write_text("p1 = 3.5\np2 = -1\ns1 = -0.5  # inline comment\ns2 = 1.2\n")
    code, out, _ = run(capsys, "classify", "--config", str(cfg))
    assert code == 0 and "region: One" in out
    code, out, _ = run(capsys, "classify", "--config", str(cfg), "--p1", "2.0")
    assert code == 0 and "region: TwentyFive" in out


def test_config_file_unknown_key_exits_2(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("p1 = 1\nwhatever = 3\n")
    code, _, err = run(capsys, "classify", "--config", str(cfg))
    assert code == 2
    assert "unknown config key" in err


def test_degenerate_infinity_still_classifies(capsys):
    code, out, _ = run(capsys, "classify", "--p1", "1.0", "--p2", "-1", "--s1", "0", "--s2", "1.2")
    assert code == 0
    assert "infinity: Degenerate" in out


def test_equilibria_csv_stdout(capsys):
    code, out, _ = run(capsys, "equilibria", "--p1", "2.0", *CANON)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][0] == "row_type"
    assert len(rows) == 1 + 25


def test_equilibria_json_file(tmp_path, capsys):
    out_path = tmp_path / "eq.json"
    code, _, _ = run(capsys, "equilibria", "--p1", "10.0", *CANON, "--format", "json", "--output", str(out_path))
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert doc["region"]["count"] == "One"
    assert len(doc["equilibria"]) == 1


def test_output_to_unwritable_path_exits_4(capsys):
    code, _, err = run(
        capsys, "equilibria", "--p1", "10.0", *CANON, "--output", "/nonexistent-dir/x/eq.csv"
    )
    assert code == 4
    assert "I/O" in err


def test_cycles_text_summary(capsys):
    code, out, _ = run(capsys, "cycles", "--p1", "3.5", *CANON, "--scan-nodes", "96")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "cycles found: 1"
    assert "multiplier=3.9" in lines[1]
    assert "enclosed=1" in lines[1]
    assert "stable=true" in lines[1]


def test_cycles_none_found_exits_0(capsys):
    code, out, _ = run(capsys, "cycles", "--p1", "2.0", *CANON, "--scan-nodes", "128")
    assert code == 0
    assert out.strip().splitlines()[0] == "cycles found: 0"


def test_cycles_budget_failure_exits_3(capsys):
    code, _, err = run(
        capsys, "cycles", "--p1", "3.0", *CANON,
        "--scan-nodes", "128", "--rel-tol", "1e-13", "--abs-tol", "1e-14", "--max-steps", "1000",
    )
    assert code == 3
    assert "numerical failure" in err


def test_sweep_serial_and_parallel_agree(tmp_path, capsys):
    args = ["sweep", "--axis", "p1", "--from", "-1", "--to", "4", "--steps", "11", *CANON]
    code, serial, _ = run(capsys, *args, "--jobs", "1")
    assert code == 0
    code, parallel, _ = run(capsys, *args, "--jobs", "2")
    assert code == 0
    assert serial == parallel
    rows = list(csv.reader(io.StringIO(serial)))
    assert len(rows) == 12
    regions = [r[5] for r in rows[1:]]
    assert regions[0] == "One" and regions[-1] == "One"
    assert "TwentyFive" in regions


def test_sweep_rejects_single_step(capsys):
    code, _, err = run(capsys, "sweep", "--axis", "p1", "--from", "0", "--to", "1", "--steps", "1", *CANON)
    assert code == 2


def test_jobs_resolution(monkeypatch):
    assert _resolve_jobs(3) == 3
    assert _resolve_jobs(0) == 1
    monkeypatch.setenv("EQUICYCLE_JOBS", "5")
    assert _resolve_jobs(None) == 5
    monkeypatch.setenv("EQUICYCLE_JOBS", "junk")
    with pytest.raises(ValueError):
        _resolve_jobs(None)
    monkeypatch.delenv("EQUICYCLE_JOBS")
    assert _resolve_jobs(None) >= 1


def test_portrait_svg(tmp_path, capsys):
    out_path = tmp_path / "portrait.svg"
    code, _, _ = run(
        capsys, "portrait", "--p1", "3.5", *CANON,
        "--output", str(out_path), "--scan-nodes", "96", "--horizon", "4",
    )
    assert code == 0
    root = ET.fromstring(out_path.read_text())
    classes = {el.get("class") for el in root.iter() if el.get("class")}
    assert "cycle" in classes
    assert "theta-set" in classes


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "equicycle.cli", "classify", "--p1", "3.5", *CANON],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "region: One" in proc.stdout
