import json

import numpy as np
import pytest

from triwitness.cli import SWEEP_COLUMNS, main, run_sweep, run_verify
from triwitness.scenario import canonical_w2_scenario


def read_csv(path):
    lines = path.read_text().strip().splitlines()
    header = lines[0].split(",")
    rows = [dict(zip(header, line.split(","))) for line in lines[1:]]
    return header, rows


def test_sweep_header_and_special_rows(tmp_path):
    out = tmp_path / "sweep.csv"
    assert main(["sweep", "--scenario", "w1", "--steps", "3", "--out", str(out)]) == 0
    header, rows = read_csv(out)
    assert header == list(SWEEP_COLUMNS)
    assert len(rows) == 3
    eps = [float(r["epsilon"]) for r in rows]
    assert np.allclose(eps, [0.0, np.pi / 2, np.pi])
    w1_ab = [float(r["w1_ab"]) for r in rows]
    assert np.allclose(w1_ab, [2 * np.sqrt(2), np.sqrt(2), 0.0], atol=1e-9)
    w1_ac = [float(r["w1_ac"]) for r in rows]
    assert np.allclose(w1_ac, [0.0, 2 * np.sqrt(2), 0.0], atol=1e-9)
    assert abs(float(rows[0]["h_bob_w1"]) - 0.2284466968) < 1e-6


def test_sweep_rejects_bad_ranges(tmp_path):
    for flags in (
        ["--eps-start", "2.0", "--eps-end", "1.0"],
        ["--eps-start", "-0.5"],
        ["--eps-end", "4.0"],
        ["--steps", "1"],
    ):
        with pytest.raises(SystemExit) as exc:
            main(["sweep", *flags, "--out", str(tmp_path / "x.csv")])
        assert exc.value.code == 2


def test_sweep_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    flags = ["sweep", "--scenario", "w2", "--steps", "11"]
    main([*flags, "--out", str(a)])
    main([*flags, "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_sweep_json_format(tmp_path):
    out = tmp_path / "sweep.json"
    main(["sweep", "--steps", "3", "--format", "json", "--out", str(out)])
    rows = json.loads(out.read_text())
    assert len(rows) == 3
    assert list(rows[0]) == list(SWEEP_COLUMNS)


def test_sweep_scenario_file_override(tmp_path):
    doc = tmp_path / "scn.json"
    canonical_w2_scenario().save(doc)
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(["sweep", "--scenario", "w2", "--steps", "5", "--out", str(a)])
    main(["sweep", "--scenario-file", str(doc), "--steps", "5", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_run_sweep_rows_are_finite():
    rows = run_sweep(canonical_w2_scenario(), 0.0, np.pi, 7)
    for row in rows:
        for column in SWEEP_COLUMNS:
            assert np.isfinite(row[column])
        for column in SWEEP_COLUMNS[7:]:
            assert row[column] >= 0.0


def test_thresholds_w1(tmp_path):
    out = tmp_path / "thr.csv"
    assert main(["thresholds", "--scenario", "w1", "--out", str(out)]) == 0
    _, rows = read_csv(out)
    assert abs(float(rows[0]["lo"]) - 0.9989374565936864) < 1e-9
    assert abs(float(rows[0]["hi"]) - 1.1437177404024205) < 1e-9
    assert float(rows[0]["value_ab_mid"]) > 2.0
    assert float(rows[0]["value_ac_mid"]) > 2.0


def test_thresholds_w2(tmp_path):
    out = tmp_path / "thr.csv"
    assert main(["thresholds", "--scenario", "w2", "--out", str(out)]) == 0
    _, rows = read_csv(out)
    assert float(rows[0]["lo"]) == 0.0
    assert abs(float(rows[0]["hi"]) - np.pi) < 1e-11
    assert float(rows[0]["value_ab_mid"]) > 0.0
    assert float(rows[0]["value_ac_mid"]) > 0.0


def test_optimize_json_output_and_determinism(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    flags = ["optimize", "--target", "w1_ab", "--seed", "7", "--restarts", "4"]
    assert main([*flags, "--out", str(a)]) == 0
    assert main([*flags, "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert doc["target"] == "w1_ab"
    assert doc["value"] > 2.0
    assert set(doc["scenario"]) == {"preparations", "bob_axes", "charlie_axes", "ancilla_axis", "z_prior"}


def test_optimize_rejects_bad_flags(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["optimize", "--restarts", "0"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["optimize", "--tol", "-1"])
    assert exc.value.code == 2


def test_randomness_single_angle(tmp_path):
    out = tmp_path / "rand.csv"
    assert main(["randomness", "--scenario", "w1", "--eps", "0.0", "--out", str(out)]) == 0
    header, rows = read_csv(out)
    assert header == [
        "epsilon",
        "hmin_global_exact",
        "hmin_local_bob_exact",
        "hmin_global_bound",
        "h_bob_certified_w1",
        "h_bob_certified_w2",
        "h_charlie_certified",
    ]
    assert len(rows) == 1
    assert abs(float(rows[0]["hmin_global_exact"]) - 0.2284466968) < 1e-9


def test_randomness_grid(tmp_path):
    out = tmp_path / "rand.csv"
    assert main(["randomness", "--steps", "5", "--out", str(out)]) == 0
    _, rows = read_csv(out)
    assert len(rows) == 5


def test_table_dump(tmp_path):
    out = tmp_path / "table.json"
    assert main(["table", "--scenario", "w1", "--eps", "0.0", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert len(doc) == 16
    assert "x=00,y=0,z=0" in doc and "x=11,y=1,z=1" in doc
    cell = doc["x=00,y=0,z=0"]
    assert set(cell) == {"b=+1,c=+1", "b=+1,c=-1", "b=-1,c=+1", "b=-1,c=-1"}
    assert abs(cell["b=+1,c=+1"] - 0.8535533905932738) < 1e-11
    for entry in doc.values():
        assert entry["b=+1,c=-1"] == 0.0
        assert entry["b=-1,c=-1"] == 0.0
        assert abs(sum(entry.values()) - 1.0) < 1e-10


def test_verify_passes_at_default_tolerance(capsys):
    assert main(["verify", "--steps", "11"]) == 0
    out = capsys.readouterr().out
    assert "OK" in out
    assert "FAIL " not in out


def test_verify_fails_below_machine_precision(tmp_path, capsys):
    report_path = tmp_path / "report.json"
    assert main(["verify", "--steps", "11", "--tol", "1e-16", "--out", str(report_path)]) == 1
    report = json.loads(report_path.read_text())
    assert any(not row["pass"] for row in report)
    worst = max(row["abs_error"] for row in report if not row["pass"])
    assert worst < 1e-13  # failures are rounding-level only


def test_verify_endpoints_only():
    assert main(["verify", "--steps", "2"]) == 0


def test_verify_report_schema(tmp_path):
    report_path = tmp_path / "report.json"
    main(["verify", "--steps", "5", "--out", str(report_path)])
    report = json.loads(report_path.read_text())
    for row in report:
        assert set(row) == {"check_name", "epsilon", "expected", "actual", "abs_error", "pass"}


def test_run_verify_report_is_green_by_default():
    report, passed = run_verify(grid_steps=5, tolerance=1e-9)
    assert passed
    names = [row["check_name"] for row in report]
    assert len(names) == len(set(names))
    for kind in ("w1_ab", "w1_ac", "w2_ab", "w2_ac", "w1_ab_z0", "w2_ab_z1"):
        assert f"closed_form[{kind}]" in names
