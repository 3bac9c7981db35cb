import json
from importlib import resources

import jsonschema
import pytest

from isingcorr import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def csv_rows(text):
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    header, rows = lines[0], lines[1:]
    return header, [ln.split(",") for ln in rows]


def test_table_row_count_and_schema(capsys):
    code, out, _ = run(capsys, "table", "--diagonal", "--alpha2", "0.5",
                       "--N", "1..6", "--orders", "3", "--routes", "det,exp,ff")
    assert code == 0
    header, rows = csv_rows(out)
    assert header == "N,route,value,est_error,M,n_max"
    assert len(rows) == 18
    assert [r[1] for r in rows[:3]] == ["det", "exp", "ff"]


def test_table_direct_above(capsys):
    code, out, _ = run(capsys, "table", "--direct", "0.2", "3.0",
                       "--N", "1..4", "--routes", "det,ff")
    assert code == 0
    _, rows = csv_rows(out)
    assert len(rows) == 8
    # routes agree to the requested tolerance class
    for N in range(1, 5):
        det = float(next(r[2] for r in rows if r[0] == str(N) and r[1] == "det"))
        ff = float(next(r[2] for r in rows if r[0] == str(N) and r[1] == "ff"))
        assert abs(det - ff) < 1e-6


def test_table_adds_determinant_route(capsys):
    code, out, _ = run(capsys, "table", "--diagonal", "--alpha2", "0.5",
                       "--N", "2", "--routes", "exp")
    assert code == 0
    _, rows = csv_rows(out)
    assert sorted(r[1] for r in rows) == ["det", "exp"]


def test_table_critical_point_exit_code(capsys):
    code, _, err = run(capsys, "table", "--diagonal", "--alpha2", "1.0", "--N", "1..2")
    assert code == 2
    assert "CriticalPoint" in err


def test_table_requires_one_param_style(capsys):
    code, _, err = run(capsys, "table", "--N", "1..2")
    assert code == 2
    code, _, err = run(capsys, "table", "--diagonal", "--K1", "0.3", "--N", "1")
    assert code == 2


def test_table_floats_have_17_significant_digits(capsys):
    _, out, _ = run(capsys, "table", "--diagonal", "--alpha2", "0.5",
                    "--N", "1", "--routes", "det")
    _, rows = csv_rows(out)
    mantissa = rows[0][2].replace(".", "").replace("-", "").lstrip("0")
    assert len(mantissa) >= 16


def test_table_determinism_apart_from_timestamp(capsys):
    args = ("table", "--diagonal", "--alpha2", "0.5", "--N", "1..3",
            "--routes", "det,exp")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    strip = lambda text: [ln for ln in text.splitlines() if not ln.startswith("# timestamp=")]
    assert strip(out1) == strip(out2)
    assert out1.splitlines()[1].startswith("# timestamp=")


def test_table_json_validates_against_shipped_schema(capsys):
    code, out, _ = run(capsys, "table", "--diagonal", "--alpha2", "0.5",
                       "--N", "1..2", "--routes", "det,ff", "--format", "json")
    assert code == 0
    report = json.loads(out)
    schema = json.loads(resources.files("isingcorr").joinpath("data/report_schema.json")
                        .read_text())
    jsonschema.validate(report, schema)
    assert report["header"]["tool"] == "corr"
    assert all(row["est_error"] is None or row["est_error"] >= 0.0
               for row in report["rows"])


def test_table_rows_sorted(capsys):
    _, out, _ = run(capsys, "table", "--diagonal", "--alpha2", "0.5",
                    "--N", "3,1,2", "--routes", "ff,det")
    _, rows = csv_rows(out)
    keys = [(int(r[0]), r[1]) for r in rows]
    assert keys == sorted(keys)


def test_table_refinement_cap_exit_three(capsys, tmp_path):
    out_file = tmp_path / "report.csv"
    code, _, _ = run(capsys, "table", "--diagonal", "--alpha2", "0.5", "--N", "1",
                     "--routes", "det", "--tol", "0", "--M", "8", "--M-max", "16",
                     "--out", str(out_file))
    assert code == 3
    assert out_file.exists()
    assert "det" in out_file.read_text()


def test_verify_cauchy(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "cauchy", "--trials", "100",
                       "--seed", "7")
    assert code == 0
    report = json.loads(out)
    assert len(report["records"]) == 100
    assert all(rec["residual"] < 1e-12 for rec in report["records"])


def test_verify_lemma2(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "lemma2")
    assert code == 0
    report = json.loads(out)
    assert all(rec["residual"] < 1e-9 for rec in report["records"])


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "--suite", "nosuch")
    assert code == 2
    assert "unknown suite" in err


def test_verify_failure_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(cli, "run_suite", lambda *a, **k: [
        {"name": "x", "params": "", "residual": 1.0, "tolerance": 0.5, "pass": False}])
    code, out, _ = run(capsys, "verify", "--suite", "cauchy")
    assert code == 1
    assert json.loads(out)["all_pass"] is False


def test_sweep_M_doubling(capsys):
    code, out, _ = run(capsys, "sweep", "--diagonal", "--alpha2", "0.5", "--N", "3",
                       "--M-list", "16,32,64,128", "--routes", "exp")
    assert code == 0
    _, rows = csv_rows(out)
    assert len(rows) == 4
    diffs = [float(r[3]) for r in rows[1:]]
    assert diffs[1] < diffs[0] / 10 and diffs[2] < diffs[1] / 10


def test_sweep_order_list(capsys):
    code, out, _ = run(capsys, "sweep", "--diagonal", "--alpha2", "0.5", "--N", "3",
                       "--order-list", "1,2,3", "--routes", "ff")
    assert code == 0
    _, rows = csv_rows(out)
    assert len(rows) == 3
    assert [r[5] for r in rows] == ["1", "2", "3"]
    assert float(rows[2][3]) <= float(rows[1][3])


def test_sweep_empty_list(capsys):
    code, _, err = run(capsys, "sweep", "--diagonal", "--alpha2", "0.5", "--N", "3",
                       "--M-list", "", "--routes", "exp")
    assert code == 2


def test_sweep_requires_exactly_one_list(capsys):
    code, _, _ = run(capsys, "sweep", "--diagonal", "--alpha2", "0.5", "--N", "3",
                     "--routes", "exp")
    assert code == 2
    code, _, _ = run(capsys, "sweep", "--diagonal", "--alpha2", "0.5", "--N", "3",
                     "--M-list", "16,32", "--order-list", "1,2", "--routes", "exp")
    assert code == 2


def test_config_file_supplies_defaults(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("diagonal = true\nalpha2 = 0.5\nN = 1..2\nroutes = det\n")
    code, out, _ = run(capsys, "--config", str(cfg), "table")
    assert code == 0
    _, rows = csv_rows(out)
    assert len(rows) == 2


def test_config_flags_override_file(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("diagonal = true\nalpha2 = 0.5\nN = 1..2\nroutes = det\n")
    code, out, _ = run(capsys, "--config", str(cfg), "table", "--N", "1..4")
    assert code == 0
    _, rows = csv_rows(out)
    assert len(rows) == 4


def test_bad_route_and_bad_N(capsys):
    code, _, _ = run(capsys, "table", "--diagonal", "--alpha2", "0.5",
                     "--N", "1..2", "--routes", "bogus")
    assert code == 2
    code, _, _ = run(capsys, "table", "--diagonal", "--alpha2", "0.5",
                     "--N", "0..2", "--routes", "det")
    assert code == 2
    code, _, _ = run(capsys, "table", "--diagonal", "--alpha2", "0.5",
                     "--N", "63..70", "--routes", "det")
    assert code == 2
