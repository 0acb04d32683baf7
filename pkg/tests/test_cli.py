import json

import pytest
from typer.testing import CliRunner

from app.routes.commands import app

try:
    runner = CliRunner(mix_stderr=False)
except TypeError:  # click >= 8.2 always keeps stderr separate
    runner = CliRunner()


def invoke(*args):
    return runner.invoke(app, [str(a) for a in args])


@pytest.mark.parametrize(
    "n,z,value",
    [
        (3, "1/2", "0"),
        (2, "1", "5/6"),
        (0, "5", "1"),
    ],
)
def test_exact(n, z, value):
    result = invoke("exact", "--n", n, "--z", z)
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data["value"] == value
    assert data["im"]["numerator"] == "0"


def test_exact_parse_error_exit_code():
    result = invoke("exact", "--n", 2, "--z", "2/3,x")
    assert result.exit_code == 2
    assert "INPUT.PARSE" in result.stderr
    assert "position 4" in result.stderr


def test_exact_is_deterministic():
    first = invoke("exact", "--n", 9, "--z", "2/3,1/4")
    second = invoke("exact", "--n", 9, "--z", "2/3,1/4")
    assert first.stdout == second.stdout


def test_poly_second_kind():
    result = invoke("poly", "--n", 1, "--kind", "second")
    assert json.loads(result.stdout)["coefficients"] == ["1/2", "1"]


def test_poly_text():
    result = invoke("poly", "--n", 2, "--format", "text")
    assert result.stdout.strip() == "5/6 + (-2)z + (1)z^2"


def test_asym_compare_exact():
    result = invoke("asym", "--n", 20, "--z", "2", "--K", 3, "--compare-exact")
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data["regime"] == "RealGreaterOne"
    assert float(data["relative_errors"][3]) == pytest.approx(1.051e-9, rel=5e-3)


def test_asym_stokes_line_warning():
    result = invoke("asym", "--n", 10, "--z", "1,1/4", "--K", 2)
    assert result.exit_code == 0
    assert json.loads(result.stdout)["regime"] == "StokesLine"
    assert "Stokes line" in result.stderr


@pytest.mark.parametrize("z", ["1", "1/100", "1/2,1/100"])
def test_asym_exclusion_band(z):
    result = invoke("asym", "--n", 10, "--z", z, "--K", 2)
    assert result.exit_code == 3
    assert "distance to [0, 1]" in result.stderr


def test_asym_force_regime():
    result = invoke("asym", "--n", 10, "--z", "6/5,1/4", "--K", 2, "--force-regime", "ComplexWithS1")
    assert result.exit_code == 0
    assert json.loads(result.stdout)["subdominant"] is not None


def test_asym_force_midpoint_off_midpoint():
    result = invoke("asym", "--n", 10, "--z", "3/4", "--K", 2, "--force-regime", "RealHalf")
    assert result.exit_code == 3
    assert "REGIME.VIOLATION" in result.stderr


def test_asym_csv():
    result = invoke("asym", "--n", 20, "--z", "2,1", "--K", 2, "--format", "csv")
    lines = result.stdout.strip().splitlines()
    assert lines[0] == "k,term_re,term_im,magnitude"
    assert len(lines) == 4


def test_asym_precision_too_low():
    assert invoke("asym", "--n", 10, "--z", "2", "--prec", 20).exit_code == 2


def test_coeffs_deltas():
    result = invoke("coeffs", "--z", "2", "--kmax", 3)
    data = json.loads(result.stdout)
    assert len(data["coefficients"]) == 4
    assert all(float(v) < 1e-40 for v in data["closed_form_deltas"].values())


def significant_digits(text):
    mantissa = text.lstrip("-").split("e")[0].replace(".", "").lstrip("0")
    return len(mantissa)


def test_coeffs_entries_carry_index():
    result = invoke("coeffs", "--z", "2/3,1/4", "--kmax", 10)
    assert result.exit_code == 0
    entries = json.loads(result.stdout)["coefficients"]
    assert [e["k"] for e in entries] == list(range(11))
    assert entries[1]["re"].startswith("-0.10029378942")


def test_coeffs_keep_working_precision():
    result = invoke("coeffs", "--z", "2/3,1/4", "--kmax", 2, "--prec", 50)
    entries = json.loads(result.stdout)["coefficients"]
    assert 40 < significant_digits(entries[1]["re"]) <= 50
    assert 40 < significant_digits(entries[2]["im"]) <= 50


def test_coeffs_csv_rows_are_indexed():
    result = invoke("coeffs", "--z", "2", "--kmax", 3, "--format", "csv")
    lines = result.stdout.strip().splitlines()
    assert lines[0] == "k,re,im"
    assert [line.split(",")[0] for line in lines[1:]] == ["0", "1", "2", "3"]


def test_coeffs_midpoint():
    result = invoke("coeffs", "--z", "1/2", "--saddle", -1, "--kmax", 5)
    assert result.exit_code == 0
    assert json.loads(result.stdout)["saddle_index"] == -1


def test_paths_csv(tmp_path):
    result = invoke("paths", "--z", "2", "--max-len", 5, "--out", tmp_path)
    assert result.exit_code == 0
    header = result.stdout.splitlines()[0]
    assert header == "saddle,branch_label,xi,eta,re_psi"
    assert (tmp_path / "paths.csv").exists()


def test_paths_default_saddles():
    result = invoke("paths", "--z", "3/4", "--max-len", 2, "--format", "json")
    saddles = {row["saddle"] for row in json.loads(result.stdout)}
    assert saddles == {0, -1}


def test_paths_text_summary():
    result = invoke("paths", "--z", "2", "--max-len", 5, "--format", "text")
    assert result.exit_code == 0
    assert "Im psi drift" in result.stdout
    assert "descent+" in result.stdout


def test_table_bad_id():
    assert invoke("table", "--id", 7).exit_code == 2


@pytest.mark.slow
def test_table3(tmp_path):
    result = invoke("table", "--id", 3, "--out", tmp_path)
    assert result.exit_code == 0
    rows = json.loads(result.stdout)["rows"]
    assert rows[0]["printed_re"] == "-1.0029378942e-1"
    assert (tmp_path / "table3.json").exists()


@pytest.mark.slow
def test_check_exact():
    result = invoke("check", "--suite", "exact")
    assert result.exit_code == 0
    report = json.loads(result.stdout)
    assert report["failed"] == 0
    assert report["passed"] == report["total"]


def test_probe_outside_region():
    result = invoke("probe", "--n", 10, "--z", "6/5,1/4")
    assert result.exit_code == 3
