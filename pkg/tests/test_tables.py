from fractions import Fraction

import pytest

from app.config import PrecisionConfig
from app.core.utils.enums import CheckSuite
from app.models.rational import ComplexRational
from app.services.asymp import AsymptoticService
from app.services.checks import CheckService
from app.services.tables import HEADERS, TableService, load_published_values

pytestmark = pytest.mark.slow

# x: (exact - S0, S1) at n = 10, Im z = 1/4
TABLE4 = {
    "3/5": (complex(0.012028, 0.023460), complex(0.012023, 0.023457)),
    "4/5": (complex(-0.084193, -0.037509), complex(-0.085971, -0.037707)),
    "9/10": (complex(-0.089839, 0.302192), complex(-0.099150, 0.254323)),
    "11/10": (complex(-0.206433, -0.333096), complex(3.281489, -1.068820)),
    "6/5": (complex(0.053277, 0.082496), complex(6.231262, -9.956311)),
    "7/5": (complex(-0.018778, 0.014669), complex(-32.37578, -94.11127)),
}
BELOW_STOKES_LINE = ["3/5", "4/5", "9/10"]


def table4_row(x, config):
    z = ComplexRational(Fraction(x), Fraction(1, 4))
    return AsymptoticService.stokes_probe(10, z, config, force=z.re > 1)


def as_complex(value):
    return complex(float(value.real), float(value.imag))


def test_published_values_are_strings():
    published = load_published_values()
    assert all(isinstance(v, str) for column in published["table1"]["columns"] for v in column["values"])
    assert len(published["table3"]["rows"]) == 10


@pytest.mark.parametrize("x", BELOW_STOKES_LINE)
def test_subdominant_sum_matches_printed(config, x):
    result = table4_row(x, config)
    assert abs(as_complex(result.S1_value) - TABLE4[x][1]) <= 1e-4


@pytest.mark.parametrize("x,k", [("3/5", 10), ("4/5", 10), ("9/10", 11), ("11/10", 12)])
def test_truncation_index_per_row(config, x, k):
    assert table4_row(x, config).optimal_k == k


@pytest.mark.parametrize("x", sorted(TABLE4))
def test_difference_matches_printed(config, x):
    result = table4_row(x, config)
    assert abs(as_complex(result.exact_minus_S0) - TABLE4[x][0]) <= 1e-4


def test_subdominant_sum_explains_difference_at_three_fifths(config):
    assert abs(float(table4_row("3/5", config).ratio) - 1) < 0.01


@pytest.mark.parametrize("x,bound", [("11/10", 5), ("6/5", 10), ("7/5", 10)])
def test_subdominant_sum_absent_beyond_stokes_line(config, x, bound):
    result = table4_row(x, config)
    assert result.forced
    assert result.ratio > bound


@pytest.mark.parametrize("table_id", [1, 2, 3, 4])
def test_tables_have_declared_columns(config, table_id):
    table = TableService.build(table_id, config, jobs=1)
    assert table.headers == list(HEADERS[table_id])
    assert all(set(row) == set(table.headers) for row in table.rows)


def test_table1_cells(config):
    table = TableService.build(1, config, jobs=1)
    assert len(table.rows) == 20
    first = table.rows[0]
    assert (first["z"], first["k"], first["printed"]) == ("2", "0", "4.193e-3")
    assert float(first["discrepancy"]) < 5e-3


def test_table3_marks_errata(config):
    rows = {row["k"]: row for row in TableService.build(3, config, jobs=1).rows}
    assert rows["10"]["erratum"] and not rows["10"]["corrected_re"]
    assert float(rows["10"]["discrepancy"]) > 1e-3
    assert (rows["6"]["printed_re"], rows["6"]["corrected_re"]) == ("3.2408350155e-3", "3.2408350155e-6")
    assert rows["6"]["computed_re"] == "3.2408350155e-6"
    assert rows["9"]["corrected_im"] == "-3.2178913877e-10"
    assert all(not rows[k]["erratum"] for k in ("1", "2", "3", "4", "5", "7", "8"))
    assert float(rows["1"]["discrepancy"]) < 1e-10


def test_table2_marks_errata_beside_printed(config):
    rows = {(row["n"], row["x"], row["k"]): row for row in TableService.build(2, config, jobs=1).rows}
    misprint = rows[("40", "1/2", "3")]
    assert (misprint["printed"], misprint["corrected"]) == ("3.094e-9", "2.094e-9")
    assert float(misprint["discrepancy"]) < 1e-3
    leading = rows[("20", "1/2", "0")]
    assert leading["erratum"] and not leading["corrected"]
    assert leading["printed"] == "7.719e-3" and leading["computed"].startswith("7.778")
    assert sum(1 for row in rows.values() if row["erratum"]) == 6


def test_tables_suite_reports_errata_without_failing(config):
    report = CheckService.run(CheckSuite.TABLES, config, jobs=1)
    flagged = {c.name for c in report.checks if c.erratum}
    assert report.errata == len(flagged) == 9
    assert "table2[n=40, x=3/4, k=3]" in flagged and "table3[k=10]" in flagged
    assert report.ok


def test_table_written_as_csv_and_json(config, tmp_path):
    table = TableService.build(3, config, jobs=1)
    paths = TableService.write(table, str(tmp_path))
    assert [p.rsplit(".", 1)[1] for p in paths] == ["csv", "json"]
    header = (tmp_path / "table3.csv").read_text().splitlines()[0]
    assert header == ",".join(HEADERS[3])


def test_parallel_and_inline_agree(config):
    assert TableService.build(2, config, jobs=2) == TableService.build(2, config, jobs=1)


@pytest.mark.parametrize("suite", [CheckSuite.COEFFS, CheckSuite.STOKES, CheckSuite.TABLES])
def test_check_suites_pass(suite):
    report = CheckService.run(suite, PrecisionConfig(dps=60), jobs=1)
    assert report.ok, [c for c in report.checks if not c.passed]
    assert report.total == report.passed > 0


def test_exact_suite_passes():
    report = CheckService.run(CheckSuite.EXACT, jobs=1)
    assert report.ok
    assert report.failed == 0
