"""
tables.py

Regenerates the four published tables from scratch and lays computed values next to the printed ones.

Cells are independent, so columns (or rows) are farmed out to a process pool. Workers are module-level functions
taking a single tuple argument and returning plain strings; `executor.map` keeps the input order.
"""
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from pathlib import Path

import mpmath
import yaml

from app.config import PrecisionConfig, settings
from app.core.utils.helpers import sci
from app.core.utils.reporting import ReportGen
from app.models.rational import ComplexRational
from app.schemas.results import TableOut
from app.services.asymp import AsymptoticService
from app.services.ratcore import NorlundExact
from app.services.saddle import SaddleEngine

logger = logging.getLogger(__name__)

PUBLISHED_VALUES = Path(__file__).resolve().parent.parent / "data" / "published_values.yaml"

HEADERS = {
    1: ("z", "k", "computed", "printed", "discrepancy"),
    2: ("n", "x", "k", "computed", "printed", "corrected", "discrepancy", "erratum"),
    3: ("k", "computed_re", "computed_im", "printed_re", "printed_im", "corrected_re", "corrected_im", "discrepancy",
        "erratum"),
    4: ("x", "optimal_k", "difference_re", "difference_im", "S1_re", "S1_im", "ratio",
        "printed_difference_re", "printed_difference_im", "printed_S1_re", "printed_S1_im"),
}


@lru_cache
def load_published_values() -> dict:
    with open(PUBLISHED_VALUES) as f:
        return yaml.safe_load(f)


def relative_discrepancy(computed: str, printed: str) -> str:
    a, b = mpmath.mpf(computed), mpmath.mpf(printed)
    return sci(abs(a - b) / abs(b), 3)


def table2_errata(published: dict) -> dict[tuple[int, str, int], dict]:
    """ (n, x, k) -> erratum entry of the printed relative-error table """
    return {(e["n"], e["x"], e["k"]): e for e in published.get("errata", [])}


# workers


def _relative_error_column(task: tuple) -> list[str]:
    method, n, z_text, K, dps = task
    config = PrecisionConfig(dps=dps)
    z = ComplexRational.parse(z_text)
    evaluate = AsymptoticService.S0 if method == "S0" else AsymptoticService.dispatch
    result = evaluate(n, z, K, config)
    errors = AsymptoticService.relative_errors(result, NorlundExact.eval_exact(n, z), config)
    return [sci(e) for e in errors]


def _stokes_row(task: tuple) -> dict[str, str]:
    n, z_text, k_max, dps = task
    config = PrecisionConfig(dps=dps)
    z = ComplexRational.parse(z_text)
    probe = AsymptoticService.stokes_probe(n, z, config, k_max=k_max, force=z.re >= 1)
    return dict(optimal_k=str(probe.optimal_k),
                difference_re=sci(probe.exact_minus_S0.real), difference_im=sci(probe.exact_minus_S0.imag),
                S1_re=sci(probe.S1_value.real), S1_im=sci(probe.S1_value.imag), ratio=sci(probe.ratio, 6))


def run_tasks(worker, tasks: list, jobs: int | None = None) -> list:
    jobs = jobs or settings.JOBS or os.cpu_count() or 1
    if jobs == 1 or len(tasks) == 1:
        return [worker(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as executor:
        return list(executor.map(worker, tasks))


class TableService:

    @classmethod
    def build(cls, table_id: int, config: PrecisionConfig | None = None, jobs: int | None = None) -> TableOut:
        builders = {1: cls.table1, 2: cls.table2, 3: cls.table3, 4: cls.table4}
        if table_id not in builders:
            raise ValueError(f"unknown table {table_id}; choose one of {sorted(builders)}")
        return builders[table_id](config or PrecisionConfig(), jobs)

    @classmethod
    def table1(cls, config: PrecisionConfig, jobs: int | None = None) -> TableOut:
        published = load_published_values()["table1"]
        K = max(published["k"])
        tasks = [("S0", published["n"], column["z"], K, config.dps) for column in published["columns"]]
        computed = run_tasks(_relative_error_column, tasks, jobs)

        rows = []
        for column, errors in zip(published["columns"], computed):
            for k, printed in zip(published["k"], column["values"]):
                rows.append(dict(z=column["z"], k=str(k), computed=errors[k], printed=printed,
                                 discrepancy=relative_discrepancy(errors[k], printed)))
        return TableOut(id=1, caption=published["caption"], headers=list(HEADERS[1]), rows=rows)

    @classmethod
    def table2(cls, config: PrecisionConfig, jobs: int | None = None) -> TableOut:
        published = load_published_values()["table2"]
        K = max(published["k"])
        tasks = [("dispatch", column["n"], column["x"], K, config.dps) for column in published["columns"]]
        computed = run_tasks(_relative_error_column, tasks, jobs)
        errata = table2_errata(published)

        rows = []
        for column, errors in zip(published["columns"], computed):
            for k, printed in zip(published["k"], column["values"]):
                erratum = errata.get((column["n"], column["x"], k), {})
                corrected = erratum.get("corrected", "")
                rows.append(dict(n=str(column["n"]), x=column["x"], k=str(k), computed=errors[k], printed=printed,
                                 corrected=corrected, discrepancy=relative_discrepancy(errors[k], corrected or printed),
                                 erratum=erratum.get("note", "")))
        return TableOut(id=2, caption=published["caption"], headers=list(HEADERS[2]), rows=rows)

    @classmethod
    def table3(cls, config: PrecisionConfig, jobs: int | None = None) -> TableOut:
        published = load_published_values()["table3"]
        ctx = config.context
        sctx = SaddleEngine.make_context(ComplexRational.parse(published["z"]), 0, config)
        K = max(row["k"] for row in published["rows"])
        values = SaddleEngine.expansion_coefficients(sctx, K, config).values

        rows = []
        for row in published["rows"]:
            a = values[row["k"]]
            erratum = row.get("erratum", {})
            corrected = {part: "" for part in ("re", "im")}
            if erratum.get("part") in corrected and "corrected" in erratum:
                corrected[erratum["part"]] = erratum["corrected"]
            reference = ctx.mpc(ctx.mpf(corrected["re"] or row["re"]), ctx.mpf(corrected["im"] or row["im"]))
            rows.append(dict(k=str(row["k"]), computed_re=sci(a.real, 11), computed_im=sci(a.imag, 11),
                             printed_re=row["re"], printed_im=row["im"], corrected_re=corrected["re"],
                             corrected_im=corrected["im"], discrepancy=sci(abs(a - reference) / abs(reference), 3),
                             erratum=erratum.get("note", "")))
        return TableOut(id=3, caption=published["caption"], headers=list(HEADERS[3]), rows=rows)

    @classmethod
    def table4(cls, config: PrecisionConfig, jobs: int | None = None) -> TableOut:
        published = load_published_values()["table4"]
        tasks = [(published["n"], f"{row['x']},{published['y']}", settings.STOKES_KMAX, config.dps)
                 for row in published["rows"]]
        computed = run_tasks(_stokes_row, tasks, jobs)

        rows = []
        for row, cells in zip(published["rows"], computed):
            rows.append(dict(x=row["x"], **cells,
                             printed_difference_re=row["difference"][0], printed_difference_im=row["difference"][1],
                             printed_S1_re=row["subdominant"][0], printed_S1_im=row["subdominant"][1]))
        return TableOut(id=4, caption=published["caption"], headers=list(HEADERS[4]), rows=rows)

    @classmethod
    def write(cls, table: TableOut, out_dir: str | None = None) -> list[str]:
        """ table<id>.csv and table<id>.json in `out_dir` (default: the reports directory) """
        report = ReportGen(settings, report_dir=out_dir)
        name = f"table{table.id}"
        rows = table.to_rows()
        report.download_csv(name, table.headers, *rows)
        report.download_json(name, table.headers, *rows)
        logger.info("table %d written to %s", table.id, report.report_dir)
        return [os.path.join(report.report_dir, f"{name}.{ext}") for ext in ("csv", "json")]
