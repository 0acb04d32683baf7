"""
commands.py

Command-line front end. Each command parses its flags into a RunConfig, calls one library operation and renders
the result; errors are reported on stderr and mapped to the exit codes in app.core.utils.errors.
"""
import logging
from contextlib import contextmanager
from typing import Annotated, Optional

import typer
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from app.config import settings
from app.core.utils.enums import CheckSuite, OutputFormat, PolynomialKind, Regime
from app.core.utils.errors import EXIT_CHECK_FAILED, EXIT_USAGE, ExclusionBand, NorlundError
from app.core.utils.helpers import compact_sci, sci
from app.core.utils.logger import setup_logging, stderr_console
from app.core.utils.reporting import ReportGen
from app.models.paths import PATH_HEADERS
from app.models.rational import ComplexRational
from app.schemas.base import BaseSchema
from app.schemas.results import AsymptoticOut, CoefficientOut, ExactValueOut, PolynomialOut, ProbeOut
from app.schemas.run import RunConfig
from app.services.asymp import AsymptoticService
from app.services.checks import CheckService
from app.services.descent import PathTracer
from app.services.ratcore import NorlundExact
from app.services.saddle import SaddleEngine
from app.services.tables import TableService

logger = logging.getLogger(__name__)

app = typer.Typer(name="norlund", help=settings.APP_NAME, add_completion=False, no_args_is_help=True)

# shared options
Prec = Annotated[int, typer.Option("--prec", help="Working precision in decimal digits (>= 30)")]
Eps = Annotated[float, typer.Option("--eps", help="Exclusion band around [0, 1]")]
Format = Annotated[OutputFormat, typer.Option("--format", help="Output format")]
Jobs = Annotated[Optional[int], typer.Option("--jobs", help="Worker processes (default: number of CPUs)")]
Out = Annotated[Optional[str], typer.Option("--out", help="Output file (directory for table and paths)")]
Verbose = Annotated[bool, typer.Option("--verbose", "-v", help="Debug logging on stderr")]
ZArg = Annotated[str, typer.Option("--z", help="Argument as re[,im], each part an exact rational such as 2/3")]


def report(label: str, message: str, style: str = "bold red") -> None:
    stderr_console.print(f"[{style}]{label}[/]: {escape(message)}", soft_wrap=True)


@contextmanager
def handle_errors():
    """ Render library errors on stderr and exit with the matching code """
    try:
        yield
    except ExclusionBand as e:
        report(e.code, f"{e.detail} (distance to [0, 1] = {e.distance:.6g})")
        raise typer.Exit(e.exit_code)
    except NorlundError as e:
        report(e.code, e.detail)
        raise typer.Exit(e.exit_code)
    except ValueError as e:
        report("usage", str(e))
        raise typer.Exit(EXIT_USAGE)


def make_run(prec: int, eps: float, fmt: OutputFormat, jobs: int | None, out: str | None,
             verbose: bool) -> RunConfig:
    setup_logging("DEBUG" if verbose else None)
    try:
        return RunConfig(precision=prec, exclusion_eps=eps, format=fmt, jobs=jobs, out=out)
    except ValueError as e:
        report("usage", str(e))
        raise typer.Exit(EXIT_USAGE)


def emit(run: RunConfig, text: str) -> None:
    if run.out:
        with open(run.out, "w") as f:
            f.write(text if text.endswith("\n") else text + "\n")
    else:
        typer.echo(text)


def emit_model(run: RunConfig, model: BaseSchema, headers=None, rows=(), table: Table | None = None) -> None:
    if run.format is OutputFormat.JSON:
        emit(run, model.model_dump_json(indent=2))
    elif run.format is OutputFormat.CSV and headers:
        emit(run, ReportGen.render("csv", headers, *rows))
    elif table is not None:
        emit(run, _capture(table))
    else:
        emit(run, model.model_dump_json(indent=2))


def text_table(title: str, headers, rows) -> Table:
    table = Table(title=title)
    for h in headers:
        table.add_column(str(h))
    for row in rows:
        table.add_row(*[str(v) for v in row])
    return table


@app.command()
def exact(n: Annotated[int, typer.Option("--n")], z: ZArg, prec: Prec = settings.PRECISION,
          eps: Eps = settings.EXCLUSION_EPS, fmt: Format = OutputFormat.JSON, jobs: Jobs = None, out: Out = None,
          verbose: Verbose = False):
    """ Exact value of B_n^(n)(nz) """
    run = make_run(prec, eps, fmt, jobs, out, verbose)
    with handle_errors():
        if n < 0:
            raise ValueError("--n must be non-negative")
        zc = ComplexRational.parse(z)
        result = ExactValueOut.build(n, zc, NorlundExact.eval_exact(n, zc), digits=run.precision)
    if run.format is OutputFormat.TEXT:
        emit(run, f"{result.value}\n{result.re.decimal}" + (f" + {result.im.decimal} i" if zc.im else ""))
        return
    headers = ("n", "z", "re_numerator", "re_denominator", "im_numerator", "im_denominator", "re", "im")
    row = (n, result.z, result.re.numerator, result.re.denominator, result.im.numerator, result.im.denominator,
           result.re.decimal, result.im.decimal)
    emit_model(run, result, headers, [row])


@app.command()
def poly(n: Annotated[int, typer.Option("--n")],
         kind: Annotated[PolynomialKind, typer.Option("--kind")] = PolynomialKind.NORLUND,
         fmt: Format = OutputFormat.JSON, out: Out = None, verbose: Verbose = False):
    """ Exact coefficients of B_n^(n)(z) or of b_n(z) """
    run = make_run(settings.PRECISION, settings.EXCLUSION_EPS, fmt, None, out, verbose)
    with handle_errors():
        if n < 0:
            raise ValueError("--n must be non-negative")
        builder = NorlundExact.norlund_polynomial if kind is PolynomialKind.NORLUND else \
            NorlundExact.second_kind_polynomial
        polynomial = builder(n)
    result = PolynomialOut(n=n, kind=kind.value, coefficients=[str(c) for c in polynomial.coefficients],
                           text=str(polynomial))
    if run.format is OutputFormat.TEXT:
        emit(run, result.text)
        return
    emit_model(run, result, ("power", "coefficient"), list(enumerate(result.coefficients)))


@app.command()
def asym(n: Annotated[int, typer.Option("--n")], z: ZArg, K: Annotated[int, typer.Option("--K")] = 3,
         compare_exact: Annotated[bool, typer.Option("--compare-exact")] = False,
         force_regime: Annotated[Optional[Regime], typer.Option("--force-regime")] = None,
         prec: Prec = settings.PRECISION, eps: Eps = settings.EXCLUSION_EPS, fmt: Format = OutputFormat.JSON,
         jobs: Jobs = None, out: Out = None, verbose: Verbose = False):
    """ Large-n expansion of B_n^(n)(nz) in the regime of z """
    run = make_run(prec, eps, fmt, jobs, out, verbose)
    with handle_errors():
        zc = ComplexRational.parse(z)
        config = run.precision_config
        result = AsymptoticService.dispatch(n, zc, K, config, regime_override=force_regime)
        errors = None
        if compare_exact:
            errors = AsymptoticService.relative_errors(result, NorlundExact.eval_exact(n, zc), config)
    for warning in result.warnings:
        report("warning", warning, style="yellow")

    rendered = AsymptoticOut.from_result(result, errors)
    headers = ("k", "term_re", "term_im", "magnitude") + (("relative_error",) if errors else ())
    rows = [(t.k, t.term.re, t.term.im, t.magnitude) + ((rendered.relative_errors[t.k],) if errors else ())
            for t in rendered.terms]
    text_rows = [(k, compact_sci(m)) + ((compact_sci(errors[k]),) if errors else ())
                 for k, m in enumerate(result.term_magnitudes()[:K + 1])]
    title = f"{rendered.regime}: value {rendered.value.re} + {rendered.value.im} i, " \
            f"error estimate {compact_sci(result.error_estimate)}"
    table = text_table(title, ("k", "|term|") + (("relative error",) if errors else ()), text_rows)
    emit_model(run, rendered, headers, rows, table)


@app.command()
def coeffs(z: ZArg, saddle: Annotated[int, typer.Option("--saddle")] = 0,
           kmax: Annotated[int, typer.Option("--kmax")] = 10, prec: Prec = settings.PRECISION,
           eps: Eps = settings.EXCLUSION_EPS, fmt: Format = OutputFormat.JSON, jobs: Jobs = None, out: Out = None,
           verbose: Verbose = False):
    """ Expansion coefficients A_0..A_kmax at the saddle s_k """
    run = make_run(prec, eps, fmt, jobs, out, verbose)
    with handle_errors():
        config = run.precision_config
        sctx = SaddleEngine.make_context(ComplexRational.parse(z), saddle, config)
        coefficients = SaddleEngine.expansion_coefficients(sctx, kmax, config)
    rendered = CoefficientOut.from_set(z, coefficients, digits=run.precision)
    rows = [(c.k, c.re, c.im) for c in rendered.coefficients]
    table = text_table(f"A_k at s_{saddle}, z = {z}", ("k", "re", "im"),
                       [(k, sci(a.real, 11), sci(a.imag, 11)) for k, a in enumerate(coefficients.values)])
    emit_model(run, rendered, ("k", "re", "im"), rows, table)


@app.command()
def table(table_id: Annotated[int, typer.Option("--id", min=1, max=4)], prec: Prec = settings.PRECISION,
          fmt: Format = OutputFormat.JSON, jobs: Jobs = None, out: Out = None, verbose: Verbose = False):
    """ Regenerate one of the published tables next to its printed values """
    run = make_run(prec, settings.EXCLUSION_EPS, fmt, jobs, None, verbose)
    with handle_errors():
        result = TableService.build(table_id, run.precision_config, run.jobs)
    if out:
        TableService.write(result, out)
    emit_model(run, result, result.headers, result.to_rows(), text_table(result.caption, result.headers,
                                                                          result.to_rows()))


def default_saddles(zc: ComplexRational) -> list[int]:
    """ Saddles shown by default: the real pair for 0 < x < 1, s_0 and s_1 up to the Stokes line, else s_0 """
    if zc.is_real and 0 < zc.re < 1:
        return [0, -1]
    if zc.im > 0 and zc.re <= 1:
        return [0, 1]
    return [0]


@app.command()
def paths(z: ZArg, saddle: Annotated[Optional[list[int]], typer.Option("--saddle")] = None,
          step: Annotated[float, typer.Option("--step")] = settings.PATH_STEP,
          max_len: Annotated[float, typer.Option("--max-len")] = settings.PATH_MAX_LEN,
          fmt: Format = OutputFormat.CSV, out: Out = None, verbose: Verbose = False):
    """ Steepest descent and ascent branches through the saddles of psi """
    run = make_run(settings.PRECISION, settings.EXCLUSION_EPS, fmt, None, None, verbose)
    with handle_errors():
        zc = ComplexRational.parse(z)
        polylines = [line for k in (saddle or default_saddles(zc))
                     for line in PathTracer.trace_paths(zc, k, step=step, max_len=max_len)]
    headers = ("saddle",) + PATH_HEADERS
    rows = [(line.saddle.k_index,) + row for line in polylines for row in line.to_rows()]
    if out:
        ReportGen(settings, report_dir=out).download_csv("paths", headers, *rows)
    if run.format is OutputFormat.TEXT:
        summary = [(line.saddle.k_index, line.direction_label.value, line.termination.value, len(line.points),
                    f"{line.arc_length:.3f}", f"{line.im_psi_spread():.1e}") for line in polylines]
        emit(run, _capture(text_table(f"paths for z = {z}", ("saddle", "branch", "stop", "points", "length",
                                                             "Im psi drift"), summary)))
        return
    emit(run, ReportGen.render(run.format.value, headers, *rows))


@app.command()
def check(suite: Annotated[CheckSuite, typer.Option("--suite")] = CheckSuite.ALL, prec: Prec = settings.PRECISION,
          jobs: Jobs = None, out: Out = None, verbose: Verbose = False):
    """ Run an invariant suite; exits 1 when any check fails """
    run = make_run(prec, settings.EXCLUSION_EPS, OutputFormat.JSON, jobs, out, verbose)
    with handle_errors():
        outcome = CheckService.run(suite, run.precision_config, run.jobs)
    for c in outcome.checks:
        if c.erratum:
            report("erratum", f"{c.name}: {c.erratum}", style="yellow")
    emit(run, outcome.model_dump_json(indent=2))
    if not outcome.ok:
        raise typer.Exit(EXIT_CHECK_FAILED)


@app.command()
def probe(n: Annotated[int, typer.Option("--n")], z: ZArg,
          kmax: Annotated[int, typer.Option("--kmax")] = settings.STOKES_KMAX,
          force: Annotated[bool, typer.Option("--force")] = False, prec: Prec = settings.PRECISION,
          out: Out = None, verbose: Verbose = False):
    """ exact - S0 (optimally truncated) against the subdominant sum S1 """
    run = make_run(prec, settings.EXCLUSION_EPS, OutputFormat.JSON, None, out, verbose)
    with handle_errors():
        result = AsymptoticService.stokes_probe(n, ComplexRational.parse(z), run.precision_config, k_max=kmax,
                                                force=force)
    emit(run, ProbeOut.from_probe(result).model_dump_json(indent=2))


def _capture(renderable) -> str:
    console = Console(width=160)
    with console.capture() as capture:
        console.print(renderable)
    return capture.get()


def main():
    app()
