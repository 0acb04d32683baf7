"""
results.py

Machine-readable renderings of library results. Numbers leave the process as decimal strings so that output is
byte-identical between runs.
"""
from fractions import Fraction
from typing import Optional

from app.core.utils.helpers import complex_parts, rational_decimal, sci
from app.models.asymptotic import AsymptoticResult, StokesProbe
from app.models.rational import ComplexRational
from app.models.saddle import CoefficientSet
from app.schemas.base import BaseSchema, ComplexOut


class RationalOut(BaseSchema):
    numerator: str
    denominator: str
    decimal: str

    @classmethod
    def from_fraction(cls, value: Fraction, digits: int = 30) -> "RationalOut":
        return cls(numerator=str(value.numerator), denominator=str(value.denominator),
                   decimal=rational_decimal(value, digits))


class ExactValueOut(BaseSchema):
    n: int
    z: str
    value: str
    re: RationalOut
    im: RationalOut

    @classmethod
    def build(cls, n: int, z: ComplexRational, value: ComplexRational, digits: int = 30) -> "ExactValueOut":
        return cls(n=n, z=str(z), value=str(value), re=RationalOut.from_fraction(value.re, digits),
                   im=RationalOut.from_fraction(value.im, digits))


class PolynomialOut(BaseSchema):
    n: int
    kind: str
    coefficients: list[str]
    text: str


class CoefficientEntry(BaseSchema):
    k: int
    re: str
    im: str

    @classmethod
    def from_mp(cls, k: int, value, digits: int = 30) -> "CoefficientEntry":
        re, im = complex_parts(value, digits)
        return cls(k=k, re=re, im=im)


class CoefficientOut(BaseSchema):
    z: str
    saddle_index: int
    saddle: ComplexOut
    coefficients: list[CoefficientEntry]
    closed_form_deltas: dict[str, str] = {}

    @classmethod
    def from_set(cls, z: str, coefficients: CoefficientSet, digits: int = 30) -> "CoefficientOut":
        return cls(z=z, saddle_index=coefficients.saddle.k_index,
                   saddle=ComplexOut.from_mp(coefficients.saddle.s, digits),
                   coefficients=[CoefficientEntry.from_mp(k, a, digits) for k, a in enumerate(coefficients.values)],
                   closed_form_deltas={str(k): sci(v, 3) for k, v in coefficients.closed_form_deltas.items()})


class TermOut(BaseSchema):
    k: int
    term: ComplexOut
    magnitude: str


class AsymptoticOut(BaseSchema):
    n: int
    z: ComplexOut
    regime: str
    value: ComplexOut
    prefactor: ComplexOut
    truncation_k: int
    terms: list[TermOut]
    error_estimate: str
    subdominant: Optional[ComplexOut] = None
    warnings: list[str] = []
    relative_errors: Optional[list[str]] = None

    @classmethod
    def from_result(cls, result: AsymptoticResult, relative_errors: list | None = None,
                    digits: int = 30) -> "AsymptoticOut":
        magnitudes = result.term_magnitudes()
        terms = [TermOut(k=k, term=ComplexOut.from_mp(t, digits), magnitude=sci(magnitudes[k]))
                 for k, t in enumerate(result.terms)]
        sub = ComplexOut.from_mp(result.subdominant.value, digits) if result.subdominant is not None else None
        return cls(n=result.n, z=ComplexOut.from_mp(result.z, digits), regime=result.regime_label,
                   value=ComplexOut.from_mp(result.value, digits),
                   prefactor=ComplexOut.from_mp(result.prefactor, digits), truncation_k=result.truncation_k,
                   terms=terms, error_estimate=sci(result.error_estimate), subdominant=sub,
                   warnings=list(result.warnings),
                   relative_errors=[sci(e) for e in relative_errors] if relative_errors is not None else None)


class ProbeOut(BaseSchema):
    n: int
    z: ComplexOut
    exact_minus_S0: ComplexOut
    S1: ComplexOut
    optimal_k: int
    minimum_found: bool
    ratio: str
    forced: bool

    @classmethod
    def from_probe(cls, probe: StokesProbe, digits: int = 12) -> "ProbeOut":
        return cls(n=probe.n, z=ComplexOut.from_mp(probe.z, digits),
                   exact_minus_S0=ComplexOut.from_mp(probe.exact_minus_S0, digits),
                   S1=ComplexOut.from_mp(probe.S1_value, digits), optimal_k=probe.optimal_k,
                   minimum_found=probe.minimum_found, ratio=sci(probe.ratio, 6), forced=probe.forced)


class CheckOut(BaseSchema):
    suite: str
    name: str
    passed: bool
    detail: str = ""
    # set when the printed value is a known misprint; such checks are reported, never failed on
    erratum: str = ""


class CheckReport(BaseSchema):
    suite: str
    total: int
    passed: int
    failed: int
    errata: int = 0
    checks: list[CheckOut]

    @classmethod
    def from_checks(cls, suite: str, checks: list[CheckOut]) -> "CheckReport":
        passed = sum(1 for c in checks if c.passed)
        return cls(suite=suite, total=len(checks), passed=passed, failed=len(checks) - passed,
                   errata=sum(1 for c in checks if c.erratum), checks=checks)

    @property
    def ok(self) -> bool:
        return self.failed == 0


class TableOut(BaseSchema):
    id: int
    caption: str
    headers: list[str]
    rows: list[dict[str, str]]

    def to_rows(self) -> list[tuple]:
        return [tuple(row.get(h, "") for h in self.headers) for row in self.rows]
