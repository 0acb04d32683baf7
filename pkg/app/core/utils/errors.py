"""
errors.py

Exception hierarchy for the library. Every error carries its `ApplicationErrors` member (code + message), a detail
string, optional structured context and the exit code the command line maps it to.
"""
from typing import Any

from app.core.utils.enums import ApplicationErrors

EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3


class NorlundError(Exception):
    error: ApplicationErrors = ApplicationErrors.REGIME_VIOLATION
    exit_code: int = EXIT_DOMAIN

    def __init__(self, detail: str | None = None, **context: Any):
        self.detail = detail or self.error.message
        self.context = context
        super().__init__(self.detail)

    @property
    def code(self) -> str:
        return self.error.value


# Series algebra
class SeriesError(NorlundError):
    exit_code = EXIT_DOMAIN


class ZeroConstantTerm(SeriesError):
    error = ApplicationErrors.SERIES_ZERO_CONSTANT


class NonzeroConstantTerm(SeriesError):
    error = ApplicationErrors.SERIES_NONZERO_CONSTANT


class ZeroLinearTerm(SeriesError):
    error = ApplicationErrors.SERIES_ZERO_LINEAR


class AmbiguousBranch(SeriesError):
    error = ApplicationErrors.SERIES_AMBIGUOUS_BRANCH


class PrecisionFailure(SeriesError):
    error = ApplicationErrors.SERIES_PRECISION


# Saddle geometry
class PoleArgument(NorlundError):
    error = ApplicationErrors.SADDLE_POLE_ARGUMENT


class DegenerateSaddle(NorlundError):
    error = ApplicationErrors.SADDLE_DEGENERATE


# Regimes
class RegimeViolation(NorlundError):
    error = ApplicationErrors.REGIME_VIOLATION


class ExclusionBand(RegimeViolation):
    error = ApplicationErrors.REGIME_EXCLUSION_BAND

    def __init__(self, detail: str | None = None, distance: float | None = None, **context: Any):
        self.distance = distance
        super().__init__(detail, distance=distance, **context)


# Tracer
class CorrectionDiverged(NorlundError):
    error = ApplicationErrors.PATH_CORRECTION_DIVERGED


# Input
class InputParseError(NorlundError):
    error = ApplicationErrors.INPUT_PARSE
    exit_code = EXIT_USAGE

    def __init__(self, detail: str | None = None, text: str = "", position: int = 0, **context: Any):
        self.text = text
        self.position = position
        super().__init__(detail, text=text, position=position, **context)
