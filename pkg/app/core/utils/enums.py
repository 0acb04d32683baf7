from enum import Enum


class ApplicationErrors(Enum):
    # Series algebra
    SERIES_ZERO_CONSTANT = ("SERIES.ZERO_CONSTANT", "Series division needs a nonzero constant term.")
    SERIES_NONZERO_CONSTANT = ("SERIES.NONZERO_CONSTANT", "Composition needs an inner series with zero constant term.")
    SERIES_ZERO_LINEAR = ("SERIES.ZERO_LINEAR", "Series reversion needs a nonzero linear term.")
    SERIES_AMBIGUOUS_BRANCH = ("SERIES.AMBIGUOUS_BRANCH", "Both square roots are equidistant from the branch target.")
    SERIES_PRECISION = ("SERIES.PRECISION", "A coefficient that must vanish exceeds the working tolerance.")

    # Saddle geometry
    SADDLE_POLE_ARGUMENT = ("SADDLE.POLE_ARGUMENT", "The argument z must differ from 0 and 1.")
    SADDLE_DEGENERATE = ("SADDLE.DEGENERATE", "The second derivative of the phase vanishes at the saddle.")

    # Regimes
    REGIME_VIOLATION = ("REGIME.VIOLATION", "The expansion is not valid for this argument.")
    REGIME_EXCLUSION_BAND = ("REGIME.EXCLUSION_BAND", "The argument lies too close to the segment [0, 1].")

    # Path tracer
    PATH_CORRECTION_DIVERGED = ("PATH.CORRECTION_DIVERGED", "Newton correction failed on three consecutive steps.")

    # Input
    INPUT_PARSE = ("INPUT.PARSE", "The input could not be parsed as an exact rational.")

    def __new__(cls, code, message):
        obj = object.__new__(cls)
        obj._value_ = code
        obj.message = message
        return obj


class Regime(Enum):
    """ Regimes of the asymptotic dispatcher, named after the part of the z-plane they cover """

    REAL_GREATER_ONE = "RealGreaterOne"
    REAL_UNIT_INTERVAL = "RealUnitInterval"
    REAL_HALF = "RealHalf"
    COMPLEX_WITH_S1 = "ComplexWithS1"
    COMPLEX_S0_ONLY = "ComplexS0Only"
    STOKES_LINE = "StokesLine"


class BranchLabel(Enum):
    DESCENT_PLUS = "descent+"
    DESCENT_MINUS = "descent-"
    ASCENT_PLUS = "ascent+"
    ASCENT_MINUS = "ascent-"

    @property
    def is_descent(self) -> bool:
        return self in (BranchLabel.DESCENT_PLUS, BranchLabel.DESCENT_MINUS)


class Termination(Enum):
    """ Why a traced branch stopped """
    MAX_LEN = "max_len"
    BLOWUP = "blowup"
    POLE = "pole"
    SADDLE = "saddle"


class OutputFormat(Enum):
    JSON = "json"
    CSV = "csv"
    TEXT = "text"


class PolynomialKind(Enum):
    NORLUND = "norlund"
    SECOND = "second"


class CheckSuite(Enum):
    ALL = "all"
    EXACT = "exact"
    COEFFS = "coeffs"
    TABLES = "tables"
    STOKES = "stokes"
