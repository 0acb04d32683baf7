from fractions import Fraction
from typing import Any

import mpmath

from app.config import working_context


def sci(value: Any, digits: int = 12) -> str:
    """
    Plain scientific rendering with a fixed number of significant digits, e.g. ``4.19312345678e-3``.
    Used for CSV/JSON so that output is byte-identical between runs.
    """
    return mpmath.nstr(_as_mpf(value), digits, min_fixed=0, max_fixed=0)


def compact_sci(value: Any, digits: int = 4) -> str:
    """ Renders ``0.004193`` as ``4.193(-3)`` """
    text = mpmath.nstr(_as_mpf(value), digits, min_fixed=0, max_fixed=0, strip_zeros=False,
                       show_zero_exponent=True)
    mantissa, _, exponent = text.partition("e")
    return f"{mantissa}({int(exponent)})"


def decimal_str(value: Any, digits: int) -> str:
    """ Decimal string of an mpmath real at `digits` significant digits """
    return mpmath.nstr(_as_mpf(value), digits)


def complex_parts(value: Any, digits: int) -> tuple[str, str]:
    """ (re, im) as decimal strings; mpc formatting is done part-wise so keyword options apply to both """
    return decimal_str(value.real, digits), decimal_str(value.imag, digits)


def rational_decimal(value: Fraction, digits: int = 30) -> str:
    """ Decimal rendering of an exact rational, correctly rounded at `digits` significant digits """
    ctx = working_context(digits + 10)
    return mpmath.nstr(ctx.mpf(value.numerator) / value.denominator, digits)


def _as_mpf(value: Any):
    if hasattr(value, "_mpf_"):
        return value
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpf(value)


def last_digit_unit(printed: str):
    """ One unit in the last digit of a printed decimal, e.g. ``4.193e-3`` -> ``1e-6`` """
    mantissa, _, exponent = printed.strip().lower().partition("e")
    decimals = len(mantissa.partition(".")[2])
    return mpmath.mpf(10) ** (int(exponent or 0) - decimals)


def matches_printed(value: Any, printed: str) -> bool:
    """ True when `value` agrees with a printed decimal to within one unit of its last digit """
    return abs(_as_mpf(value) - mpmath.mpf(printed)) <= last_digit_unit(printed)
