"""
custom_fields.py

Field types shared across models and schemas: exact rationals parsed from strings and mpmath numbers that
serialize to decimal strings.
"""
from fractions import Fraction
from typing import Annotated, Any

from pydantic import BeforeValidator, PlainSerializer

from app.core.utils.errors import InputParseError
from app.core.utils.helpers import complex_parts, decimal_str

# mpmath numbers are context-bound classes, so they are carried as Any and rendered on the way out
SERIAL_DIGITS = 30


def parse_rational(text: str, offset: int = 0) -> Fraction:
    """
    Parse an exact rational such as ``2/3``, ``-5`` or ``0.75``. On failure the error carries the position of
    the offending part within the original input (``offset`` is the start of `text` in that input).
    """
    stripped = text.strip()
    position = offset + (len(text) - len(text.lstrip()))
    if not stripped:
        raise InputParseError(f"empty rational at position {position}", text=text, position=position)
    try:
        return Fraction(stripped)
    except ZeroDivisionError:
        slash = stripped.find("/")
        raise InputParseError(f"zero denominator at position {position + slash + 1}", text=text,
                              position=position + slash + 1)
    except ValueError:
        raise InputParseError(f"'{stripped}' is not a rational (position {position})", text=text,
                              position=position)


def convert_to_fraction(value: Any) -> Any:
    """ Validation converter: strings and ints become Fractions, anything else is left to the type check """
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    return value


def serialize_fraction(value: Fraction) -> str:
    return str(value)


def serialize_big(value: Any) -> Any:
    """ mpf -> decimal string, mpc -> {re, im} """
    if value is None:
        return None
    if hasattr(value, "_mpc_"):
        re, im = complex_parts(value, SERIAL_DIGITS)
        return dict(re=re, im=im)
    return decimal_str(value, SERIAL_DIGITS)


RationalField = Annotated[Any, BeforeValidator(convert_to_fraction), PlainSerializer(serialize_fraction)]

BigFloat = Annotated[Any, PlainSerializer(serialize_big)]
BigComplex = Annotated[Any, PlainSerializer(serialize_big)]
