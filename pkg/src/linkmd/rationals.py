"""Exact rational parsing/formatting shared by the file formats.

Rationals travel as strings "p/q" or "p" (or plain ints).  Floats are
rejected everywhere: every downstream comparison is exact.
"""

from __future__ import annotations

from fractions import Fraction


class RationalFormatError(ValueError):
    pass


def parse_rational(value, field: str = "value") -> Fraction:
    """Parse "p/q", "p" or an int into an exact Fraction."""
    if isinstance(value, bool):
        raise RationalFormatError(f"{field}: expected a rational, got a bool")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise RationalFormatError(
            f"{field}: floating point numbers are not accepted; write the "
            f"rational as a string \"p/q\""
        )
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text or "E" in text:
            raise RationalFormatError(
                f"{field}: {value!r} is not in p/q form (decimals are not accepted)"
            )
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise RationalFormatError(f"{field}: cannot parse {value!r} as p/q") from exc
    raise RationalFormatError(f"{field}: cannot parse {value!r} as a rational")


def format_rational(value: Fraction) -> str:
    """Format a Fraction as "p/q", or "p" when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
