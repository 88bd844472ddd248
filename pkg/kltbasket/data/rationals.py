import re
from fractions import Fraction
from typing import Union

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def format_rational(v: Union[Fraction, int]) -> str:
    """
    Renders an exact rational as "p/q" (or "p" when integral).
    """
    v = Fraction(v)
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"


def parse_rational(s: Union[str, int, Fraction]) -> Fraction:
    """
    Parses "p/q" or "p". Decimal literals are refused so nothing is ever rounded.

    @param s:   string, int or Fraction
    @return:    Fraction
    """
    if isinstance(s, Fraction):
        return s
    if isinstance(s, bool):
        raise TypeError(f"not a rational: {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise TypeError(f"not a rational: {s!r}")

    m = _RATIONAL_RE.match(s)
    if m is None:
        raise ValueError(f"malformed rational {s!r}, expected P/Q")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {s!r}")
    return Fraction(int(num), int(den) if den is not None else 1)
