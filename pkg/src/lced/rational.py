"""Exact rational parsing and formatting ("num/den" strings)."""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

from lced.errors import FormatError


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and "a/b" strings to a Fraction. Floats are rejected."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def parse_fraction(text: str) -> Fraction:
    text = text.strip()
    try:
        if "/" in text:
            num, den = text.split("/")
            if int(den) == 0:
                raise FormatError(f"zero denominator in {text!r}")
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except ValueError as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"not a rational: {text!r}") from exc


def fmt(x) -> str:
    """Serialise an exact value as "num/den"; infinities become "inf"."""
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        raise TypeError("floats are only allowed as explicit ratio columns")
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)
