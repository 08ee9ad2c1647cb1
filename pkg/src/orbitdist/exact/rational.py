"""Rational scalars.

``fractions.Fraction`` already keeps numerator/denominator reduced with a
positive denominator, so it is used directly as the coefficient field.
This module only adds exact parsing and the ``"p/q"`` wire format.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]

_LITERAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


class NonRationalLiteral(ValueError):
    pass


def to_rational(value: RationalLike) -> Fraction:
    """Convert an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are rejected: a binary float is not an exact rational input.
    """
    if isinstance(value, bool):
        raise NonRationalLiteral(f"boolean is not a rational literal: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if not _LITERAL.match(value):
            raise NonRationalLiteral(f"not a rational literal: {value!r}")
        try:
            return Fraction(value.replace(" ", ""))
        except ZeroDivisionError:
            raise NonRationalLiteral(f"zero denominator: {value!r}") from None
    raise NonRationalLiteral(f"not a rational literal: {value!r}")


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def clear_denominators(values: Iterable[Fraction]) -> list[int]:
    """Scale to integers with gcd 1 (sign untouched)."""
    values = [Fraction(v) for v in values]
    lcm = 1
    for v in values:
        lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
    ints = [int(v * lcm) for v in values]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return ints
