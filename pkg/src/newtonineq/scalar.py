"""Exact rational scalars and comparison helpers.

Every numeric value in the core is a :class:`fractions.Fraction` (aliased
as ``Rational``).  Integral results are kept as plain ``int`` where that is
cheaper; the two types compare and hash identically.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Union

Rational = Fraction
RationalLike = Union[int, Fraction, str]

_RATIONAL_RE = re.compile(
    r"""^\s*(?P<sign>[-+])?
        (?:
            (?P<num>\d+)\s*/\s*(?P<den>\d+)
          | (?P<int>\d*)(?:\.(?P<frac>\d*))?(?:[eE](?P<exp>[-+]?\d+))?
        )\s*$""",
    re.VERBOSE,
)


def parse_rational(text: RationalLike) -> Fraction:
    """Parse ``"p/q"``, an integer, or a decimal literal exactly.

    >>> parse_rational("0.25")
    Fraction(1, 4)
    >>> parse_rational("-3/6")
    Fraction(-1, 2)
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise TypeError(f"cannot parse {type(text).__name__} as a rational")
    m = _RATIONAL_RE.match(text)
    if m is None or (m.group("num") is None and not (m.group("int") or m.group("frac"))):
        raise ValueError(f"invalid rational literal: {text!r}")
    if m.group("num") is not None:
        den = int(m.group("den"))
        if den == 0:
            raise ZeroDivisionError(f"zero denominator in {text!r}")
        value = Fraction(int(m.group("num")), den)
    else:
        frac = m.group("frac") or ""
        value = Fraction(int((m.group("int") or "0") + frac), 10 ** len(frac))
        if m.group("exp"):
            value *= Fraction(10) ** int(m.group("exp"))
    return -value if m.group("sign") == "-" else value


def format_rational(value: Fraction | int) -> str:
    """Canonical string form: ``"p/q"``, with ``"/q"`` omitted when q == 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_decimal(value: Fraction | int, places: int) -> str:
    """Round-half-even decimal rendering with a fixed number of places."""
    value = Fraction(value)
    scaled = round(value * 10**places)
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(places + 1, "0")
    if places == 0:
        return sign + digits
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def canonical(value: Fraction | int) -> Fraction | int:
    """Collapse integral fractions to ``int`` (faster arithmetic downstream)."""
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


@lru_cache(maxsize=4096)
def binomial(n: int, k: int) -> int:
    """C(n, k) as an exact integer, zero outside 0 <= k <= n."""
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def is_perfect_square(value: Fraction | int) -> bool:
    value = Fraction(value)
    if value < 0:
        return False
    p, q = value.numerator, value.denominator
    return math.isqrt(p) ** 2 == p and math.isqrt(q) ** 2 == q


def rational_sqrt(value: Fraction | int) -> Fraction:
    """Exact square root of a perfect-square rational."""
    value = Fraction(value)
    if not is_perfect_square(value):
        raise ValueError(f"{format_rational(value)} is not a perfect square")
    return Fraction(math.isqrt(value.numerator), math.isqrt(value.denominator))


def cmp_sqrt_scaled(lhs: Fraction | int, rhs: Fraction | int, factor: Fraction | int) -> int:
    """Sign of ``lhs - sqrt(factor) * rhs`` for nonnegative arguments.

    Decided exactly by comparing ``lhs**2`` with ``factor * rhs**2``.
    Returns -1, 0 or 1.
    """
    if lhs < 0 or rhs < 0 or factor < 0:
        raise ValueError("cmp_sqrt_scaled expects nonnegative arguments")
    left = lhs * lhs
    right = factor * rhs * rhs
    return (left > right) - (left < right)
