"""Exact rational helpers.

All quantities are carried as :class:`fractions.Fraction`.  Parsing never
goes through binary floating point: ``"0.4"`` becomes ``2/5``.
"""
from __future__ import annotations

from decimal import Decimal, InvalidOperation
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

Vector = tuple  # tuple[Fraction, ...]


def as_rational(x) -> Fraction:
    """Convert ``x`` to a Fraction without rounding.

    Accepts ints, Fractions, Decimals and strings such as ``"3/5"``,
    ``"0.4"`` or ``"-1e-3"``.  Floats are rejected because their value is
    rarely the one the caller meant.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, Decimal):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s:
            raise ValueError("empty numeric string")
        try:
            return Fraction(s)
        except ZeroDivisionError as exc:
            raise ValueError(f"zero denominator in {x!r}") from exc
        except ValueError:
            pass
        try:
            return Fraction(Decimal(s))
        except (InvalidOperation, ValueError) as exc:
            raise ValueError(f"not a rational number: {x!r}") from exc
    if isinstance(x, float):
        raise TypeError(f"refusing inexact float {x!r}; pass a string instead")
    raise TypeError(f"cannot interpret {x!r} as a rational")


def vec(xs: Iterable) -> tuple:
    return tuple(as_rational(x) for x in xs)


def parse_vector(text: str) -> tuple:
    """Parse ``"1/2, 2/5, 0.1"`` (commas and/or whitespace) into a vector."""
    parts = [p for p in text.replace(",", " ").split() if p]
    return vec(parts)


def dot(a: Sequence, b: Sequence) -> Fraction:
    if len(a) != len(b):
        raise ValueError("length mismatch")
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def prefix_sums(v: Sequence) -> list:
    out, s = [], Fraction(0)
    for x in v:
        s += x
        out.append(s)
    return out


def fmt(x: Fraction) -> str:
    """Canonical string form used in every serialized output."""
    return str(x)


def to_decimal_str(x: Fraction, digits: int) -> str:
    """Round half-even to ``digits`` decimals, for human convenience only."""
    q = Decimal(x.numerator) / Decimal(x.denominator)
    return str(q.quantize(Decimal(1).scaleb(-digits)))
