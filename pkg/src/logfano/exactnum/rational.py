"""Rational scalars.

Rationals are plain :class:`fractions.Fraction` values; this module only adds
parsing and formatting helpers that keep the "p/q" string convention used by
the JSON documents.
"""

from fractions import Fraction
from numbers import Rational

Rat = Fraction


def as_rat(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction.

    Floats are rejected on purpose: a float in the input is almost always a
    loss of exactness upstream.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational string")
        if any(c in text for c in ".eE"):
            raise ValueError(f"rational {value!r} must be an integer or p/q")
        return Fraction(text)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def rat_str(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def sign(q) -> int:
    return (q > 0) - (q < 0)
