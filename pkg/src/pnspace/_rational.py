"""Exact rational helpers shared by every module."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]

INF = math.inf


def q(value: RationalLike) -> Fraction:
    """Coerce to Fraction. Floats are refused so nothing inexact leaks in."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed rational {value!r}") from exc
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def fmt(value) -> str:
    """Render a rational (or infinity) as a "p/q" string."""
    if value == INF:
        return "inf"
    value = q(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def is_inf(x) -> bool:
    return isinstance(x, float) and x == INF


def grid(start: RationalLike, stop: RationalLike, step: RationalLike) -> tuple[Fraction, ...]:
    """Inclusive arithmetic grid start, start+step, ..., stop."""
    start, stop, step = q(start), q(stop), q(step)
    if step <= 0:
        raise ValueError("grid step must be positive")
    count = math.floor((stop - start) / step)
    return tuple(start + k * step for k in range(count + 1))


def unit_grid(denominator: int = 64) -> tuple[Fraction, ...]:
    return tuple(Fraction(k, denominator) for k in range(denominator + 1))


def midpoints(points: Iterable[Fraction]) -> list[Fraction]:
    pts = sorted(set(points))
    return [(a + b) / 2 for a, b in zip(pts, pts[1:])]
