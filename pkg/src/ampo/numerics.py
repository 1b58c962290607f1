"""Arithmetic backbone: exact rationals, 38-digit decimals, and the infinity marker.

Two arithmetic modes run through the whole engine:

* ``rational`` — ``fractions.Fraction`` everywhere; every curve identity
  (reserve, path independence, round trips) holds bit-exactly.
* ``decimal`` — ``decimal.Decimal`` under a 38-significant-digit,
  round-half-even context, for curves that cannot be evaluated exactly.

Amortization is irrational either way, so the decay index is always computed
as a correctly rounded 38-digit decimal from the *absolute* elapsed time; the
rational mode then lifts that decimal into an exact ``Fraction``.
"""

from __future__ import annotations

import math
from contextlib import nullcontext
from decimal import Context, Decimal, Inexact, ROUND_HALF_EVEN, localcontext
from fractions import Fraction
from typing import Union

RATIONAL = "rational"
DECIMAL = "decimal"
MODES = (RATIONAL, DECIMAL)

DECIMAL_DIGITS = 38
DEC_CONTEXT = Context(prec=DECIMAL_DIGITS, rounding=ROUND_HALF_EVEN)

Number = Union[Fraction, Decimal]


class _Infinite:
    """Singleton marker for an infinite premium or cost.

    Deliberately supports no arithmetic: any attempt to add or multiply it
    raises ``TypeError``, so feasibility must be checked before computing.
    """

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITE"


INFINITE = _Infinite()


def is_infinite(value) -> bool:
    return value is INFINITE


def as_fraction(x) -> Fraction:
    """Convert exactly to a Fraction; accepts int, str, Decimal, float, Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Decimal):
        return Fraction(x)
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, float):
        # exact binary expansion; callers preferring decimal semantics pass strings
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Fraction")


def as_decimal(x) -> Decimal:
    """Convert to a Decimal rounded to 38 significant digits (half-even)."""
    if isinstance(x, Decimal):
        return x
    if isinstance(x, int):
        return Decimal(x)
    if isinstance(x, str):
        with localcontext(DEC_CONTEXT):
            return +Decimal(x)
    if isinstance(x, Fraction):
        with localcontext(DEC_CONTEXT):
            return Decimal(x.numerator) / Decimal(x.denominator)
    if isinstance(x, float):
        with localcontext(DEC_CONTEXT):
            return +Decimal(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Decimal")


def as_number(x, mode: str) -> Number:
    if mode == RATIONAL:
        return as_fraction(x)
    if mode == DECIMAL:
        return as_decimal(x)
    raise ValueError(f"unknown arithmetic mode {mode!r}")


def zero(mode: str) -> Number:
    return Fraction(0) if mode == RATIONAL else Decimal(0)


def coerce_like(x, template) -> Number:
    """Convert ``x`` to the numeric type of ``template`` (Fraction or Decimal)."""
    if isinstance(template, Decimal):
        return as_decimal(x)
    return as_fraction(x)


def compute_context(*values):
    """Context manager activating the 38-digit context iff any operand is Decimal."""
    if any(isinstance(v, Decimal) for v in values):
        return localcontext(DEC_CONTEXT)
    return nullcontext()


def decay_factor(rate: Fraction, elapsed: Fraction, mode: str) -> Number:
    """exp(-rate * elapsed) at 38 significant digits.

    The exponent is formed exactly before rounding, so the factor depends only
    on the absolute elapsed time — never on how the interval was partitioned.
    """
    if elapsed < 0:
        raise ValueError("elapsed time must be non-negative")
    if elapsed == 0:
        return zero(mode) + 1
    exponent = as_fraction(rate) * as_fraction(elapsed)
    with localcontext(DEC_CONTEXT):
        d = (-(Decimal(exponent.numerator) / Decimal(exponent.denominator))).exp()
    return Fraction(d) if mode == RATIONAL else d


def quantize(x: Number, quantum: Number, *, up: bool) -> Number:
    """Round to a multiple of ``quantum``: up for amounts owed to the pool,
    down for amounts paid out of it."""
    f = as_fraction(x)
    q = as_fraction(quantum)
    if q <= 0:
        raise ValueError("quantum must be positive")
    steps = f / q
    n = math.ceil(steps) if up else math.floor(steps)
    out = n * q
    return out if isinstance(x, Fraction) else as_decimal(out)


def within_relative(a: Number, b: Number, tol: str = "1e-12") -> bool:
    """|a - b| <= tol * max(1, |a|, |b|), computed in the operands' arithmetic."""
    fa, fb = as_fraction(a), as_fraction(b)
    scale = max(Fraction(1), abs(fa), abs(fb))
    return abs(fa - fb) <= Fraction(tol) * scale


def decimal_string(x) -> str:
    """Serialize a number as a plain decimal string (38 significant digits).

    Exactly representable values print exactly; anything else is rounded
    half-even. Used for every number that crosses a CSV or JSON boundary.
    """
    if is_infinite(x):
        return "inf"
    if isinstance(x, Decimal):
        d = x
    elif isinstance(x, int):
        d = Decimal(x)
    else:
        f = as_fraction(x)
        try:
            with localcontext(Context(prec=DECIMAL_DIGITS * 2, traps=[Inexact])):
                d = Decimal(f.numerator) / Decimal(f.denominator)
        except Inexact:
            with localcontext(DEC_CONTEXT):
                d = Decimal(f.numerator) / Decimal(f.denominator)
    if d == 0:
        return "0"
    return format(d.normalize(), "f")
