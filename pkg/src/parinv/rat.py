"""Exact rational scalars.

Uses gmpy2.mpq when importable (noticeably faster on big exact
eliminations), fractions.Fraction otherwise.  Downstream code only relies
on the numbers.Rational interface, so the two are interchangeable.
"""

from __future__ import annotations

from fractions import Fraction

try:  # pragma: no cover - environment dependent
    from gmpy2 import mpq as RAT
except ImportError:  # pragma: no cover
    RAT = Fraction

R0 = RAT(0)
R1 = RAT(1)


def rat(p, q=1):
    """Exact rational p/q from ints, strings ("-7/3") or Rationals."""
    if isinstance(p, str):
        return RAT(Fraction(p) / q)
    return RAT(p) / q


def rat_str(x) -> str:
    """Render as "p" or "p/q" (no spaces); used by repr code and JSON IO."""
    n, d = x.numerator, x.denominator
    return f"{n}" if d == 1 else f"{n}/{d}"


def as_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))
