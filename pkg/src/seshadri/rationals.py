"""Exact rational parsing, formatting, and integer root helpers.

Rationals cross the process boundary as strings ("2", "-1/3") so no
precision is ever lost to numeric JSON.
"""

from __future__ import annotations

from fractions import Fraction


def to_fraction(x) -> Fraction:
    """Coerce an int, string, or Fraction to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    """Serialize a Fraction as "p" or "p/q" with positive denominator."""
    q = Fraction(q)
    return str(q)


def parse_rational(s: str) -> Fraction:
    """Parse "p" or "p/q"; raises ValueError on malformed input."""
    if not isinstance(s, str):
        raise ValueError(f"expected a rational string, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"invalid rational {s!r}: {exc}") from exc


def iroot(x: int, k: int) -> tuple[int, bool]:
    """Floor of the k-th root of a nonnegative integer, plus exactness.

    Returns (r, exact) with r**k <= x < (r+1)**k and exact true iff
    r**k == x.  Pure integer bisection; no floating point.
    """
    if k < 1:
        raise ValueError("root index must be >= 1")
    if x < 0:
        raise ValueError("negative radicand")
    if x in (0, 1) or k == 1:
        return x, True
    lo, hi = 1, 2
    while hi**k <= x:
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid**k <= x:
            lo = mid
        else:
            hi = mid
    return lo, lo**k == x
