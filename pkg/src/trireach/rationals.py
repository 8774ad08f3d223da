"""Exact rational arithmetic helpers and the ceiling-based reach upper bound.

Everything in this package's math core is a ``fractions.Fraction``: arbitrary
precision, always canonical (positive denominator, lowest terms), no floats
anywhere. This module adds the strict text form used by every file format in
the repo ("p/q" in lowest terms, "p" when the denominator is 1) and the
k-minimized ceiling bound

    min over 1 <= k <= k_max of (ceil(k*x) + ceil(k*y) - 1) / k,

which is a valid upper bound on the guaranteed reach fraction for both the
one-sided and two-sided constraint families.
"""

from __future__ import annotations

import re
from fractions import Fraction

Rational = Fraction

#: Denominators in every workload we target stay well under 100, and each
#: prefix of k values already yields a valid bound.
DEFAULT_K_MAX = 100

_RATIONAL_RE = re.compile(r"[+-]?\d+(/\d+)?")


class RationalParseError(ValueError):
    """Text does not denote a rational in the canonical 'p/q' form."""


def parse_rational(text: str) -> Fraction:
    """Parse 'p', '+p', '-p' or 'p/q' (q > 0 after parsing) exactly.

    Decimal notation is rejected on purpose: every downstream consumer is
    exact, and accepting "0.1" would invite silent precision expectations.
    """
    s = text.strip()
    if not _RATIONAL_RE.fullmatch(s):
        raise RationalParseError(f"not a rational literal: {text!r}")
    if "/" in s:
        num, den = s.split("/")
        if int(den) == 0:
            raise RationalParseError(f"zero denominator: {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def format_rational(value: Fraction) -> str:
    """Canonical text form: lowest terms, denominator omitted when 1."""
    return str(value)


def check_unit_interval(name: str, value: Fraction) -> None:
    """Require 0 < value <= 1, the domain of every constraint fraction."""
    if not (0 < value <= 1):
        raise ValueError(f"{name} must lie in (0, 1], got {value}")


def cayley_bound(x: Fraction, y: Fraction, k_max: int = DEFAULT_K_MAX) -> Fraction:
    """min_{1<=k<=k_max} (ceil(kx) + ceil(ky) - 1) / k, computed exactly.

    The minimum over any finite prefix of k is already a correct upper bound;
    larger k_max can only tighten it.
    """
    check_unit_interval("x", x)
    check_unit_interval("y", y)
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    xn, xd = x.numerator, x.denominator
    yn, yd = y.numerator, y.denominator
    best_n, best_d = 1, 1  # k = 1 gives ceil(x) + ceil(y) - 1 = 1
    for k in range(2, k_max + 1):
        cx = -((-k * xn) // xd)
        cy = -((-k * yn) // yd)
        num = cx + cy - 1
        # num/k < best_n/best_d, all terms positive
        if num * best_d < best_n * k:
            best_n, best_d = num, k
    return Fraction(best_n, best_d)
