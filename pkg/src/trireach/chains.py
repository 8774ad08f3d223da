"""Scripted witness pipelines for the mapped-out strict upper regions.

Each function covers one proven "below" region with a fixed, documented
recipe: a small interval base (or the circulant gadget) followed by at most
one lifting step. There is no search; if none of a recipe's scripted bases
applies, the point is outside the recipe's coverage envelope and a
ConstructionError propagates.

Coverage envelopes are stated per function. Some published regions lean on
imported base families whose constructions are out of scope here; in those
spots the scripted interval bases cover all but a thin boundary sliver, and
the docstrings say exactly which part that is.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .witnesses import (
    ConstructionError,
    Witness,
    circulant_witness,
    extend_phi,
    extend_psi_bottom,
    extend_psi_top,
    interval_witness,
)

F = Fraction


def psi_below_two_fifths(x: Fraction, y: Fraction) -> Witness:
    """Strict psi(x, y) < 2/5 on 5x/2 + y <= 1, x >= 1/3 (or the mirror
    x + 5y/2 <= 1, y >= 1/3), via the circulant gadget at ratio 2/5.

    Full coverage: either hypothesis branch implies every circulant entry
    condition (in particular 2y <= x, resp. 2x <= y).
    """
    return circulant_witness(x, y, 2, 5)


def psi_below_three_quarters_y_band(x: Fraction, y: Fraction) -> Witness:
    """Strict psi(x, y) < 3/4 on 1/7 <= y <= 1/6, x + 2y <= 1.

    Single top-lift over the interval base at (3/5, 1/5); covers the whole
    band (the binding window condition is exactly x + 2y <= 1).
    """
    return extend_psi_top(interval_witness(5, 3, 1), x, y, F(3, 4))


def psi_below_three_quarters_x_band(x: Fraction, y: Fraction) -> Witness:
    """Strict psi(x, y) < 3/4 on 1/7 <= x <= 1/6, 2x + y <= 1.

    Bottom-lift over interval (1/4, 1/2) for y <= 2/3, falling back to the
    interval (1/5, 3/5) base, which reaches y <= 5/7 but only x < 3/20.
    The corner x in [3/20, 1/6] with y > 2/3 has no scripted base here; the
    published derivation of that part rests on an imported base family.
    """
    errors = []
    for n, p, q in ((4, 1, 2), (5, 1, 3)):
        try:
            witness = extend_psi_bottom(interval_witness(n, p, q), x, y, F(3, 4))
        except ConstructionError as exc:
            errors.append(f"interval({n},{p},{q}): {exc}")
            continue
        if witness.strict:
            return witness
        errors.append(f"interval({n},{p},{q}): only a nonstrict certificate here")
    raise ConstructionError("no scripted base gives a strict witness: " + " | ".join(errors))


def psi_below_three_fifths_y_band(x: Fraction, y: Fraction) -> Witness:
    """Strict psi(x, y) < 3/5 on 1/7 <= y <= 1/6, x + 3y <= 1.

    Single top-lift over the interval base at (1/4, 1/4); covers the whole
    band (binding condition x + 3y <= 1).
    """
    return extend_psi_top(interval_witness(4, 1, 1), x, y, F(3, 5))


def psi_below_three_fifths_x_band(x: Fraction, y: Fraction) -> Witness:
    """Strict psi(x, y) < 3/5 on 1/7 <= x <= 1/6, 3x + y <= 1.

    Scripted bases, tried in order:
      1. bottom-lift of interval (1/4, 1/4)   -- x < 3/20, y <= 4/7;
      2. top-lift of interval (1/7, 2/7)      -- y <= 2/9 (any band x);
      3. bottom-lift of interval (5/18, 1/18) -- x < 1/6, y <= (1-(17/5)x).
    Together these cover the band except a corner near x = 1/6 with large y.
    """
    errors = []
    for builder, label in (
        (lambda: extend_psi_bottom(interval_witness(4, 1, 1), x, y, F(3, 5)), "bottom/interval(4,1,1)"),
        (lambda: extend_psi_top(interval_witness(7, 1, 2), x, y, F(3, 5)), "top/interval(7,1,2)"),
        (lambda: extend_psi_bottom(interval_witness(18, 5, 1), x, y, F(3, 5)), "bottom/interval(18,5,1)"),
    ):
        try:
            witness = builder()
        except ConstructionError as exc:
            errors.append(f"{label}: {exc}")
            continue
        if witness.strict:
            return witness
        errors.append(f"{label}: only a nonstrict certificate here")
    raise ConstructionError("no scripted base gives a strict witness: " + " | ".join(errors))


def _phi_lift(x: Fraction, y: Fraction, z: Fraction, base_reach_cap: Fraction) -> Witness:
    """Shared one-sided recipe: build the interval base exactly at the
    derived point ((2x-1)/x, y/(1-y)) and lift. Applies when x > 1/2, y < 1/2
    and the derived coordinates sum below the cap (which forces the base
    reach x' + y' - 1/N under the lifting threshold)."""
    if x <= F(1, 2):
        raise ConstructionError(f"one-sided lift needs x > 1/2, got {x}")
    if y >= F(1, 2):
        raise ConstructionError(f"one-sided lift needs y < 1/2, got {y}")
    xp = (2 * x - 1) / x
    yp = y / (1 - y)
    if xp + yp > base_reach_cap:
        raise ConstructionError(
            f"derived point ({xp}, {yp}) sums over {base_reach_cap}; "
            "outside this recipe's coverage"
        )
    n = math.lcm(xp.denominator, yp.denominator)
    base = interval_witness(n, int(xp * n), int(yp * n))
    return extend_phi(base, x, y, z)


def phi_below_three_quarters(x: Fraction, y: Fraction) -> Witness:
    """Strict phi(x, y) < 3/4 on y <= 1/3, x/(1-x) + y/(1-3y) <= 3.

    Recipe: interval base at the derived point, then the one-sided lift at
    level 3/4. Coverage envelope: x > 1/2 and (2x-1)/x + y/(1-y) <= 2/3
    (which keeps the base reach under the lift threshold 2/3); the published
    region is wider but rests on an imported base family.
    """
    return _phi_lift(x, y, F(3, 4), F(2, 3))


def phi_below_three_fifths(x: Fraction, y: Fraction) -> Witness:
    """Strict phi(x, y) < 3/5 on y < 1/3, (1-x)/(2-3x) + y/(1-3y) <= 2.

    Same recipe at level 3/5; coverage envelope x > 1/2 and
    (2x-1)/x + y/(1-y) <= 1/3 (base reach under the lift threshold 1/3).
    """
    return _phi_lift(x, y, F(3, 5), F(1, 3))
