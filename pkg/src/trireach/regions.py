"""Exact membership predicates for the proven reach-bound regions.

Each catalog entry decides, in exact rational arithmetic, whether a proven
rule concludes something about phi or psi at a point (x, y): a lower claim
("at_least z"), a strict upper claim ("below z", always certificate-backed),
or a non-strict cap ("at_most z", from the ceiling bound).

Evaluation policy:

* Every division appearing in a hypothesis is guarded by a positive-
  denominator domain check; outside that domain the hypothesis counts as
  false. This is conservative (a rule can only under-fire, never over-fire)
  and necessary: several printed inequalities flip meaning when a
  denominator changes sign. Example: the level-3/5 one-sided rule contains
  (1-x)/(2-3x), and evaluating it verbatim at x = 7/10 would "conclude"
  phi < 3/5 at a point where phi >= 7/10 trivially holds.
* "Strict if irrational" provisos are vacuous on rational inputs and are
  dropped; every caller works over rationals.
* The single irrational threshold y >= (5-sqrt(3))/11 is decided exactly for
  rational y: true iff y >= 5/11 or (5-11y)^2 <= 3.
* The rule "3/4ub3a" evaluates the displayed expression (3x-1)/(12-12y-4)
  verbatim, i.e. as (3x-1)/(8-12y); the printed denominator looks garbled,
  so this branch can be disabled independently (include_suspect_branch) while
  its sibling "3/4ub3b" stays active.

Derived closure uses exactly three sound rules: phi >= z implies psi >= z,
psi < z implies phi < z (and psi <= z implies phi <= z), and any phi
conclusion transfers between (x, y) and (y, x). A contradiction is a lower
claim meeting an upper claim it cannot coexist with; the headline property of
the whole catalog is that no rational point produces one.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Callable

from .graphs import Fn
from .rationals import DEFAULT_K_MAX, cayley_bound, check_unit_interval, format_rational

HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)

#: Levels at which the generic lower-region rule "5.7" is instantiated.
GENERIC_LEVELS = (Fraction(2, 5), Fraction(1, 2), Fraction(3, 5), Fraction(2, 3), Fraction(3, 4))

#: Levels reported by grid scans (the three mapped-out thresholds).
SCAN_LEVELS = (Fraction(2, 5), Fraction(3, 5), Fraction(3, 4))


class Relation(str, Enum):
    AT_LEAST = "at_least"
    BELOW = "below"
    AT_MOST = "at_most"


@dataclass(frozen=True)
class Conclusion:
    function: Fn
    relation: Relation
    level: Fraction


@dataclass(frozen=True)
class Finding:
    source: str
    function: Fn
    relation: Relation
    level: Fraction

    def sort_key(self) -> tuple:
        return (self.function.value, self.relation.value, self.level, self.source)


@dataclass(frozen=True)
class TheoremPredicate:
    """One catalog rule: id, headline function/relation/level, and the exact
    hypothesis evaluator. level is None when it depends on the point."""

    id: str
    function: Fn
    relation: Relation
    level: Fraction | None
    rule: Callable[[Fraction, Fraction], list[Conclusion]] = field(repr=False)

    def conclusions(self, x: Fraction, y: Fraction) -> list[Conclusion]:
        return self.rule(x, y)


def _const(function: Fn, relation: Relation, level: Fraction):
    """Wrap a boolean hypothesis into a fixed-conclusion rule."""

    def wrap(hyp: Callable[[Fraction, Fraction], bool]):
        conclusion = [Conclusion(function, relation, level)]

        def rule(x: Fraction, y: Fraction) -> list[Conclusion]:
            return conclusion if hyp(x, y) else []

        return rule

    return wrap


def _maxbound_rule(x: Fraction, y: Fraction) -> list[Conclusion]:
    return [Conclusion(Fn.PHI, Relation.AT_LEAST, max(x, y))]


def _intk_rule(k_max: int):
    def rule(x: Fraction, y: Fraction) -> list[Conclusion]:
        h = max(x, y)
        # max(x, y) = 1/k pins phi to 1/k; the >= half coincides with the
        # general lower bound, so this rule contributes the cap.
        if h.numerator == 1 and h.denominator <= k_max:
            return [Conclusion(Fn.PHI, Relation.AT_MOST, h)]
        return []

    return rule


def _cayley_rule(k_max: int):
    def rule(x: Fraction, y: Fraction) -> list[Conclusion]:
        return [Conclusion(Fn.PSI, Relation.AT_MOST, cayley_bound(x, y, k_max))]

    return rule


def _general_57_rule(x: Fraction, y: Fraction) -> list[Conclusion]:
    if y <= HALF:
        return []
    out = []
    for z in GENERIC_LEVELS:
        if 4 * x * x * y * (1 - z) >= (z - x) ** 2:
            out.append(Conclusion(Fn.PHI, Relation.AT_LEAST, z))
    return out


def _one_over_k_rule(k_max: int):
    def rule(x: Fraction, y: Fraction) -> list[Conclusion]:
        out = []
        h = max(x, y)
        k = 1
        while k <= k_max and k * h < 1:
            if x / (1 - k * x) + y / (1 - k * y) <= 1:
                out.append(Conclusion(Fn.PHI, Relation.BELOW, Fraction(1, k + 1)))
            k += 1
        return out

    return rule


def predicate_catalog(
    k_max: int = DEFAULT_K_MAX, include_suspect_branch: bool = True
) -> tuple[TheoremPredicate, ...]:
    """All region rules, one entry per proven statement (the either/or rule
    at level 3/4 appears as two independently switchable branches)."""
    P = TheoremPredicate
    R = Relation
    f34, f25, f35, f23 = Fraction(3, 4), Fraction(2, 5), Fraction(3, 5), Fraction(2, 3)

    def psi_lb(level: Fraction):
        return _const(Fn.PSI, R.BELOW, level)

    def psi_ub(level: Fraction):
        return _const(Fn.PSI, R.AT_LEAST, level)

    def phi_lb(level: Fraction):
        return _const(Fn.PHI, R.BELOW, level)

    def phi_ub(level: Fraction):
        return _const(Fn.PHI, R.AT_LEAST, level)

    entries = [
        # --- general ---
        P("maxbound", Fn.PHI, R.AT_LEAST, None, _maxbound_rule),
        P("cayleybound", Fn.PSI, R.AT_MOST, None, _cayley_rule(k_max)),
        P("intk", Fn.PHI, R.AT_MOST, None, _intk_rule(k_max)),
        P("5.7", Fn.PHI, R.AT_LEAST, None, _general_57_rule),
        P(
            "2/3psilb",
            Fn.PSI,
            R.BELOW,
            f23,
            psi_lb(f23)(
                lambda x, y: (HALF <= y <= Fraction(3, 5) and 2 * x + y <= 1)
                or (Fraction(3, 5) <= y and x + 3 * y <= 2)
                or (Fraction(4, 7) <= x <= Fraction(11, 17) and x + 3 * y <= 1)
            ),
        ),
        P(
            "2/3philb",
            Fn.PHI,
            R.BELOW,
            f23,
            phi_lb(f23)(
                lambda x, y: x < 1 and y < HALF and x / (1 - x) + y / (1 - 2 * y) <= 2
            ),
        ),
        P("1/kphilb", Fn.PHI, R.BELOW, None, _one_over_k_rule(k_max)),
        P(
            "2/3phiub",
            Fn.PHI,
            R.AT_LEAST,
            f23,
            phi_ub(f23)(lambda x, y: y <= HALF and x > (1 - y) ** 2 / (1 - 2 * y * y)),
        ),
        # --- level 3/4 ---
        P(
            "3/4ub1",
            Fn.PSI,
            R.AT_LEAST,
            f34,
            psi_ub(f34)(lambda x, y: y > THIRD and x >= HALF and 2 * y - 2 * y * y > 1 - x),
        ),
        P(
            "3/4ub2",
            Fn.PSI,
            R.AT_LEAST,
            f34,
            psi_ub(f34)(
                lambda x, y: x > f23
                and x + 2 * y > 1
                and y < HALF
                and x + y / (4 * (1 - 2 * y)) >= f34
                and (
                    y * (5 - 6 * y) / (3 * (1 - y)) >= 1 - x
                    or x + y / (4 * (1 - y)) >= f34
                )
            ),
        ),
        P(
            "3/4ub3a",
            Fn.PSI,
            R.AT_LEAST,
            f34,
            psi_ub(f34)(
                lambda x, y: y > HALF
                and x > THIRD
                and 3 * y + x > 2
                and y < f23
                and (3 * x - 1) / (8 - 12 * y) + x >= HALF
            ),
        ),
        P(
            "3/4ub3b",
            Fn.PSI,
            R.AT_LEAST,
            f34,
            psi_ub(f34)(
                lambda x, y: y > HALF
                and x > THIRD
                and 3 * y + x > 2
                and y < 1
                and x >= (3 - 4 * y) / (4 - 4 * y)
            ),
        ),
        P(
            "edgecounting",
            Fn.PSI,
            R.AT_LEAST,
            f34,
            psi_ub(f34)(
                lambda x, y: HALF < y < f23 and (2 - 3 * y) * (2 * y - 1) > 1 - x - y
            ),
        ),
        P(
            "3/4ub4",
            Fn.PSI,
            R.AT_LEAST,
            f34,
            psi_ub(f34)(lambda x, y: x >= Fraction(1, 4) and y > f23),
        ),
        P(
            "3/4ub5",
            Fn.PSI,
            R.AT_LEAST,
            f34,
            psi_ub(f34)(
                lambda x, y: y < 1
                and 2 * y + x - 1 > 1 - y + max(1 - y, 1 - x / (1 - y))
            ),
        ),
        P(
            "3/4from5.7",
            Fn.PHI,
            R.AT_LEAST,
            f34,
            phi_ub(f34)(lambda x, y: y > HALF and 16 * x * x * y >= (3 - 4 * x) ** 2),
        ),
        P(
            "3/4phiub",
            Fn.PHI,
            R.AT_LEAST,
            f34,
            phi_ub(f34)(lambda x, y: y < THIRD and x > (1 - y) / (1 + y - 3 * y * y)),
        ),
        P(
            "3/4psilb",
            Fn.PSI,
            R.BELOW,
            f34,
            psi_lb(f34)(
                lambda x, y: (Fraction(1, 7) <= y <= Fraction(1, 6) and x + 2 * y <= 1)
                or (Fraction(1, 7) <= x <= Fraction(1, 6) and 2 * x + y <= 1)
                or (x <= Fraction(1, 7) and x + 4 * y <= 3)
                # printed bounds (empty interval: 5/7 > 13/19), kept verbatim
                or (Fraction(5, 7) <= x <= Fraction(13, 19) and x + 3 * y <= 1)
            ),
        ),
        P(
            "3/4philb",
            Fn.PHI,
            R.BELOW,
            f34,
            phi_lb(f34)(
                lambda x, y: y < THIRD and x < 1 and x / (1 - x) + y / (1 - 3 * y) <= 3
            ),
        ),
        # --- level 2/5 ---
        P(
            "2/5psiub1",
            Fn.PSI,
            R.AT_LEAST,
            f25,
            psi_ub(f25)(
                lambda x, y: x >= Fraction(1, 5) and y > THIRD and 3 * y - 2 * y * y > 1 - x
            ),
        ),
        P(
            "2/5psiub2",
            Fn.PSI,
            R.AT_LEAST,
            f25,
            psi_ub(f25)(
                lambda x, y: x > THIRD
                and x + 3 * y > 1
                and (
                    y >= Fraction(1, 4)
                    or (y < HALF and x + y / (10 * (1 - 2 * y)) >= f25)
                )
            ),
        ),
        P(
            "2/5phiub1",
            Fn.PHI,
            R.AT_LEAST,
            f25,
            phi_ub(f25)(lambda x, y: 12 * x * x * y >= 5 * (1 - x - y) ** 2),
        ),
        P(
            "2/5phiub2",
            Fn.PHI,
            R.AT_LEAST,
            f25,
            # y >= (5-sqrt(3))/11, decided exactly for rational y
            phi_ub(f25)(
                lambda x, y: x > THIRD
                and (y >= Fraction(5, 11) or (5 - 11 * y) ** 2 <= 3)
            ),
        ),
        P(
            "2/5psilb",
            Fn.PSI,
            R.BELOW,
            f25,
            psi_lb(f25)(
                lambda x, y: (x >= THIRD and Fraction(5, 2) * x + y <= 1)
                or (y >= THIRD and x + Fraction(5, 2) * y <= 1)
            ),
        ),
        P(
            "2/5philb",
            Fn.PHI,
            R.BELOW,
            f25,
            phi_lb(f25)(
                lambda x, y: y < THIRD
                and x < HALF
                and x / (1 - 2 * x) + y / (1 - 3 * y) <= 2
            ),
        ),
        # --- level 3/5 ---
        P(
            "3/5psiub1",
            Fn.PSI,
            R.AT_LEAST,
            f35,
            psi_ub(f35)(
                lambda x, y: y > HALF
                and x >= Fraction(1, 5)
                and x < 1
                and 2 * y - y * y * (3 - 5 * x) / (3 * (1 - x)) > 1 - x
            ),
        ),
        P(
            "3/5psiub2",
            Fn.PSI,
            R.AT_LEAST,
            f35,
            psi_ub(f35)(lambda x, y: x > HALF and x + 2 * y > 1),
        ),
        P(
            "3/5phiub1",
            Fn.PHI,
            R.AT_LEAST,
            f35,
            phi_ub(f35)(lambda x, y: y > HALF and 40 * x * x * y >= (3 - 5 * x) ** 2),
        ),
        P(
            "3/5psilb",
            Fn.PSI,
            R.BELOW,
            f35,
            psi_lb(f35)(
                lambda x, y: (Fraction(1, 7) <= y <= Fraction(1, 6) and x + 3 * y <= 1)
                or (Fraction(1, 7) <= x <= Fraction(1, 6) and 3 * x + y <= 1)
            ),
        ),
        P(
            "3/5philb",
            Fn.PHI,
            R.BELOW,
            f35,
            phi_lb(f35)(
                lambda x, y: y < THIRD
                and x < f23
                and (1 - x) / (2 - 3 * x) + y / (1 - 3 * y) <= 2
            ),
        ),
    ]
    if not include_suspect_branch:
        entries = [p for p in entries if p.id != "3/4ub3a"]
    return tuple(entries)


# ---------------------------------------------------------------------------
# point evaluation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Contradiction:
    function: Fn
    lower: Finding
    upper: Finding

    def __str__(self) -> str:
        rel = "<" if self.upper.relation is Relation.BELOW else "<="
        return (
            f"{self.function.value}: {self.lower.source} gives >= {self.lower.level} "
            f"but {self.upper.source} gives {rel} {self.upper.level}"
        )


@dataclass(frozen=True)
class PointVerdict:
    x: Fraction
    y: Fraction
    findings: tuple[Finding, ...]
    contradictions: tuple[Contradiction, ...]

    def levels(self, function: Fn, relation: Relation) -> list[Fraction]:
        return [f.level for f in self.findings if f.function is function and f.relation is relation]

    def bucket(self, function: Fn, level: Fraction) -> str:
        """Classify the point against one level: 'at_least', 'below' or
        'unknown'. A cap strictly under the level also proves 'below'."""
        if any(v >= level for v in self.levels(function, Relation.AT_LEAST)):
            return "at_least"
        if any(v <= level for v in self.levels(function, Relation.BELOW)):
            return "below"
        if any(v < level for v in self.levels(function, Relation.AT_MOST)):
            return "below"
        return "unknown"


def raw_findings(
    x: Fraction, y: Fraction, catalog: tuple[TheoremPredicate, ...]
) -> tuple[Finding, ...]:
    """Direct rule firings at one ordered point, no closure applied."""
    out = []
    for pred in catalog:
        for c in pred.conclusions(x, y):
            out.append(Finding(pred.id, c.function, c.relation, c.level))
    return tuple(out)


def _mono_closure(findings: list[Finding]) -> list[Finding]:
    """Add the one-sided/two-sided transfers: phi>= lifts to psi>=, psi</<=
    descends to phi."""
    seen = {(f.source, f.function, f.relation, f.level) for f in findings}
    out = list(findings)

    def add(f: Finding) -> None:
        key = (f.source, f.function, f.relation, f.level)
        if key not in seen:
            seen.add(key)
            out.append(f)

    for f in findings:
        if f.function is Fn.PHI and f.relation is Relation.AT_LEAST:
            add(Finding(f.source + "+mono", Fn.PSI, Relation.AT_LEAST, f.level))
        elif f.function is Fn.PSI and f.relation in (Relation.BELOW, Relation.AT_MOST):
            add(Finding(f.source + "+mono", Fn.PHI, f.relation, f.level))
    return out


def _merge(
    x: Fraction,
    y: Fraction,
    here: tuple[Finding, ...],
    mirrored: tuple[Finding, ...],
) -> PointVerdict:
    base = list(here)
    if x != y:
        for f in _mono_closure(list(mirrored)):
            if f.function is Fn.PHI:  # phi(x,y) = phi(y,x)
                base.append(Finding(f.source + "+sym", Fn.PHI, f.relation, f.level))
    findings = _mono_closure(base)
    findings.sort(key=Finding.sort_key)

    contradictions = []
    for fn in (Fn.PHI, Fn.PSI):
        lowers = [f for f in findings if f.function is fn and f.relation is Relation.AT_LEAST]
        if not lowers:
            continue
        best = max(lowers, key=lambda f: f.level)
        for f in findings:
            if f.function is not fn:
                continue
            if f.relation is Relation.BELOW and best.level >= f.level:
                contradictions.append(Contradiction(fn, best, f))
            elif f.relation is Relation.AT_MOST and best.level > f.level:
                contradictions.append(Contradiction(fn, best, f))
    return PointVerdict(x, y, tuple(findings), tuple(contradictions))


def evaluate_point(
    x: Fraction, y: Fraction, catalog: tuple[TheoremPredicate, ...] | None = None
) -> PointVerdict:
    """All rule conclusions holding at (x, y), with closure and the
    contradiction check applied. Contradictions must be empty at every
    rational point; one appearing means an implementation bug or a broken
    source rule, and is surfaced, never suppressed."""
    check_unit_interval("x", x)
    check_unit_interval("y", y)
    cat = catalog if catalog is not None else predicate_catalog()
    here = raw_findings(x, y, cat)
    mirrored = here if x == y else raw_findings(y, x, cat)
    return _merge(x, y, here, mirrored)


# ---------------------------------------------------------------------------
# grid scan
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GridScanReport:
    step: Fraction
    n_points: int
    levels: tuple[Fraction, ...]
    counts: dict[tuple[str, Fraction], dict[str, int]]
    contradictions: tuple[tuple[Fraction, Fraction, Contradiction], ...]
    out_path: str

    def summary_lines(self) -> list[str]:
        lines = [
            f"step {format_rational(self.step)}: {self.n_points} points, "
            f"{len(self.contradictions)} contradictions -> {self.out_path}"
        ]
        for (fn, level), c in sorted(self.counts.items(), key=lambda kv: (kv[0][0], kv[0][1])):
            lines.append(
                f"  {fn} @ {format_rational(level)}: >= {c['at_least']}  "
                f"< {c['below']}  unknown {c['unknown']}"
            )
        return lines


def scan_grid(
    step: Fraction,
    out_path: str | Path,
    levels: tuple[Fraction, ...] = SCAN_LEVELS,
    catalog: tuple[TheoremPredicate, ...] | None = None,
) -> GridScanReport:
    """Evaluate every point (i*step, j*step), 1 <= i,j <= 1/step, write one
    CSV row per finding, and tally the per-level region buckets.

    The step must divide 1 exactly. Raw rule firings are computed once per
    ordered grid point and reused for the mirrored point, so the symmetric
    transfer costs nothing extra.
    """
    inv = 1 / step
    if inv.denominator != 1 or inv < 1:
        raise ValueError(f"step must divide 1, got {step}")
    n = int(inv)
    cat = catalog if catalog is not None else predicate_catalog()

    raw: dict[tuple[int, int], tuple[Finding, ...]] = {}
    for i in range(1, n + 1):
        x = Fraction(i, n)
        for j in range(1, n + 1):
            raw[(i, j)] = raw_findings(x, Fraction(j, n), cat)

    counts = {
        (fn.value, level): {"at_least": 0, "below": 0, "unknown": 0}
        for fn in (Fn.PHI, Fn.PSI)
        for level in levels
    }
    contradictions: list[tuple[Fraction, Fraction, Contradiction]] = []
    out_path = Path(out_path)
    with out_path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["x", "y", "function", "level", "relation", "source"])
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                x, y = Fraction(i, n), Fraction(j, n)
                verdict = _merge(x, y, raw[(i, j)], raw[(j, i)])
                for f in verdict.findings:
                    writer.writerow(
                        [
                            format_rational(x),
                            format_rational(y),
                            f.function.value,
                            format_rational(f.level),
                            f.relation.value,
                            f.source,
                        ]
                    )
                for fn in (Fn.PHI, Fn.PSI):
                    for level in levels:
                        counts[(fn.value, level)][verdict.bucket(fn, level)] += 1
                for contra in verdict.contradictions:
                    contradictions.append((x, y, contra))
    return GridScanReport(step, n * n, tuple(levels), counts, tuple(contradictions), str(out_path))
