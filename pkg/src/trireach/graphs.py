"""Weighted tripartite graphs with two-level degree constraints.

The model: three nonempty stable parts A, B, C; edges only between A and B
and between B and C (A-C edges are unrepresentable by construction); every
vertex carries a positive rational weight, and weights sum to exactly 1
within each part.

A graph is *constrained* at (x, y) when every A-vertex sees at least weight x
of B and every B-vertex sees at least weight y of C; *biconstrained* adds the
reverse thresholds (B sees at least x of A, C sees at least y of B). All
comparisons are exact and non-strict.

The quantity this package revolves around is the reach of a C-vertex: the
total A-weight of its second neighborhood, i.e. of the A-vertices sharing at
least one B-neighbor with it. Because A-C edges do not exist, "distance
exactly two" and "common B-neighbor" coincide for C-to-A queries.

Adjacency is stored as bitmasks (one integer per vertex row), so unions and
reverse adjacency stay cheap even on blow-ups with a few hundred vertices per
part.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator

from .rationals import check_unit_interval


class Mode(str, Enum):
    CONSTRAINED = "constrained"
    BICONSTRAINED = "biconstrained"


class Fn(str, Enum):
    """The two bound families: one-sided (phi) and two-sided (psi)."""

    PHI = "phi"
    PSI = "psi"

    @property
    def mode(self) -> Mode:
        return Mode.CONSTRAINED if self is Fn.PHI else Mode.BICONSTRAINED


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def weight_of_mask(mask: int, weights: tuple[Fraction, ...]) -> Fraction:
    return sum((weights[i] for i in iter_bits(mask)), Fraction(0))


def cyclic_window_mask(start: int, width: int, size: int) -> int:
    """Bits start, start+1, ..., start+width-1 modulo size."""
    if width >= size:
        return (1 << size) - 1
    start %= size
    if start + width <= size:
        return ((1 << width) - 1) << start
    head = start + width - size
    return ((1 << head) - 1) | (((1 << (size - start)) - 1) << start)


@dataclass(frozen=True)
class Tripartition:
    """Unweighted structure: row bitmasks for the A-B and B-C layers.

    ab_rows[i] has bit j set iff a_i ~ b_j; bc_rows[j] has bit k set iff
    b_j ~ c_k.
    """

    a_size: int
    b_size: int
    c_size: int
    ab_rows: tuple[int, ...]
    bc_rows: tuple[int, ...]

    def __post_init__(self) -> None:
        for name, n in (("a_size", self.a_size), ("b_size", self.b_size), ("c_size", self.c_size)):
            if n < 1:
                raise ValueError(f"{name} must be positive, got {n}")
        if len(self.ab_rows) != self.a_size or len(self.bc_rows) != self.b_size:
            raise ValueError("row count does not match part size")
        b_full, c_full = (1 << self.b_size) - 1, (1 << self.c_size) - 1
        if any(r & ~b_full for r in self.ab_rows) or any(r & ~c_full for r in self.bc_rows):
            raise ValueError("adjacency mask exceeds part size")

    @classmethod
    def from_edges(
        cls,
        a_size: int,
        b_size: int,
        c_size: int,
        ab_edges: Iterable[tuple[int, int]],
        bc_edges: Iterable[tuple[int, int]],
    ) -> "Tripartition":
        ab = [0] * a_size
        bc = [0] * b_size
        for i, j in ab_edges:
            if not (0 <= i < a_size and 0 <= j < b_size):
                raise ValueError(f"ab edge ({i},{j}) out of range")
            ab[i] |= 1 << j
        for j, k in bc_edges:
            if not (0 <= j < b_size and 0 <= k < c_size):
                raise ValueError(f"bc edge ({j},{k}) out of range")
            bc[j] |= 1 << k
        return cls(a_size, b_size, c_size, tuple(ab), tuple(bc))

    @cached_property
    def ab_cols(self) -> tuple[int, ...]:
        """Per B-vertex, bitmask of its A-neighbors."""
        cols = [0] * self.b_size
        for i, row in enumerate(self.ab_rows):
            for j in iter_bits(row):
                cols[j] |= 1 << i
        return tuple(cols)

    @cached_property
    def bc_cols(self) -> tuple[int, ...]:
        """Per C-vertex, bitmask of its B-neighbors."""
        cols = [0] * self.c_size
        for j, row in enumerate(self.bc_rows):
            for k in iter_bits(row):
                cols[k] |= 1 << j
        return tuple(cols)

    def ab_edges(self) -> Iterator[tuple[int, int]]:
        for i, row in enumerate(self.ab_rows):
            for j in iter_bits(row):
                yield (i, j)

    def bc_edges(self) -> Iterator[tuple[int, int]]:
        for j, row in enumerate(self.bc_rows):
            for k in iter_bits(row):
                yield (j, k)


def _check_weights(name: str, weights: tuple[Fraction, ...], size: int) -> None:
    if len(weights) != size:
        raise ValueError(f"{name}: expected {size} weights, got {len(weights)}")
    if any(w <= 0 for w in weights):
        raise ValueError(f"{name}: weights must be strictly positive")
    total = sum(weights, Fraction(0))
    if total != 1:
        raise ValueError(f"{name}: weights sum to {total}, expected 1")


@dataclass(frozen=True)
class WeightedTripartite:
    structure: Tripartition
    weights_a: tuple[Fraction, ...]
    weights_b: tuple[Fraction, ...]
    weights_c: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        _check_weights("weights_a", self.weights_a, self.structure.a_size)
        _check_weights("weights_b", self.weights_b, self.structure.b_size)
        _check_weights("weights_c", self.weights_c, self.structure.c_size)

    @classmethod
    def uniform(cls, structure: Tripartition) -> "WeightedTripartite":
        return cls(
            structure,
            (Fraction(1, structure.a_size),) * structure.a_size,
            (Fraction(1, structure.b_size),) * structure.b_size,
            (Fraction(1, structure.c_size),) * structure.c_size,
        )


@dataclass(frozen=True)
class ConstraintParams:
    x: Fraction
    y: Fraction
    mode: Mode

    def __post_init__(self) -> None:
        check_unit_interval("x", self.x)
        check_unit_interval("y", self.y)


@dataclass(frozen=True)
class Violation:
    part: str  # "A", "B" or "C"
    index: int
    constraint: str  # "A->B", "B->C", "B->A", "C->B"
    required: Fraction
    actual: Fraction

    def __str__(self) -> str:
        return (
            f"{self.constraint} fails at {self.part}[{self.index}]: "
            f"weighted degree {self.actual} < {self.required}"
        )


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    violation: Violation | None = None


def verify(g: WeightedTripartite, params: ConstraintParams) -> VerificationReport:
    """Exact constraint check; reports the first violating vertex on failure.

    Check order is A->B, B->C, then (biconstrained only) B->A, C->B, each in
    ascending index order, so the reported violation is deterministic.
    """
    s = g.structure
    x, y = params.x, params.y
    for i, row in enumerate(s.ab_rows):
        w = weight_of_mask(row, g.weights_b)
        if w < x:
            return VerificationReport(False, Violation("A", i, "A->B", x, w))
    for j, row in enumerate(s.bc_rows):
        w = weight_of_mask(row, g.weights_c)
        if w < y:
            return VerificationReport(False, Violation("B", j, "B->C", y, w))
    if params.mode is Mode.BICONSTRAINED:
        for j, col in enumerate(s.ab_cols):
            w = weight_of_mask(col, g.weights_a)
            if w < x:
                return VerificationReport(False, Violation("B", j, "B->A", x, w))
        for k, col in enumerate(s.bc_cols):
            w = weight_of_mask(col, g.weights_b)
            if w < y:
                return VerificationReport(False, Violation("C", k, "C->B", y, w))
    return VerificationReport(True)


def second_neighborhood_mask(g: WeightedTripartite, c_index: int) -> int:
    s = g.structure
    if not (0 <= c_index < s.c_size):
        raise IndexError(f"C index {c_index} out of range [0, {s.c_size})")
    mask = 0
    for b in iter_bits(s.bc_cols[c_index]):
        mask |= s.ab_cols[b]
    return mask


def second_neighborhood(g: WeightedTripartite, c_index: int) -> frozenset[int]:
    """A-vertices sharing at least one B-neighbor with the given C-vertex."""
    return frozenset(iter_bits(second_neighborhood_mask(g, c_index)))


def max_reach(g: WeightedTripartite) -> tuple[Fraction, int]:
    """Max over C of the A-weight of the second neighborhood, plus the
    attaining C-index (ties broken by lowest index)."""
    best_w: Fraction | None = None
    best_c = 0
    s = g.structure
    for c in range(s.c_size):
        mask = 0
        for b in iter_bits(s.bc_cols[c]):
            mask |= s.ab_cols[b]
        w = weight_of_mask(mask, g.weights_a)
        if best_w is None or w > best_w:
            best_w, best_c = w, c
    assert best_w is not None
    return best_w, best_c


def _expand_mask(mask: int, counts: list[int], offsets: list[int]) -> int:
    out = 0
    for j in iter_bits(mask):
        out |= ((1 << counts[j]) - 1) << offsets[j]
    return out


def blow_up(g: WeightedTripartite) -> tuple[Tripartition, tuple[int, int, int]]:
    """Replace each vertex by weight*D copies (D = per-part denominator lcm).

    The result, taken with uniform weights, has exactly the same verify
    verdicts and the same max_reach value as the weighted original: every
    copy inherits its original's full neighborhood, so weighted degrees and
    second-neighborhood weights are preserved verbatim.

    Returns the unweighted structure plus the per-part scale factors.
    """
    s = g.structure
    scales = []
    counts: list[list[int]] = []
    offsets: list[list[int]] = []
    for weights in (g.weights_a, g.weights_b, g.weights_c):
        d = math.lcm(*(w.denominator for w in weights))
        cnt = [int(w * d) for w in weights]
        off = []
        acc = 0
        for c in cnt:
            off.append(acc)
            acc += c
        scales.append(d)
        counts.append(cnt)
        offsets.append(off)
    ab_rows: list[int] = []
    for i, row in enumerate(s.ab_rows):
        expanded = _expand_mask(row, counts[1], offsets[1])
        ab_rows.extend([expanded] * counts[0][i])
    bc_rows: list[int] = []
    for j, row in enumerate(s.bc_rows):
        expanded = _expand_mask(row, counts[2], offsets[2])
        bc_rows.extend([expanded] * counts[1][j])
    structure = Tripartition(scales[0], scales[1], scales[2], tuple(ab_rows), tuple(bc_rows))
    return structure, (scales[0], scales[1], scales[2])


class LemmaOutcome(str, Enum):
    NOT_APPLICABLE = "not_applicable"
    HOLDS = "holds"
    COUNTEREXAMPLE = "COUNTEREXAMPLE"


class LemmaPreconditionError(ValueError):
    """Inputs do not meet the expansion checker's preconditions; this is
    distinct from the lemma outcomes."""


def check_expansion_lemma(
    g: WeightedTripartite,
    params: ConstraintParams,
    z: Fraction,
    k: int,
    b_subset: Iterable[int],
) -> LemmaOutcome:
    """Check the neighborhood-expansion statement on a concrete subset.

    Preconditions: g verifies in biconstrained mode at (x, y), and every
    C-vertex reaches strictly less than weight z of A. Given those, for a
    subset S of B with weight

        w(S) > (k-1)(1-y) + max(1-y, 1-x/(1-y)),

    the A-weight of the vertices with a neighbor in S must exceed
    x + k(1-z). Subsets below the weight threshold are NOT_APPLICABLE;
    COUNTEREXAMPLE must never occur on inputs meeting the preconditions.
    """
    if params.mode is not Mode.BICONSTRAINED:
        raise LemmaPreconditionError("expansion check requires biconstrained mode")
    if k < 1:
        raise LemmaPreconditionError(f"k must be >= 1, got {k}")
    report = verify(g, params)
    if not report.ok:
        raise LemmaPreconditionError(f"graph does not verify: {report.violation}")
    reach, _ = max_reach(g)
    if reach >= z:
        raise LemmaPreconditionError(f"max reach {reach} is not below z = {z}")

    x, y = params.x, params.y
    s = g.structure
    subset_mask = 0
    for j in b_subset:
        if not (0 <= j < s.b_size):
            raise LemmaPreconditionError(f"B index {j} out of range [0, {s.b_size})")
        subset_mask |= 1 << j
    bk = weight_of_mask(subset_mask, g.weights_b)
    if y == 1:
        slack = Fraction(0)  # x/(1-y) blows up, leaving max(1-y, ...) = 1-y = 0
    else:
        slack = max(1 - y, 1 - x / (1 - y))
    threshold = (k - 1) * (1 - y) + slack
    if bk <= threshold:
        return LemmaOutcome.NOT_APPLICABLE
    touched = 0
    for i, row in enumerate(s.ab_rows):
        if row & subset_mask:
            touched |= 1 << i
    expansion = weight_of_mask(touched, g.weights_a)
    if expansion > x + k * (1 - z):
        return LemmaOutcome.HOLDS
    return LemmaOutcome.COUNTEREXAMPLE
