"""Independent brute-force ground truth on small uniform-weight instances.

exhaustive_min_max enumerates, over all tripartite graphs with the given
part sizes that pass verify with uniform weights, the minimum of the maximal
C-to-A reach. That minimum is a finite-size upper bound on the corresponding
limit function and the main consistency anchor for everything else in the
package: certified witnesses, region predicates and blow-ups are all checked
against it where sizes permit.

Degree thresholds are exact rational comparisons: an integer degree d
satisfies "at least x*n neighbors" iff d >= ceil(x*n), with no extra
rounding policy layered on top.

The enumeration quotients out within-part relabelings it can see cheaply:
A-rows and B-rows (the B-to-C masks) are generated as sorted multisets,
which is sound because verify verdicts and reach are invariant under
permutations inside a part. Results merge by exact minimum with a fixed
iteration order, so the reported graph is deterministic.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from .graphs import (
    ConstraintParams,
    Mode,
    Tripartition,
    WeightedTripartite,
    blow_up,
    iter_bits,
    max_reach,
    verify,
)
from .witnesses import Witness

#: Exhaustive search is enumerable within budget only up to 4 vertices per
#: part (the 4-layer case already needs the degree-pruned generator).
MAX_EXHAUSTIVE_SIZE = 4


class BudgetError(ValueError):
    """Requested sizes exceed the enumerable budget."""


@dataclass(frozen=True)
class OracleQuery:
    a_size: int
    b_size: int
    c_size: int
    params: ConstraintParams

    def __post_init__(self) -> None:
        for name, n in (("a_size", self.a_size), ("b_size", self.b_size), ("c_size", self.c_size)):
            if n < 1:
                raise ValueError(f"{name} must be positive, got {n}")
            if n > MAX_EXHAUSTIVE_SIZE:
                raise BudgetError(
                    f"{name} = {n} exceeds the exhaustive budget of {MAX_EXHAUSTIVE_SIZE} per part"
                )


@dataclass(frozen=True)
class OracleOutcome:
    value: Fraction | None
    graph: Tripartition | None

    @property
    def infeasible(self) -> bool:
        return self.value is None


def _min_degree(bound: Fraction) -> int:
    """Least integer degree d with d >= bound."""
    return max(0, math.ceil(bound))


def _admissible_rows(width: int, min_bits: int) -> list[int]:
    return [m for m in range(1 << width) if m.bit_count() >= min_bits]


def _column_counts(rows: tuple[int, ...], width: int) -> list[int]:
    counts = [0] * width
    for row in rows:
        for j in iter_bits(row):
            counts[j] += 1
    return counts


def exhaustive_min_max(query: OracleQuery) -> OracleOutcome:
    """Minimize max reach over every graph of the given sizes passing verify.

    Row candidates are pre-pruned by the per-vertex degree lower bounds
    before any recursion; biconstrained column sums are checked per layer
    choice. Returns a minimizing structure (uniform weights implied).
    """
    na, nb, nc = query.a_size, query.b_size, query.c_size
    x, y = query.params.x, query.params.y
    bi = query.params.mode is Mode.BICONSTRAINED
    d_ab = _min_degree(x * nb)  # A-row degree into B
    d_bc = _min_degree(y * nc)  # B-row degree into C
    d_ba = _min_degree(x * na) if bi else 0  # AB column sums
    d_cb = _min_degree(y * nb) if bi else 0  # BC column sums

    ab_candidates = _admissible_rows(nb, d_ab)
    bc_candidates = _admissible_rows(nc, d_bc)

    # Pre-filter B-side multisets once; cache each C-vertex's B-neighbor mask.
    bc_list: list[tuple[tuple[int, ...], list[int]]] = []
    for bc_rows in combinations_with_replacement(bc_candidates, nb):
        if bi and any(cnt < d_cb for cnt in _column_counts(bc_rows, nc)):
            continue
        c_masks = [0] * nc
        for j, row in enumerate(bc_rows):
            for k in iter_bits(row):
                c_masks[k] |= 1 << j
        bc_list.append((bc_rows, c_masks))

    best_count: int | None = None
    best: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    for ab_rows in combinations_with_replacement(ab_candidates, na):
        if bi and any(cnt < d_ba for cnt in _column_counts(ab_rows, nb)):
            continue
        a_masks = [0] * nb  # per B-vertex, its A-neighbors
        for i, row in enumerate(ab_rows):
            for j in iter_bits(row):
                a_masks[j] |= 1 << i
        for bc_rows, c_masks in bc_list:
            worst = 0
            for cm in c_masks:
                reach = 0
                for j in iter_bits(cm):
                    reach |= a_masks[j]
                cnt = reach.bit_count()
                if cnt > worst:
                    worst = cnt
                    if best_count is not None and worst >= best_count:
                        break
            if best_count is None or worst < best_count:
                best_count = worst
                best = (ab_rows, bc_rows)
    if best is None:
        return OracleOutcome(None, None)
    structure = Tripartition(na, nb, nc, best[0], best[1])
    return OracleOutcome(Fraction(best_count, na), structure)


@dataclass(frozen=True)
class RandomSearchResult:
    value: Fraction | None
    graph: Tripartition | None
    trials: int
    feasible_trials: int


def randomized_upper_bound(
    sizes: tuple[int, int, int],
    params: ConstraintParams,
    trials: int,
    seed: int,
) -> RandomSearchResult:
    """Sample degree-feasible layers, keep the minimum max reach seen.

    Deterministic under a fixed seed. The value, when present, is an upper
    bound on the true minimum for these sizes (every sampled graph is a
    member of the family). trials = 0 returns the explicit empty outcome.

    Row degrees are drawn sparse-first (minimum degree, geometrically rare
    extra edges): a minimizer gains nothing from dense layers, but every
    degree-feasible layer keeps positive probability.
    """
    na, nb, nc = sizes
    rng = random.Random(seed)
    d_ab = _min_degree(params.x * nb)
    d_bc = _min_degree(params.y * nc)

    def sample_rows(count: int, width: int, min_bits: int) -> tuple[int, ...]:
        rows = []
        for _ in range(count):
            deg = max(1, min_bits)
            while deg < width and rng.random() < 0.25:
                deg += 1
            bits = rng.sample(range(width), deg)
            mask = 0
            for b in bits:
                mask |= 1 << b
            rows.append(mask)
        return tuple(rows)

    best_value: Fraction | None = None
    best_graph: Tripartition | None = None
    feasible = 0
    for _ in range(trials):
        structure = Tripartition(
            na, nb, nc, sample_rows(na, nb, d_ab), sample_rows(nb, nc, d_bc)
        )
        graph = WeightedTripartite.uniform(structure)
        if not verify(graph, params).ok:
            continue
        feasible += 1
        value, _ = max_reach(graph)
        if best_value is None or value < best_value:
            best_value, best_graph = value, structure
    return RandomSearchResult(best_value, best_graph, trials, feasible)


@dataclass(frozen=True)
class CrossCheckReport:
    blowup_sizes: tuple[int, int, int]
    weighted_ok: bool
    weighted_reach: Fraction
    blowup_ok: bool
    blowup_reach: Fraction
    reach_matches: bool
    claim_ok: bool
    exhaustive_value: Fraction | None
    exhaustive_consistent: bool | None
    notes: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return (
            self.weighted_ok
            and self.blowup_ok
            and self.reach_matches
            and self.claim_ok
            and self.exhaustive_consistent is not False
        )


def cross_check(witness: Witness, enum_limit: int = MAX_EXHAUSTIVE_SIZE) -> CrossCheckReport:
    """Confirm a witness by independent recomputation on its blow-up.

    The blow-up (uniform weights) must reproduce the verify verdict and the
    exact weighted reach. When every blown-up part has at most enum_limit
    vertices, the exhaustive minimum at those sizes is computed as well; it
    can only be at most the witness's reach, since the blow-up itself
    belongs to the enumerated family.
    """
    params = ConstraintParams(witness.x, witness.y, witness.mode)
    weighted_ok = verify(witness.graph, params).ok
    weighted_reach, _ = max_reach(witness.graph)
    structure, sizes = blow_up(witness.graph)
    uniform = WeightedTripartite.uniform(structure)
    blowup_ok = verify(uniform, params).ok
    blowup_reach, _ = max_reach(uniform)
    reach_matches = blowup_reach == weighted_reach
    claim_ok = weighted_reach < witness.z if witness.strict else weighted_reach <= witness.z

    notes: list[str] = []
    exhaustive_value: Fraction | None = None
    exhaustive_consistent: bool | None = None
    if all(n <= enum_limit for n in sizes):
        outcome = exhaustive_min_max(OracleQuery(sizes[0], sizes[1], sizes[2], params))
        exhaustive_value = outcome.value
        if outcome.value is None:
            exhaustive_consistent = False
            notes.append("exhaustive search found no feasible graph at blow-up sizes")
        else:
            exhaustive_consistent = outcome.value <= weighted_reach
    else:
        notes.append(
            f"exhaustive comparison skipped: blow-up sizes {sizes} exceed {enum_limit} per part"
        )
    return CrossCheckReport(
        sizes,
        weighted_ok,
        weighted_reach,
        blowup_ok,
        blowup_reach,
        reach_matches,
        claim_ok,
        exhaustive_value,
        exhaustive_consistent,
        tuple(notes),
    )
