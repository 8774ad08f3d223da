"""Shared generators for randomized structural tests."""

import random
import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from trireach.graphs import Tripartition, WeightedTripartite  # noqa: E402


def random_weights(rng: random.Random, size: int, max_den: int = 6) -> tuple[Fraction, ...]:
    """Positive weights summing to 1 with denominators <= max_den."""
    den = rng.randint(size, max_den)
    cuts = sorted(rng.sample(range(1, den), size - 1)) if size > 1 else []
    parts = []
    prev = 0
    for c in cuts + [den]:
        parts.append(c - prev)
        prev = c
    return tuple(Fraction(p, den) for p in parts)


def random_weighted_tripartite(
    rng: random.Random, max_size: int = 4, max_den: int = 6
) -> WeightedTripartite:
    """Arbitrary weighted tripartite graph; rows may be empty, so the result
    need not verify under any constraints."""
    na, nb, nc = (rng.randint(1, max_size) for _ in range(3))
    ab = tuple(rng.randrange(1 << nb) for _ in range(na))
    bc = tuple(rng.randrange(1 << nc) for _ in range(nb))
    structure = Tripartition(na, nb, nc, ab, bc)
    return WeightedTripartite(
        structure,
        random_weights(rng, na, max_den),
        random_weights(rng, nb, max_den),
        random_weights(rng, nc, max_den),
    )
