"""Random inputs shared by the unit and acceptance tests."""

import random

from clusterlab.fuzz import random_skew_symmetrizable
from clusterlab.seed import apply_sequence, initial_seed


def cycle_cases(count: int, rng_seed: int = 0, walk: int = 3):
    """(seed, i, j) with a rank-3 skew-symmetrizable seed and |b_ij b_ji| <= 3.

    The seed is reached from a random initial matrix by a short random walk,
    so the pair condition is checked at the walked seed.
    """
    rng = random.Random(rng_seed)
    out = []
    while len(out) < count:
        B = random_skew_symmetrizable(rng, rank=3, max_entry=3, max_frozen=1)
        s = apply_sequence(initial_seed(B), [rng.randrange(3) for _ in range(rng.randint(0, walk))])
        pairs = [(i, j) for i in range(3) for j in range(3) if i != j and abs(s.matrix[i, j] * s.matrix[j, i]) <= 3]
        if pairs:
            out.append((s, *rng.choice(pairs)))
    return out
