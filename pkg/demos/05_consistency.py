"""Monte-Carlo illustration that the empirical depth approaches the
population depth uniformly as the sample grows.

Run: python3 demos/05_consistency.py
"""

import random
from fractions import Fraction

from ufgdepth import (
    DiscretePmf,
    ItemUniverse,
    PosetSample,
    depth_map,
    enumerate_posets,
    enumerate_ufg_family,
    population_depth,
    poset_from_edges,
)

u = ItemUniverse.of("y1", "y2", "y3")
support = (poset_from_edges(u, [("y1", "y2")]),
           poset_from_edges(u, [("y1", "y3")]),
           poset_from_edges(u, [("y1", "y2"), ("y2", "y3")]))
pmf = DiscretePmf(support, (Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)))
queries = enumerate_posets(u)
truth = {q: population_depth(q, pmf) for q in queries}
weights = [float(w) for w in pmf.mass]


def sup_gap(rng: random.Random, n: int) -> float:
    draws = rng.choices(support, weights=weights, k=n)
    sample = PosetSample.from_posets(draws)
    dm = depth_map(sample, enumerate_ufg_family(sample))
    return float(max(abs(dm.depth(q) - truth[q]) for q in queries))


print("sup |empirical - population| over all 19 posets, median of 20 seeds:")
for n in (25, 50, 100, 200, 400, 800):
    gaps = sorted(sup_gap(random.Random(1000 + s), n) for s in range(20))
    print(f"  n={n:>4}: {gaps[10]:.4f}")
