"""Depth basics: two samples with identical pairwise edge counts but
different depth functions.

Run: python3 demos/01_depth_basics.py
"""

from fractions import Fraction

from ufgdepth import (
    ItemUniverse,
    PosetSample,
    depth_map,
    empirical_depth,
    enumerate_ufg_family,
    poset_from_edges,
    sum_statistics,
    trivial_poset,
)

u = ItemUniverse.of("y1", "y2", "y3")

# sample A
p1 = poset_from_edges(u, [("y1", "y2")])
p2 = poset_from_edges(u, [("y1", "y2"), ("y1", "y3")])
p3 = poset_from_edges(u, [("y1", "y3"), ("y2", "y3")])
sample_a = PosetSample.from_posets([p1, p2, p3])

# sample B: same edge counts per ordered pair, different posets
q1 = poset_from_edges(u, [("y1", "y2")])
q2 = poset_from_edges(u, [("y1", "y3")])
q3 = poset_from_edges(u, [("y1", "y2"), ("y2", "y3")])
sample_b = PosetSample.from_posets([q1, q2, q3])

print("sum statistics agree:",
      sum_statistics(sample_a).counts == sum_statistics(sample_b).counts)

for name, sample in (("A", sample_a), ("B", sample_b)):
    fam = enumerate_ufg_family(sample)
    print(f"\nsample {name}: {len(fam.sets)} union-free generic sets, "
          f"total weight {fam.total_weight}")
    for s in fam.sets:
        members = ", ".join(repr(sample.unique[i]) for i in s.member_ids)
        print(f"  weight {s.weight}: {{{members}}}")
    dm = depth_map(sample, fam)
    print("  deepest:", *dm.argmax())
    print("  depth of the trivial poset:",
          empirical_depth(trivial_poset(u), sample, fam))

# the depth separates the samples even though edge counts cannot
fa = enumerate_ufg_family(sample_a)
fb = enumerate_ufg_family(sample_b)
print("\ndepth of", repr(p1), "under A:", empirical_depth(p1, sample_a, fa),
      " under B:", empirical_depth(p1, sample_b, fb))
assert empirical_depth(p1, sample_a, fa) == Fraction(1, 2)
assert empirical_depth(p1, sample_b, fb) == Fraction(7, 10)
