"""Enumerating all posets on small ground sets, linear extensions, and
exact order dimension (including the classic 8-element dimension-4 crown).

Run: python3 demos/02_enumeration_and_dimension.py
"""

import time

from ufgdepth import (
    ItemUniverse,
    count_posets,
    enumerate_posets,
    linear_extensions,
    order_dimension,
    poset_from_edges,
    trivial_poset,
)

for m in range(1, 6):
    t0 = time.time()
    print(f"m={m}: {count_posets(m):>5} posets  ({time.time() - t0:.3f}s)")

u = ItemUniverse.of("y1", "y2", "y3")
v = poset_from_edges(u, [("y1", "y2"), ("y1", "y3")])
print("\nlinear extensions of", repr(v), "->",
      [repr(e) for e in linear_extensions(v)])
print("linear extensions of the trivial poset:",
      len(linear_extensions(trivial_poset(u))))

print("\norder dimension of every poset on 3 items:",
      sorted({order_dimension(p, cap=3) for p in enumerate_posets(u)}))

# crown: a1..a4 below every b_j except its own partner
labels = tuple(f"a{i}" for i in range(1, 5)) + tuple(f"b{i}" for i in range(1, 5))
uc = ItemUniverse(labels)
crown = poset_from_edges(uc, [(f"a{i}", f"b{j}")
                              for i in range(1, 5) for j in range(1, 5) if i != j])
t0 = time.time()
print(f"\ncrown on 8 items: dimension {order_dimension(crown, cap=5, budget=10**7)} "
      f"({time.time() - t0:.2f}s)")
print("with cap 3 the search reports:", order_dimension(crown, cap=3, budget=10**7))
