"""Posets over a finite labeled ground set, as bit-matrix relations.

A relation on m items is stored as a single Python int interpreted as the
row-major m x m incidence matrix, most significant bit first.  With this
packing, integer comparison of two masks coincides with lexicographic
comparison of the flattened bit matrices, which is the canonical order used
for every set-valued output in the package.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Iterator, Sequence

from .errors import (
    CycleDetected,
    EmptyInput,
    NotAntisymmetric,
    NotReflexive,
    NotTransitive,
    SearchBudgetExceeded,
    UniverseTooLarge,
)

#: beyond this many items, materializing all posets is refused by default
DEFAULT_ENUM_LIMIT = 6

#: default cap on linear-extension / dimension search work
DEFAULT_SEARCH_BUDGET = 100_000


def _bit(i: int, j: int, m: int) -> int:
    return 1 << (m * m - 1 - (i * m + j))


@dataclass(frozen=True)
class ItemUniverse:
    """The ground set: an ordered tuple of distinct item names."""

    labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.labels) < 1:
            raise EmptyInput("universe needs at least one item")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"duplicate item labels: {self.labels}")
        object.__setattr__(self, "labels", tuple(self.labels))

    @classmethod
    def of(cls, *labels: str) -> "ItemUniverse":
        return cls(tuple(labels))

    @property
    def m(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def bit(self, a: str, b: str) -> int:
        return _bit(self.index(a), self.index(b), self.m)

    @property
    def diagonal_mask(self) -> int:
        m = self.m
        mask = 0
        for i in range(m):
            mask |= _bit(i, i, m)
        return mask

    @property
    def full_mask(self) -> int:
        return (1 << (self.m * self.m)) - 1

    def pairs_of(self, mask: int, *, skip_diagonal: bool = True) -> list[tuple[str, str]]:
        """Decode a mask into labeled pairs, row-major order."""
        m = self.m
        out = []
        for i in range(m):
            for j in range(m):
                if i == j and skip_diagonal:
                    continue
                if mask & _bit(i, j, m):
                    out.append((self.labels[i], self.labels[j]))
        return out

    def mask_of(self, pairs: Iterable[tuple[str, str]]) -> int:
        mask = 0
        for a, b in pairs:
            mask |= self.bit(a, b)
        return mask


@dataclass(frozen=True)
class Relation:
    """An arbitrary binary relation; no structural guarantees."""

    universe: ItemUniverse
    mask: int

    def has(self, a: str, b: str) -> bool:
        return bool(self.mask & self.universe.bit(a, b))

    def pairs(self, *, skip_diagonal: bool = True) -> list[tuple[str, str]]:
        return self.universe.pairs_of(self.mask, skip_diagonal=skip_diagonal)

    @classmethod
    def from_pairs(cls, universe: ItemUniverse, pairs: Iterable[tuple[str, str]]) -> "Relation":
        return cls(universe, universe.mask_of(pairs))


@dataclass(frozen=True, order=True)
class Poset:
    """A reflexive, antisymmetric, transitive relation.

    Construct via :func:`validate_poset` or :func:`transitive_hull`; the
    constructor itself does not re-check the axioms.  Ordering and equality
    are bit-exact on the incidence matrix.
    """

    universe: ItemUniverse = field(compare=False)
    mask: int

    def has(self, a: str, b: str) -> bool:
        return bool(self.mask & self.universe.bit(a, b))

    def leq(self, a: str, b: str) -> bool:
        return self.has(a, b)

    def pairs(self, *, skip_diagonal: bool = True) -> list[tuple[str, str]]:
        return self.universe.pairs_of(self.mask, skip_diagonal=skip_diagonal)

    def contains(self, other: "Poset") -> bool:
        return other.mask & ~self.mask == 0

    def is_total(self) -> bool:
        m = self.universe.m
        for i in range(m):
            for j in range(i + 1, m):
                if not self.mask & (_bit(i, j, m) | _bit(j, i, m)):
                    return False
        return True

    def hasse_edges(self) -> list[tuple[str, str]]:
        return transitive_reduction(self).pairs()

    def __repr__(self):
        edges = ",".join(f"{a}<{b}" for a, b in self.hasse_edges())
        return f"Poset({edges or 'trivial'})"


@dataclass(frozen=True)
class PosetSet:
    """A duplicate-free set of posets over one universe, canonically ordered."""

    members: tuple[Poset, ...]

    def __post_init__(self):
        members = tuple(sorted(set(self.members), key=lambda p: p.mask))
        universes = {p.universe for p in members}
        if len(universes) > 1:
            raise ValueError("posets span multiple universes")
        object.__setattr__(self, "members", members)

    def __iter__(self) -> Iterator[Poset]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, p: Poset) -> bool:
        return p in self.members

    @property
    def universe(self) -> ItemUniverse:
        if not self.members:
            raise EmptyInput("empty poset set has no universe")
        return self.members[0].universe

    def intersection_mask(self) -> int:
        mask = self.universe.full_mask
        for p in self.members:
            mask &= p.mask
        return mask

    def union_mask(self) -> int:
        mask = 0
        for p in self.members:
            mask |= p.mask
        return mask


# ---------------------------------------------------------------------------
# validation, hull, reduction


def _first_transitivity_gap(mask: int, m: int) -> tuple[int, int] | None:
    """First (row-major) pair implied by composition but absent, or None."""
    rows = [(mask >> (m * m - (i + 1) * m)) & ((1 << m) - 1) for i in range(m)]
    for i in range(m):
        reach = 0
        row = rows[i]
        for k in range(m):
            if row & (1 << (m - 1 - k)) and k != i:
                reach |= rows[k]
        gap = reach & ~row
        if gap:
            for j in range(m):
                if gap & (1 << (m - 1 - j)):
                    return i, j
    return None


def validate_poset(r: Relation) -> Poset:
    """Check the three poset axioms; raise on the first violation (row-major)."""
    u, m, mask = r.universe, r.universe.m, r.mask
    for i in range(m):
        if not mask & _bit(i, i, m):
            raise NotReflexive(u.labels[i])
    for i in range(m):
        for j in range(i + 1, m):
            if mask & _bit(i, j, m) and mask & _bit(j, i, m):
                raise NotAntisymmetric(u.labels[i], u.labels[j])
    gap = _first_transitivity_gap(mask, m)
    if gap is not None:
        raise NotTransitive(u.labels[gap[0]], u.labels[gap[1]])
    return Poset(u, mask)


def transitive_hull(r: Relation) -> Poset:
    """Reflexive-transitive closure; raises CycleDetected if not a poset."""
    u, m = r.universe, r.universe.m
    rows = [(r.mask >> (m * m - (i + 1) * m)) & ((1 << m) - 1) for i in range(m)]
    for i in range(m):
        rows[i] |= 1 << (m - 1 - i)
    # Warshall on row bitsets
    for k in range(m):
        kbit = 1 << (m - 1 - k)
        krow = rows[k]
        for i in range(m):
            if rows[i] & kbit:
                rows[i] |= krow
    mask = 0
    for i in range(m):
        mask = (mask << m) | rows[i]
    for i in range(m):
        for j in range(i + 1, m):
            if mask & _bit(i, j, m) and mask & _bit(j, i, m):
                raise CycleDetected(u.labels[i], u.labels[j])
    return Poset(u, mask)


def transitive_reduction(p: Poset) -> Relation:
    """Delete the diagonal and every pair implied by composition."""
    u, m = p.universe, p.universe.m
    strict = p.mask & ~u.diagonal_mask
    reduced = strict
    for i in range(m):
        for j in range(m):
            if i == j or not strict & _bit(i, j, m):
                continue
            for k in range(m):
                if k != i and k != j and strict & _bit(i, k, m) and strict & _bit(k, j, m):
                    reduced &= ~_bit(i, j, m)
                    break
    return Relation(u, reduced)


def poset_from_edges(universe: ItemUniverse, edges: Iterable[tuple[str, str]]) -> Poset:
    """Transitive reflexive closure of a generating edge set."""
    return transitive_hull(Relation.from_pairs(universe, edges))


def trivial_poset(universe: ItemUniverse) -> Poset:
    return Poset(universe, universe.diagonal_mask)


# ---------------------------------------------------------------------------
# closure operator


def closure_membership(p: Poset, P: PosetSet | Sequence[Poset]) -> bool:
    """Whether intersection(P) <= p <= union(P), bitwise."""
    members = P.members if isinstance(P, PosetSet) else tuple(P)
    if not members:
        raise EmptyInput("closure of the empty set is empty by convention")
    inter = members[0].universe.full_mask
    union = 0
    for q in members:
        inter &= q.mask
        union |= q.mask
    return inter & ~p.mask == 0 and p.mask & ~union == 0


def closure(P: PosetSet | Sequence[Poset], enum_limit: int = DEFAULT_ENUM_LIMIT) -> PosetSet:
    """Materialize the closure of P: every poset between its intersection and union."""
    members = P.members if isinstance(P, PosetSet) else tuple(P)
    if not members:
        return PosetSet(())
    u = members[0].universe
    if u.m > enum_limit:
        raise UniverseTooLarge(u.m, enum_limit)
    inter = u.full_mask
    union = 0
    for q in members:
        inter &= q.mask
        union |= q.mask
    out = [q for q in enumerate_posets(u, enum_limit=enum_limit)
           if inter & ~q.mask == 0 and q.mask & ~union == 0]
    return PosetSet(tuple(out))


def posets_between(universe: ItemUniverse, lower_mask: int, upper_mask: int) -> list[Poset]:
    """All posets q with lower <= q <= upper, by DFS over the free edges.

    Unlike :func:`closure` this needs no global enumeration, so it stays
    usable past the enumeration limit as long as the free-edge set is small.
    """
    u, m = universe, universe.m
    free = (upper_mask & ~lower_mask) & ~u.diagonal_mask
    free_bits = [b for b in (_bit(i, j, m) for i in range(m) for j in range(m) if i != j)
                 if free & b]
    out = []
    seen = set()

    def rec(idx: int, mask: int):
        if idx == len(free_bits):
            if mask in seen:
                return
            if _first_transitivity_gap(mask, m) is None:
                ok = True
                for i in range(m):
                    for j in range(i + 1, m):
                        if mask & _bit(i, j, m) and mask & _bit(j, i, m):
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    seen.add(mask)
                    out.append(Poset(u, mask))
            return
        rec(idx + 1, mask)
        rec(idx + 1, mask | free_bits[idx])

    rec(0, lower_mask | u.diagonal_mask)
    out.sort(key=lambda p: p.mask)
    return out


# ---------------------------------------------------------------------------
# enumeration of all posets


@lru_cache(maxsize=None)
def _all_poset_masks(m: int) -> tuple[int, ...]:
    """Masks of every poset on m items, canonically sorted.

    DFS over the unordered item pairs; each pair is either unrelated or
    oriented one way.  A transitivity conflict among decided pairs is pruned
    as soon as the last pair of the offending triple is decided, so every
    leaf is a valid poset with no final check needed.
    """
    diag = 0
    for i in range(m):
        diag |= _bit(i, i, m)
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    masks: list[int] = []

    def decided(state, i, j):
        return (i, j) in state

    def consistent(present: dict, absent: set, i, j, add: bool) -> bool:
        # present maps decided-present directed pairs; absent is decided-absent
        if add:
            # new edge (i, j): forbid p(j,k) & absent(i,k) and p(k,i) & absent(k,j)
            for k in range(m):
                if k in (i, j):
                    continue
                if (j, k) in present and (i, k) in absent:
                    return False
                if (k, i) in present and (k, j) in absent:
                    return False
        else:
            # (i, j) decided absent: forbid a decided composition i -> k -> j
            for k in range(m):
                if k in (i, j):
                    continue
                if (i, k) in present and (k, j) in present:
                    return False
        return True

    present: dict = {}
    absent: set = set()

    def rec(idx: int, mask: int):
        if idx == len(pairs):
            masks.append(mask)
            return
        i, j = pairs[idx]
        # choice: unrelated
        if consistent(present, absent, i, j, False) and consistent(present, absent, j, i, False):
            absent.add((i, j))
            absent.add((j, i))
            rec(idx + 1, mask)
            absent.discard((i, j))
            absent.discard((j, i))
        # choice: i < j
        if consistent(present, absent, i, j, True) and consistent(present, absent, j, i, False):
            present[(i, j)] = True
            absent.add((j, i))
            rec(idx + 1, mask | _bit(i, j, m))
            del present[(i, j)]
            absent.discard((j, i))
        # choice: j < i
        if consistent(present, absent, j, i, True) and consistent(present, absent, i, j, False):
            present[(j, i)] = True
            absent.add((i, j))
            rec(idx + 1, mask | _bit(j, i, m))
            del present[(j, i)]
            absent.discard((i, j))

    rec(0, diag)
    masks.sort()
    return tuple(masks)


def enumerate_posets(u: ItemUniverse, enum_limit: int = DEFAULT_ENUM_LIMIT) -> list[Poset]:
    """Every poset on u, exactly once, in canonical order."""
    if u.m > enum_limit:
        raise UniverseTooLarge(u.m, enum_limit)
    return [Poset(u, mask) for mask in _all_poset_masks(u.m)]


def count_posets(m: int, enum_limit: int = DEFAULT_ENUM_LIMIT) -> int:
    if m > enum_limit:
        raise UniverseTooLarge(m, enum_limit)
    return len(_all_poset_masks(m))


# ---------------------------------------------------------------------------
# linear extensions and order dimension


def linear_extensions(p: Poset, budget: int | None = None) -> list[Poset]:
    """All total orders extending p, as posets, in canonical order."""
    u, m = p.universe, p.universe.m
    preds = [set() for _ in range(m)]
    for i in range(m):
        for j in range(m):
            if i != j and p.mask & _bit(i, j, m):
                preds[j].add(i)  # i below j
    out: list[Poset] = []

    def rec(placed: list[int], remaining: set):
        if budget is not None and len(out) > budget:
            raise SearchBudgetExceeded(f"more than {budget} linear extensions")
        if not remaining:
            mask = u.diagonal_mask
            for a in range(len(placed)):
                for b in range(a + 1, len(placed)):
                    mask |= _bit(placed[a], placed[b], m)
            out.append(Poset(u, mask))
            return
        for x in sorted(remaining):
            if preds[x] <= set(placed):
                placed.append(x)
                remaining.remove(x)
                rec(placed, remaining)
                remaining.add(x)
                placed.pop()

    rec([], set(range(m)))
    out.sort(key=lambda q: q.mask)
    return out


def order_dimension(p: Poset, cap: int, budget: int = DEFAULT_SEARCH_BUDGET) -> int | str:
    """Exact order dimension if <= cap, else the sentinel ">cap".

    dimension <= k iff the ordered incomparable pairs can be covered by k
    classes such that reversing each class on top of p stays acyclic: each
    class then extends to one linear extension of the realizer.  Searched by
    backtracking with first-fit symmetry breaking; `budget` caps the number
    of search nodes.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    u, m = p.universe, p.universe.m
    if p.is_total():
        return 1
    incomparable = [(i, j) for i in range(m) for j in range(m)
                    if i != j and not p.mask & (_bit(i, j, m) | _bit(j, i, m))]

    nodes = 0

    def closure_mask(mask: int) -> int | None:
        """Reflexive-transitive closure; None if it acquires a 2-cycle."""
        rows = [(mask >> (m * m - (i + 1) * m)) & ((1 << m) - 1) for i in range(m)]
        for k in range(m):
            kbit = 1 << (m - 1 - k)
            krow = rows[k]
            for i in range(m):
                if rows[i] & kbit:
                    rows[i] |= krow
        res = 0
        for i in range(m):
            res = (res << m) | rows[i]
        for i in range(m):
            for j in range(i + 1, m):
                if res & _bit(i, j, m) and res & _bit(j, i, m):
                    return None
        return res

    def feasible(k: int) -> bool:
        nonlocal nodes
        classes = [p.mask] * k

        def rec(idx: int, used: int) -> bool:
            nonlocal nodes
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(f"order-dimension search exceeded {budget} nodes")
            if idx == len(incomparable):
                return True
            a, b = incomparable[idx]
            rev = _bit(b, a, m)
            limit = min(used + 1, k)
            for c in range(limit):
                cm = classes[c]
                if cm & _bit(a, b, m):
                    continue  # class already orders a below b; cannot reverse here
                if cm & rev:
                    if rec(idx + 1, used):
                        return True
                    continue
                new = closure_mask(cm | rev)
                if new is None:
                    continue
                classes[c] = new
                if rec(idx + 1, max(used, c + 1)):
                    return True
                classes[c] = cm
            return False

        return rec(0, 0)

    for k in range(2, cap + 1):
        if feasible(k):
            return k
    return f">{cap}"


def hasse_layers(p: Poset) -> dict[str, int]:
    """Layer per item for diagram layout: length of the longest strict chain
    below it."""
    u, m = p.universe, p.universe.m
    layer = [0] * m
    # items in any topological order: count of strict predecessors works
    order = sorted(range(m),
                   key=lambda i: sum(1 for j in range(m)
                                     if j != i and p.mask & _bit(j, i, m)))
    for i in order:
        below = [layer[j] for j in range(m) if j != i and p.mask & _bit(j, i, m)]
        layer[i] = 1 + max(below) if below else 0
    return {u.labels[i]: layer[i] for i in range(m)}


# ---------------------------------------------------------------------------
# text and JSON formats


def poset_to_text(p: Poset) -> str:
    """One poset record: items header plus transitive-reduction edges."""
    lines = ["items: " + ",".join(p.universe.labels)]
    for a, b in transitive_reduction(p).pairs():
        lines.append(f"{a} < {b}")
    return "\n".join(lines)


def poset_from_text(text: str, universe: ItemUniverse | None = None) -> Poset:
    """Parse a record written by poset_to_text; hulls and validates the edges."""
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("items:"):
        raise ValueError("poset record must start with an 'items:' header")
    labels = tuple(s.strip() for s in lines[0][len("items:"):].split(",") if s.strip())
    u = universe if universe is not None else ItemUniverse(labels)
    if u.labels != labels:
        raise ValueError(f"item header {labels} does not match universe {u.labels}")
    edges = []
    for ln in lines[1:]:
        a, sep, b = ln.partition("<")
        if not sep:
            raise ValueError(f"bad edge line: {ln!r}")
        edges.append((a.strip(), b.strip()))
    return validate_poset(Relation(u, transitive_hull(Relation.from_pairs(u, edges)).mask))


def posets_to_text(posets: Sequence[Poset]) -> str:
    return "\n\n".join(poset_to_text(p) for p in posets) + "\n"


def posets_from_text(text: str, universe: ItemUniverse | None = None) -> list[Poset]:
    records = [blk for blk in text.split("\n\n") if blk.strip()]
    out = []
    for blk in records:
        p = poset_from_text(blk, universe)
        if universe is None:
            universe = p.universe
        out.append(p)
    return out


def poset_to_json(p: Poset) -> str:
    return json.dumps({
        "items": list(p.universe.labels),
        "edges": [[a, b] for a, b in transitive_reduction(p).pairs()],
    })


def poset_from_json(text: str, universe: ItemUniverse | None = None) -> Poset:
    obj = json.loads(text)
    labels = tuple(obj["items"])
    u = universe if universe is not None else ItemUniverse(labels)
    if u.labels != labels:
        raise ValueError(f"items {labels} do not match universe {u.labels}")
    return poset_from_edges(u, [tuple(e) for e in obj["edges"]])
