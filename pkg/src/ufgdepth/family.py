"""Union-free generic sets: membership tests, witnesses, and enumeration.

A set S of posets is union-free generic when its closure strictly exceeds S
and no family of closures of proper subsets covers the closure.  Membership
is decided through witness posets: S qualifies iff some q in closure(S) \\ S
avoids the closure of every S minus one member.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Sequence

from .errors import EmptyInput, MemberNotInSet, SearchBudgetExceeded, UniverseTooLarge
from .poset import (
    DEFAULT_ENUM_LIMIT,
    ItemUniverse,
    Poset,
    PosetSet,
    Relation,
    posets_to_text,
    transitive_hull,
)

DEFAULT_VC_BUDGET = 2_000_000


@dataclass(frozen=True)
class PosetSample:
    """A multiset of observed posets: unique members plus multiplicities."""

    universe: ItemUniverse
    unique: tuple[Poset, ...]
    counts: tuple[int, ...]

    @classmethod
    def from_posets(cls, posets: Sequence[Poset]) -> "PosetSample":
        if not posets:
            raise EmptyInput("sample must contain at least one poset")
        u = posets[0].universe
        tally: dict[Poset, int] = {}
        for p in posets:
            if p.universe != u:
                raise ValueError("sample posets span multiple universes")
            tally[p] = tally.get(p, 0) + 1
        uniq = tuple(sorted(tally, key=lambda p: p.mask))
        return cls(u, uniq, tuple(tally[p] for p in uniq))

    @property
    def n(self) -> int:
        return sum(self.counts)

    def nu(self, p: Poset) -> Fraction:
        """Empirical probability of p."""
        try:
            return Fraction(self.counts[self.unique.index(p)], self.n)
        except ValueError:
            return Fraction(0)

    def observations(self) -> list[Poset]:
        out = []
        for p, c in zip(self.unique, self.counts):
            out.extend([p] * c)
        return out

    def content_hash(self) -> str:
        payload = posets_to_text(self.unique) + repr(self.counts)
        return hashlib.sha256(payload.encode()).hexdigest()


@dataclass(frozen=True)
class DistinguishingSets:
    """Edges separating one member of a set from all the others."""

    with_edges: tuple[tuple[str, str], ...]
    without_edges: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class UfgSet:
    """One union-free generic set, as indices into a sample's unique posets."""

    member_ids: tuple[int, ...]
    weight: Fraction


@dataclass(frozen=True)
class UfgFamily:
    """The enumerated family over a sample, with product weights."""

    sets: tuple[UfgSet, ...]
    total_weight: Fraction
    vc_obs: int
    cap: int
    sample_hash: str

    @property
    def c_n(self) -> Fraction | None:
        if self.total_weight == 0:
            return None
        return 1 / self.total_weight


@dataclass(frozen=True)
class UfgWitness:
    """A minimal-style witness poset with the edge chosen for each member."""

    witness: Poset
    chosen_edges: dict[Poset, tuple[str, str]]


# ---------------------------------------------------------------------------
# distinguishing sets and membership


def _members(S: PosetSet | Sequence[Poset]) -> tuple[Poset, ...]:
    return S.members if isinstance(S, PosetSet) else tuple(sorted(set(S), key=lambda p: p.mask))


def distinguishing_sets(S: PosetSet | Sequence[Poset], p: Poset) -> DistinguishingSets:
    members = _members(S)
    if p not in members:
        raise MemberNotInSet(f"{p!r} is not a member of the set")
    u = p.universe
    others = [q for q in members if q != p]
    union_others = 0
    inter_others = u.full_mask
    for q in others:
        union_others |= q.mask
        inter_others &= q.mask
    offdiag = ~u.diagonal_mask
    with_mask = p.mask & ~union_others & offdiag
    without_mask = inter_others & ~p.mask & offdiag
    return DistinguishingSets(
        tuple(u.pairs_of(with_mask)),
        tuple(u.pairs_of(without_mask)),
    )


def ufg_witness(S: PosetSet | Sequence[Poset]) -> UfgWitness | None:
    """Search the minimal-style witness candidates; None when none passes."""
    members = _members(S)
    if len(members) < 2:
        return None
    u = members[0].universe
    inter = u.full_mask
    union = 0
    for q in members:
        inter &= q.mask
        union |= q.mask

    dist = {p: distinguishing_sets(members, p) for p in members}
    tilde = [p for p in members if not dist[p].without_edges]
    for p in tilde:
        if not dist[p].with_edges:
            return None  # p cannot contribute to any witness

    # closures of S minus one member, as (intersection, union) mask pairs
    minus = []
    for p in members:
        mi = u.full_mask
        mu = 0
        for q in members:
            if q != p:
                mi &= q.mask
                mu |= q.mask
        minus.append((mi, mu))

    member_masks = {q.mask for q in members}
    choices = [dist[p].with_edges for p in tilde]
    for combo in product(*choices):
        mask = inter
        for edge in combo:
            mask |= u.mask_of([edge])
        try:
            cand = transitive_hull(Relation(u, mask))
        except Exception:
            continue
        if cand.mask & ~union:
            continue
        if cand.mask in member_masks:
            continue
        if any(mi & ~cand.mask == 0 and cand.mask & ~mu == 0 for mi, mu in minus):
            continue
        return UfgWitness(cand, dict(zip(tilde, combo)))
    return None


def is_ufg(S: PosetSet | Sequence[Poset],
           enum_limit: int = DEFAULT_ENUM_LIMIT) -> bool:
    """Union-free generic membership via witness search.

    The minimal-style candidate search is complete whenever a witness exists;
    as a belt-and-braces measure the full closure(S) \\ S scan runs when the
    search fails and the universe is small enough to materialize closures.
    """
    members = _members(S)
    if len(members) < 2:
        return False
    if ufg_witness(members) is not None:
        return True
    if members[0].universe.m <= enum_limit:
        return _is_ufg_scan(members)
    return False


def _is_ufg_scan(members: tuple[Poset, ...]) -> bool:
    from .poset import posets_between

    u = members[0].universe
    inter = u.full_mask
    union = 0
    for q in members:
        inter &= q.mask
        union |= q.mask
    minus = []
    for p in members:
        mi = u.full_mask
        mu = 0
        for q in members:
            if q != p:
                mi &= q.mask
                mu |= q.mask
        minus.append((mi, mu))
    member_masks = {q.mask for q in members}
    for q in posets_between(u, inter, union):
        if q.mask in member_masks:
            continue
        if all(mi & ~q.mask or q.mask & ~mu for mi, mu in minus):
            return True
    return False


def is_ufg_oracle(S: PosetSet | Sequence[Poset],
                  enum_limit: int = DEFAULT_ENUM_LIMIT) -> bool:
    """Ground truth: test the union-free and generic conditions literally.

    Materializes the closure of S and of every proper subset.  Test-only;
    exponential in #S.
    """
    from .poset import closure

    members = _members(S)
    if not members:
        return False
    u = members[0].universe
    if u.m > enum_limit:
        raise UniverseTooLarge(u.m, enum_limit)
    closed = set(closure(members, enum_limit).members)
    member_set = set(members)
    if not (closed > member_set):
        return False  # (C1) fails: closure adds nothing
    covered: set = set()
    for k in range(len(members)):
        for A in combinations(members, k):
            if A:
                covered |= set(closure(A, enum_limit).members)
    return covered != closed


# ---------------------------------------------------------------------------
# VC dimension of the observed closure system


def _shattered(A: tuple[int, ...], masks: Sequence[int], full: int) -> bool:
    """Is the index set A shattered by traces of closures on the observations?

    A trace realizing R subset A exists iff closure(R) meets A exactly in R;
    taking the closure of R itself is optimal since any realizer C has
    closure(R) <= closure(C).
    """
    k = len(A)
    for r in range(1, 1 << k):
        inter = full
        union = 0
        rest = []
        for pos in range(k):
            if r >> pos & 1:
                inter &= masks[A[pos]]
                union |= masks[A[pos]]
            else:
                rest.append(masks[A[pos]])
        for q in rest:
            if inter & ~q == 0 and q & ~union == 0:
                return False
    return True


def vc_dimension_obs(sample: PosetSample,
                     budget: int = DEFAULT_VC_BUDGET) -> int:
    """Largest observed subset shattered by closure traces; exact, level-wise.

    Shatterable sets are downward closed, so the search grows candidates
    apriori-style and stops at the first empty level.
    """
    masks = [p.mask for p in sample.unique]
    full = sample.universe.full_mask
    n = len(masks)
    tested = 0
    current = []
    for i in range(n):
        tested += 1
        if _shattered((i,), masks, full):
            current.append((i,))
    vc = 1 if current else 0
    while current:
        prev = set(current)
        nxt = []
        seen = set()
        for A in current:
            for j in range(A[-1] + 1, n):
                cand = A + (j,)
                if cand in seen:
                    continue
                seen.add(cand)
                if any(cand[:k] + cand[k + 1:] not in prev for k in range(len(cand))):
                    continue
                tested += 1
                if tested > budget:
                    raise SearchBudgetExceeded(
                        f"VC search exceeded {budget} shattering tests")
                if _shattered(cand, masks, full):
                    nxt.append(cand)
        if not nxt:
            break
        vc = len(nxt[0])
        current = nxt
    return vc


def max_set_size(m: int) -> int:
    """Universal cardinality bound for union-free generic sets."""
    return m * (m - 1) // 2 if m >= 3 else 2


def cardinality_cap(sample: PosetSample,
                    vc_budget: int = DEFAULT_VC_BUDGET) -> int:
    """min(observed VC dimension, m(m-1)/2); falls back to the latter alone
    when the VC search runs out of budget."""
    bound = max_set_size(sample.universe.m)
    try:
        vc = vc_dimension_obs(sample, budget=vc_budget)
    except SearchBudgetExceeded:
        return bound
    return min(max(vc, 2), bound)


# ---------------------------------------------------------------------------
# family enumeration


def _enumerate_family_indices(masks: Sequence[int], universe: ItemUniverse,
                              cap: int,
                              enum_limit: int = DEFAULT_ENUM_LIMIT) -> list[tuple[int, ...]]:
    """Level-wise enumeration over indices into `masks`.

    A (k+1)-set is generated only as a one-element extension of an accepted
    k-set, sound by the connectedness of the family.
    """
    posets = [Poset(universe, mk) for mk in masks]
    n = len(posets)
    accepted: list[tuple[int, ...]] = []
    level = []
    for pair in combinations(range(n), 2):
        if is_ufg([posets[i] for i in pair], enum_limit):
            level.append(pair)
    accepted.extend(level)
    size = 2
    while level and size < cap:
        seen = set()
        nxt = []
        for A in level:
            for j in range(n):
                if j in A:
                    continue
                cand = tuple(sorted(A + (j,)))
                if cand in seen:
                    continue
                seen.add(cand)
                if is_ufg([posets[i] for i in cand], enum_limit):
                    nxt.append(cand)
        nxt.sort()
        accepted.extend(nxt)
        level = nxt
        size += 1
    accepted.sort(key=lambda A: (len(A), A))
    return accepted


def enumerate_ufg_family(sample: PosetSample,
                         enum_limit: int = DEFAULT_ENUM_LIMIT,
                         vc_budget: int = DEFAULT_VC_BUDGET,
                         cap: int | None = None) -> UfgFamily:
    """All union-free generic subsets of the observed posets, with weights.

    `cap` lowers the computed cardinality cap; a looser value is ignored
    since the computed cap is already sound.
    """
    masks = [p.mask for p in sample.unique]
    try:
        vc = vc_dimension_obs(sample, budget=vc_budget)
    except SearchBudgetExceeded:
        vc = -1  # unknown; bound by m(m-1)/2 alone
    bound = max_set_size(sample.universe.m)
    computed = bound if vc < 0 else min(max(vc, 2), bound)
    cap = computed if cap is None else min(cap, computed)

    n = sample.n
    sets = []
    for ids in _enumerate_family_indices(masks, sample.universe, cap, enum_limit):
        w = Fraction(1)
        for i in ids:
            w *= Fraction(sample.counts[i], n)
        sets.append(UfgSet(ids, w))
    total = sum((s.weight for s in sets), Fraction(0))
    return UfgFamily(tuple(sets), total,
                     vc if vc >= 0 else bound,
                     cap, sample.content_hash())


# ---------------------------------------------------------------------------
# family export / import (JSON lines)


def family_to_jsonl(family: UfgFamily, sample: PosetSample) -> str:
    lines = [json.dumps({
        "sample_hash": family.sample_hash,
        "total_weight": str(family.total_weight),
        "vc_obs": family.vc_obs,
        "cap": family.cap,
    })]
    for s in family.sets:
        lines.append(json.dumps({
            "members": list(s.member_ids),
            "edges": [[list(e) for e in sample.unique[i].hasse_edges()]
                      for i in s.member_ids],
            "weight": f"{s.weight.numerator}/{s.weight.denominator}",
        }))
    return "\n".join(lines) + "\n"


def family_from_jsonl(text: str) -> UfgFamily:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = json.loads(lines[0])
    sets = []
    for ln in lines[1:]:
        obj = json.loads(ln)
        num, _, den = obj["weight"].partition("/")
        sets.append(UfgSet(tuple(obj["members"]), Fraction(int(num), int(den or 1))))
    return UfgFamily(tuple(sets), Fraction(head["total_weight"]),
                     head["vc_obs"], head["cap"], head["sample_hash"])
