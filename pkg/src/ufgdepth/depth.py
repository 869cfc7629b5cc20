"""Empirical and population ufg depth, zero screens, triviality check.

All depth values are exact rationals; floats appear only when rendering.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import EmptyInput, FamilySampleMismatch, UniverseTooLarge
from .family import PosetSample, UfgFamily, enumerate_ufg_family
from .poset import (
    DEFAULT_ENUM_LIMIT,
    ItemUniverse,
    Poset,
    enumerate_posets,
    transitive_reduction,
)

SCOPE_ALL = "all-posets"
SCOPE_OBSERVED = "observed-only"
SCOPE_EXPLICIT = "explicit-candidate-list"


@dataclass(frozen=True)
class DiscretePmf:
    """A probability mass function on posets, with exact rational masses."""

    support: tuple[Poset, ...]
    mass: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.support:
            raise EmptyInput("pmf needs nonempty support")
        if any(w < 0 for w in self.mass):
            raise ValueError("negative probability mass")
        if sum(self.mass, Fraction(0)) != 1:
            raise ValueError("masses must sum to one exactly")

    @classmethod
    def from_sample(cls, sample: PosetSample) -> "DiscretePmf":
        n = sample.n
        return cls(sample.unique, tuple(Fraction(c, n) for c in sample.counts))


@dataclass(frozen=True)
class DepthMap:
    """Depth per poset over some scope, plus the producing sample's hash."""

    entries: tuple[tuple[Poset, Fraction], ...]
    scope: str
    sample_hash: str
    trivial: bool = False

    def depth(self, p: Poset) -> Fraction:
        for q, d in self.entries:
            if q == p:
                return d
        raise KeyError(f"{p!r} not in depth map scope")

    def ranked(self) -> list[tuple[Poset, Fraction]]:
        """Descending by depth, ties by canonical poset order."""
        return sorted(self.entries, key=lambda e: (-e[1], e[0].mask))

    def argmax(self) -> tuple[Poset, Fraction]:
        return self.ranked()[0]


def _set_bounds(sample: PosetSample, family: UfgFamily) -> list[tuple[int, int, Fraction]]:
    """(intersection mask, union mask, weight) per family set."""
    u = sample.universe
    out = []
    for s in family.sets:
        inter = u.full_mask
        union = 0
        for i in s.member_ids:
            inter &= sample.unique[i].mask
            union |= sample.unique[i].mask
        out.append((inter, union, s.weight))
    return out


def empirical_depth(p: Poset, sample: PosetSample, family: UfgFamily) -> Fraction:
    """c_n times the total weight of family sets whose closure contains p."""
    if family.sample_hash != sample.content_hash():
        raise FamilySampleMismatch("family was not produced from this sample")
    if family.total_weight == 0:
        return Fraction(0)
    acc = Fraction(0)
    for inter, union, w in _set_bounds(sample, family):
        if inter & ~p.mask == 0 and p.mask & ~union == 0:
            acc += w
    return acc * family.c_n


def depth_map(sample: PosetSample, family: UfgFamily,
              scope: str | Sequence[Poset] = SCOPE_ALL,
              enum_limit: int = DEFAULT_ENUM_LIMIT) -> DepthMap:
    """Evaluate the empirical depth over a whole scope of query posets."""
    if family.sample_hash != sample.content_hash():
        raise FamilySampleMismatch("family was not produced from this sample")
    if scope == SCOPE_ALL:
        if sample.universe.m > enum_limit:
            raise UniverseTooLarge(sample.universe.m, enum_limit)
        queries = enumerate_posets(sample.universe, enum_limit)
        scope_name = SCOPE_ALL
    elif scope == SCOPE_OBSERVED:
        queries = list(sample.unique)
        scope_name = SCOPE_OBSERVED
    else:
        queries = sorted(set(scope), key=lambda p: p.mask)
        scope_name = SCOPE_EXPLICIT

    trivial = family.total_weight == 0
    bounds = _set_bounds(sample, family)
    c_n = family.c_n
    entries = []
    for q in queries:
        if trivial:
            entries.append((q, Fraction(0)))
            continue
        acc = Fraction(0)
        qm = q.mask
        for inter, union, w in bounds:
            if inter & ~qm == 0 and qm & ~union == 0:
                acc += w
        entries.append((q, acc * c_n))
    return DepthMap(tuple(entries), scope_name, family.sample_hash, trivial)


# ---------------------------------------------------------------------------
# screens and triviality

ZERO_MISSING_PAIR = "zero-missing-pair"
ZERO_UNIVERSAL_PAIR = "zero-universal-pair"
NOT_SCREENED = "not-screened"


def zero_depth_screen(p: Poset, sample: PosetSample) -> str:
    """Forced-zero checks from the sample's edge structure.

    Only asserted for non-trivial samples; a screened poset is guaranteed to
    have empirical depth zero.
    """
    if triviality_check(sample):
        return NOT_SCREENED
    u = sample.universe
    offdiag = ~u.diagonal_mask & u.full_mask
    union_obs = 0
    inter_obs = u.full_mask
    for q in sample.unique:
        union_obs |= q.mask
        inter_obs &= q.mask
    if p.mask & ~union_obs & offdiag:
        return ZERO_MISSING_PAIR
    if inter_obs & ~p.mask & offdiag:
        return ZERO_UNIVERSAL_PAIR
    return NOT_SCREENED


def triviality_check(sample: PosetSample) -> bool:
    """True iff the depth function is identically zero for this sample:
    one unique poset, or a covering pair (containment, full relations
    differing by exactly one pair)."""
    uniq = sample.unique
    if len(uniq) == 1:
        return True
    if len(uniq) == 2:
        a, b = uniq
        if a.contains(b) and bin(a.mask & ~b.mask).count("1") == 1:
            return True
        if b.contains(a) and bin(b.mask & ~a.mask).count("1") == 1:
            return True
    return False


# ---------------------------------------------------------------------------
# population depth


def population_depth(p: Poset, pmf: DiscretePmf,
                     enum_limit: int = DEFAULT_ENUM_LIMIT) -> Fraction:
    """Depth under an arbitrary pmf; the family is built on the support,
    which carries all nonzero summands."""
    u = pmf.support[0].universe
    if u.m > enum_limit:
        raise UniverseTooLarge(u.m, enum_limit)
    family = _support_family(pmf, enum_limit)
    if family is None:
        return Fraction(0)
    bounds, total = family
    if total == 0:
        return Fraction(0)
    acc = Fraction(0)
    for inter, union, w in bounds:
        if inter & ~p.mask == 0 and p.mask & ~union == 0:
            acc += w
    return acc / total


def _support_family(pmf: DiscretePmf, enum_limit: int):
    from .family import _enumerate_family_indices, max_set_size

    u = pmf.support[0].universe
    masks = [p.mask for p in pmf.support]
    cap = max_set_size(u.m)
    bounds = []
    total = Fraction(0)
    for ids in _enumerate_family_indices(masks, u, cap, enum_limit):
        w = Fraction(1)
        inter = u.full_mask
        union = 0
        for i in ids:
            w *= pmf.mass[i]
            inter &= masks[i]
            union |= masks[i]
        if w == 0:
            continue
        bounds.append((inter, union, w))
        total += w
    if not bounds:
        return None
    return bounds, total


# ---------------------------------------------------------------------------
# export


def depth_map_to_csv(dm: DepthMap) -> str:
    lines = ["poset_id,tr_edges,depth_rational,depth_decimal"]
    for idx, (p, d) in enumerate(dm.ranked()):
        edges = ";".join(f"{a}<{b}" for a, b in p.hasse_edges())
        lines.append(f"{idx},{edges},{d.numerator}/{d.denominator},{float(d):.4f}")
    return "\n".join(lines) + "\n"


def depth_map_to_json(dm: DepthMap) -> str:
    return json.dumps({
        "scope": dm.scope,
        "sample_hash": dm.sample_hash,
        "trivial": dm.trivial,
        "entries": [{
            "edges": [[a, b] for a, b in p.hasse_edges()],
            "depth": f"{d.numerator}/{d.denominator}",
            "depth_decimal": round(float(d), 4),
        } for p, d in dm.ranked()],
    }, indent=2)
