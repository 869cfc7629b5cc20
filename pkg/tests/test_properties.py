"""Property-based invariants, mostly over all posets on small ground sets."""

import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from ufgdepth import (
    ItemUniverse,
    PosetSample,
    closure,
    closure_membership,
    depth_map,
    empirical_depth,
    enumerate_posets,
    enumerate_ufg_family,
    is_ufg,
    poset_from_edges,
    transitive_hull,
    transitive_reduction,
    ufg_witness,
)
from ufgdepth.poset import Poset, Relation

U3 = ItemUniverse.of("y1", "y2", "y3")
U4 = ItemUniverse.of("a", "b", "c", "d")
POSETS3 = enumerate_posets(U3)
POSETS4 = enumerate_posets(U4)

posets3 = st.sampled_from(POSETS3)
posets4 = st.sampled_from(POSETS4)
subsets3 = st.lists(posets3, min_size=1, max_size=5, unique=True)
samples3 = st.lists(posets3, min_size=1, max_size=8).map(PosetSample.from_posets)


@given(subsets3)
def test_closure_is_extensive_isotone_idempotent(P):
    c = closure(P)
    assert set(P) <= set(c.members)                      # extensive
    assert set(closure(c.members).members) == set(c.members)  # idempotent
    bigger = set(P) | {POSETS3[0]}
    assert set(c.members) <= set(closure(sorted(bigger, key=lambda p: p.mask)).members)


@given(posets4)
def test_hull_reduction_roundtrip(p):
    assert transitive_hull(transitive_reduction(p)) == p


@given(posets3, posets3)
def test_closure_membership_matches_materialization(p, q):
    assert closure_membership(p, [q, POSETS3[5]]) == (p in closure([q, POSETS3[5]]))


@given(st.lists(posets4, min_size=2, max_size=4, unique=True))
@settings(max_examples=60, deadline=None)
def test_witness_soundness(S):
    w = ufg_witness(S)
    if w is not None:
        q = w.witness
        assert closure_membership(q, S)
        assert q not in S
        for p in S:
            rest = [r for r in S if r != p]
            assert not closure_membership(q, rest)
        assert is_ufg(S)


@given(samples3)
@settings(max_examples=40, deadline=None)
def test_depth_in_unit_interval_and_observed_max(sample):
    fam = enumerate_ufg_family(sample)
    dm = depth_map(sample, fam)
    assert all(0 <= d <= 1 for _, d in dm.entries)
    if fam.sets:
        # weights are a probability-product measure; total never exceeds 1
        assert 0 < fam.total_weight <= 1


@given(samples3)
@settings(max_examples=30, deadline=None)
def test_duplicating_the_whole_sample_preserves_depth(sample):
    doubled = PosetSample.from_posets(sample.observations() * 2)
    f1 = enumerate_ufg_family(sample)
    f2 = enumerate_ufg_family(doubled)
    for q in POSETS3:
        assert empirical_depth(q, sample, f1) == empirical_depth(q, doubled, f2)


@given(samples3, st.permutations(["y1", "y2", "y3"]))
@settings(max_examples=30, deadline=None)
def test_relabeling_invariance(sample, perm):
    mapping = dict(zip(("y1", "y2", "y3"), perm))

    def relabel(p: Poset) -> Poset:
        pairs = [(mapping[a], mapping[b]) for a, b in p.pairs()]
        return transitive_hull(Relation.from_pairs(U3, pairs))

    relabeled = PosetSample.from_posets([relabel(p) for p in sample.observations()])
    f1 = enumerate_ufg_family(sample)
    f2 = enumerate_ufg_family(relabeled)
    for q in POSETS3:
        assert empirical_depth(q, sample, f1) == \
            empirical_depth(relabel(q), relabeled, f2)


@given(samples3)
@settings(max_examples=30, deadline=None)
def test_restructuring_along_observed_intersection_and_union(sample):
    # depth can only be positive between the intersection-closure floor and
    # the union ceiling of some family set; in particular any poset strictly
    # above every observed union has depth zero
    fam = enumerate_ufg_family(sample)
    union_obs = 0
    for p in sample.unique:
        union_obs |= p.mask
    for q in POSETS3:
        if q.mask & ~union_obs:
            assert empirical_depth(q, sample, fam) == 0


def test_depth_sums_consistent_with_family_weights():
    rng = random.Random(31)
    for _ in range(20):
        obs = [rng.choice(POSETS3) for _ in range(rng.randint(2, 6))]
        sample = PosetSample.from_posets(obs)
        fam = enumerate_ufg_family(sample)
        if not fam.sets:
            continue
        dm = depth_map(sample, fam)
        # every family set's closure contains at least its members, so each
        # member's depth is at least the set weight times c_n
        for s in fam.sets:
            for i in s.member_ids:
                assert dm.depth(sample.unique[i]) >= s.weight * fam.c_n
