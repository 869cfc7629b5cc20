import random
from fractions import Fraction

import pytest

from ufgdepth import (
    DiscretePmf,
    FamilySampleMismatch,
    ItemUniverse,
    PosetSample,
    SCOPE_ALL,
    SCOPE_EXPLICIT,
    SCOPE_OBSERVED,
    depth_map,
    depth_map_to_csv,
    depth_map_to_json,
    empirical_depth,
    enumerate_posets,
    enumerate_ufg_family,
    population_depth,
    poset_from_edges,
    triviality_check,
    trivial_poset,
    zero_depth_screen,
)
from ufgdepth.depth import NOT_SCREENED
from tests.conftest import random_sample


def test_worked_depths(u3, worked_sample):
    sample, (p1, p2, p3) = worked_sample
    fam = enumerate_ufg_family(sample)
    assert empirical_depth(trivial_poset(u3), sample, fam) == Fraction(1, 2)
    assert empirical_depth(poset_from_edges(u3, [("y3", "y1")]), sample, fam) == 0
    total = poset_from_edges(u3, [("y1", "y3"), ("y3", "y2")])
    assert empirical_depth(total, sample, fam) == 0
    assert empirical_depth(p1, sample, fam) == Fraction(1, 2)
    assert empirical_depth(p2, sample, fam) == 1


def test_worked_depths_b(worked_sample_b):
    sample, (q1, q2, q3) = worked_sample_b
    fam = enumerate_ufg_family(sample)
    assert empirical_depth(q1, sample, fam) == Fraction(7, 10)


def test_depth_range_and_scope(u3, worked_sample):
    sample, _ = worked_sample
    fam = enumerate_ufg_family(sample)
    dm = depth_map(sample, fam, scope=SCOPE_ALL)
    assert dm.scope == SCOPE_ALL and len(dm.entries) == 19
    assert all(0 <= d <= 1 for _, d in dm.entries)
    obs = depth_map(sample, fam, scope=SCOPE_OBSERVED)
    assert len(obs.entries) == 3
    explicit = depth_map(sample, fam, scope=[trivial_poset(u3)])
    assert explicit.scope == SCOPE_EXPLICIT and len(explicit.entries) == 1


def test_family_sample_mismatch(u3, worked_sample, worked_sample_b):
    s1, _ = worked_sample
    s2, _ = worked_sample_b
    fam = enumerate_ufg_family(s1)
    with pytest.raises(FamilySampleMismatch):
        empirical_depth(trivial_poset(u3), s2, fam)
    with pytest.raises(FamilySampleMismatch):
        depth_map(s2, fam)


def test_triviality(u3):
    p = poset_from_edges(u3, [("y1", "y2")])
    assert triviality_check(PosetSample.from_posets([p, p, p]))
    q = poset_from_edges(u3, [("y1", "y2"), ("y1", "y3")])
    # q covers p: full relations differ by exactly the pair (y1, y3)
    assert triviality_check(PosetSample.from_posets([p, q]))
    r = poset_from_edges(u3, [("y1", "y3")])
    assert not triviality_check(PosetSample.from_posets([p, r]))


def test_trivial_sample_has_empty_family_and_zero_depth(u3):
    p = poset_from_edges(u3, [("y1", "y2")])
    q = poset_from_edges(u3, [("y1", "y2"), ("y1", "y3")])
    for obs in ([p, p], [p, q]):
        sample = PosetSample.from_posets(obs)
        fam = enumerate_ufg_family(sample)
        assert not fam.sets and fam.total_weight == 0
        dm = depth_map(sample, fam)
        assert dm.trivial and all(d == 0 for _, d in dm.entries)


def test_zero_screen_sound_exhaustive(u3):
    rng = random.Random(17)
    for _ in range(20):
        sample = random_sample(u3, rng, rng.randint(2, 6))
        fam = enumerate_ufg_family(sample)
        for q in enumerate_posets(u3):
            if zero_depth_screen(q, sample) != NOT_SCREENED:
                assert empirical_depth(q, sample, fam) == 0


def test_zero_screen_not_asserted_on_trivial(u3):
    p = poset_from_edges(u3, [("y1", "y2")])
    sample = PosetSample.from_posets([p, p])
    for q in enumerate_posets(u3):
        assert zero_depth_screen(q, sample) == NOT_SCREENED


def test_population_depth_matches_empirical_for_uniform(u3, worked_sample):
    sample, _ = worked_sample
    fam = enumerate_ufg_family(sample)
    pmf = DiscretePmf.from_sample(sample)
    for q in enumerate_posets(u3):
        assert population_depth(q, pmf) == empirical_depth(q, sample, fam)


def test_pmf_validation(u3):
    p = poset_from_edges(u3, [("y1", "y2")])
    with pytest.raises(ValueError):
        DiscretePmf((p,), (Fraction(1, 2),))
    DiscretePmf((p,), (Fraction(1),))


def test_exports(worked_sample):
    sample, _ = worked_sample
    fam = enumerate_ufg_family(sample)
    dm = depth_map(sample, fam)
    csv = depth_map_to_csv(dm)
    assert csv.splitlines()[0] == "poset_id,tr_edges,depth_rational,depth_decimal"
    assert "1/2" in csv and "0.5000" in csv
    js = depth_map_to_json(dm)
    assert '"scope"' in js and dm.sample_hash in js
