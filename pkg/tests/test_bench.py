from decimal import Decimal
from fractions import Fraction

import pytest

from ufgdepth import (
    AmbiguousRanking,
    DuplicateCell,
    IndifferentAlgorithms,
    MissingCell,
    PerformanceTable,
    ScopeMismatch,
    UnknownOrientation,
    build_poset,
    depth_map,
    dispersion,
    edge_persistence,
    enumerate_ufg_family,
    ingest,
    parse_orientations,
    rank_shift,
    sample_from_table,
    sum_statistics,
)
from ufgdepth.bench import (
    MODE_ALL,
    MODE_OBSERVED,
    edge_persistence_to_csv,
    rank_shift_to_csv,
)

CSV = """dataset,algorithm,measure,value
d1,A,acc,0.9
d1,B,acc,0.8
d1,A,time,1.0
d1,B,time,2.0
d2,A,acc,0.7
d2,B,acc,0.8
d2,A,time,1.5
d2,B,time,1.0
"""

ORIENT = {"acc": "higher", "time": "lower"}


def test_parse_orientations():
    assert parse_orientations("acc: higher\n# note\ntime: lower\n") == ORIENT
    with pytest.raises(UnknownOrientation):
        parse_orientations("acc: sideways")


def test_ingest_and_dominance():
    t = ingest(CSV, ORIENT)
    assert t.datasets == ("d1", "d2") and t.algorithms == ("A", "B")
    p1 = build_poset(t, "d1")
    assert p1.has("A", "B") and not p1.has("B", "A")
    p2 = build_poset(t, "d2")
    assert p2.has("B", "A")


def test_ingest_errors():
    with pytest.raises(MissingCell):
        ingest("dataset,algorithm,value\nd1,A,1\n", ORIENT)
    with pytest.raises(MissingCell):
        ingest(CSV.rsplit("\n", 2)[0] + "\n", ORIENT)  # drop one cell
    with pytest.raises(DuplicateCell):
        ingest(CSV + "d2,B,time,1.0\n", ORIENT)
    with pytest.raises(UnknownOrientation):
        ingest(CSV, {"acc": "higher"})


def test_indifference_is_an_error():
    tied = CSV.replace("d1,B,acc,0.8", "d1,B,acc,0.9").replace("d1,B,time,2.0",
                                                               "d1,B,time,1.0")
    t = ingest(tied, ORIENT)
    with pytest.raises(IndifferentAlgorithms):
        build_poset(t, "d1")


def test_exact_decimal_comparison():
    # 0.30 and 0.3 are the same value; trailing zeros must not create an edge
    csv = ("dataset,algorithm,measure,value\n"
           "d1,A,acc,0.30\nd1,B,acc,0.3\n")
    t = ingest(csv, {"acc": "higher"})
    with pytest.raises(IndifferentAlgorithms):
        build_poset(t, "d1")
    assert Decimal("0.30") == Decimal("0.3")


def test_incomparable_when_measures_conflict():
    conflict = CSV.replace("d1,B,time,2.0", "d1,B,time,0.5")
    t = ingest(conflict, ORIENT)
    p = build_poset(t, "d1")  # A better on acc, B better on time
    assert not p.has("A", "B") and not p.has("B", "A")


def test_measure_restriction():
    t = ingest(CSV, ORIENT)
    acc_only = t.restrict_measures(["acc"])
    assert acc_only.measures == ("acc",)
    p = build_poset(acc_only, "d2")
    assert p.has("B", "A")
    with pytest.raises(UnknownOrientation):
        t.restrict_measures(["f1"])


def test_sum_statistics(worked_sample):
    sample, _ = worked_sample
    st = sum_statistics(sample)
    assert st.w("y1", "y2") == 2
    assert st.w("y1", "y3") == 2
    assert st.w("y2", "y3") == 1
    assert st.w("y2", "y1") == 0
    csv = st.to_csv()
    assert csv.splitlines()[0] == ",y1,y2,y3"


def test_sum_statistics_insufficient_for_depth(worked_sample, worked_sample_b):
    # the two samples share a sum-statistics matrix but not a depth function
    s1, _ = worked_sample
    s2, (q1, _, _) = worked_sample_b
    m1 = sum_statistics(s1)
    m2 = sum_statistics(s2)
    assert m1.counts == m2.counts
    d1 = depth_map(s1, enumerate_ufg_family(s1))
    d2 = depth_map(s2, enumerate_ufg_family(s2))
    assert d1.depth(q1) != d2.depth(q1)


def test_edge_persistence_modes(worked_sample_b):
    sample, (q1, q2, q3) = worked_sample_b
    fam = enumerate_ufg_family(sample)
    dm = depth_map(sample, fam)
    ep = edge_persistence(dm, sample, mode=MODE_ALL)
    # the unique deepest poset contains y1<y2 and y1<y3
    assert ep.edge_k[("y1", "y2")] >= 1
    assert ep.edge_k[("y1", "y3")] >= 1
    assert ep.edge_k[("y2", "y1")] == 0
    assert ep.non_edge_k[("y2", "y1")] >= 1
    obs = edge_persistence(dm, sample, mode=MODE_OBSERVED)
    assert obs.mode == MODE_OBSERVED
    csv = edge_persistence_to_csv(ep)
    assert csv.splitlines()[0] == "from,to,k,kind,mode"


def test_edge_persistence_flags_ties(worked_sample):
    sample, _ = worked_sample
    fam = enumerate_ufg_family(sample)
    dm = depth_map(sample, fam)
    ep = edge_persistence(dm, sample, mode=MODE_ALL)
    if ep.ambiguous:
        with pytest.raises(AmbiguousRanking):
            edge_persistence(dm, sample, mode=MODE_ALL, strict=True)


def test_dispersion(worked_sample):
    sample, _ = worked_sample
    fam = enumerate_ufg_family(sample)
    dm = depth_map(sample, fam)
    observed = [dm.depth(p) for p in sample.observations()]
    # alpha=1: threshold is the smallest observed depth (1/2 here)
    full = dispersion(dm, observed, Fraction(1))
    assert full == Fraction(sum(1 for _, d in dm.entries if d >= min(observed)), 19)
    # monotone in alpha
    props = [dispersion(dm, observed, Fraction(a, 4)) for a in range(1, 5)]
    assert props == sorted(props)
    assert dispersion(dm, observed, Fraction(0)) == 0


def test_rank_shift(worked_sample, worked_sample_b):
    s1, _ = worked_sample
    s2, _ = worked_sample_b
    d1 = depth_map(s1, enumerate_ufg_family(s1))
    d2 = depth_map(s2, enumerate_ufg_family(s2))
    same = rank_shift(d1, d1)
    assert same.max_shift == 0 and same.median_shift == 0
    rs = rank_shift(d1, d2)
    assert rs.max_shift > 0
    assert set(rs.per_poset.values()) >= {rs.max_shift}
    csv = rank_shift_to_csv(rs)
    assert csv.splitlines()[0] == "tr_edges,shift"


def test_rank_shift_scope_mismatch(worked_sample):
    from ufgdepth import SCOPE_OBSERVED

    s1, _ = worked_sample
    fam = enumerate_ufg_family(s1)
    d_all = depth_map(s1, fam)
    d_obs = depth_map(s1, fam, scope=SCOPE_OBSERVED)
    with pytest.raises(ScopeMismatch):
        rank_shift(d_all, d_obs)


def test_dispersion_frozen_value(worked_sample_b):
    sample, _ = worked_sample_b
    dm = depth_map(sample, enumerate_ufg_family(sample))
    observed = [dm.depth(p) for p in sample.observations()]
    # alpha=1/3 with 3 observations: threshold is the largest observed depth
    # (7/10); exactly 4 of the 19 posets reach it (depth 1 plus the 7/10 tie)
    assert dispersion(dm, observed, Fraction(1, 3)) == Fraction(4, 19)


def test_rank_shift_reversal():
    from ufgdepth import DepthMap, ItemUniverse, enumerate_posets

    u = ItemUniverse.of("y1", "y2")
    ps = enumerate_posets(u)  # 3 posets on 2 items
    h = "x" * 64
    a = DepthMap(tuple(zip(ps, (Fraction(1, 4), Fraction(2, 4), Fraction(3, 4)))),
                 "explicit-candidate-list", h)
    b = DepthMap(tuple(zip(ps, (Fraction(3, 4), Fraction(2, 4), Fraction(1, 4)))),
                 "explicit-candidate-list", h)
    rs = rank_shift(a, b)
    assert sorted(rs.per_poset.values()) == [0, 2, 2]
    assert rs.max_shift == 2 and rs.median_shift == 2 and not rs.tied


def test_dominance_invariant_under_affine_rescaling():
    t = ingest(CSV, ORIENT)
    scaled = CSV.replace("d1,A,acc,0.9", "d1,A,acc,9.5").replace(
        "d1,B,acc,0.8", "d1,B,acc,8.5").replace(
        "d2,A,acc,0.7", "d2,A,acc,7.5").replace(
        "d2,B,acc,0.8", "d2,B,acc,8.5")  # acc -> 10*acc + 0.5
    t2 = ingest(scaled, ORIENT)
    for d in t.datasets:
        assert build_poset(t, d).mask == build_poset(t2, d).mask


def test_epsilon_comparison():
    from decimal import Decimal

    csv = "dataset,algorithm,measure,value\nd1,A,acc,0.901\nd1,B,acc,0.9\n"
    t = ingest(csv, {"acc": "higher"})
    assert build_poset(t, "d1").has("A", "B")  # exact: A strictly better
    with pytest.raises(IndifferentAlgorithms):
        build_poset(t, "d1", epsilon=Decimal("0.01"))  # within tolerance: tie


def test_sample_from_table_roundtrip():
    t = ingest(CSV, ORIENT)
    sample = sample_from_table(t)
    assert sample.n == 2
    assert sample.universe.labels == ("A", "B")
