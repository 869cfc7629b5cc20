"""From performance tables to poset samples and the descriptive analyses.

An algorithm dominates another on one dataset when it is weakly better on
every declared performance measure and strictly better on at least one.
Values compare exactly (string-normalized decimals); exact ties on every
measure are rejected as indifference, which has no place in a partial order.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from statistics import median_low
from typing import Iterable, Sequence

from .depth import DepthMap
from .errors import (
    AmbiguousRanking,
    DuplicateCell,
    EmptyInput,
    IndifferentAlgorithms,
    MissingCell,
    ScopeMismatch,
    UnknownOrientation,
)
from .family import PosetSample
from .poset import ItemUniverse, Poset, Relation, validate_poset

HIGHER = "higher"
LOWER = "lower"


@dataclass(frozen=True)
class PerformanceTable:
    datasets: tuple[str, ...]
    algorithms: tuple[str, ...]
    measures: tuple[str, ...]
    orientations: dict[str, str]
    values: dict[tuple[str, str, str], Decimal]  # (dataset, algorithm, measure)

    @property
    def k(self) -> int:
        return len(self.algorithms)

    @property
    def num_measures(self) -> int:
        return len(self.measures)

    def restrict_measures(self, measures: Sequence[str]) -> "PerformanceTable":
        missing = [msr for msr in measures if msr not in self.measures]
        if missing:
            raise UnknownOrientation(f"unknown measures: {missing}")
        keep = tuple(msr for msr in self.measures if msr in measures)
        values = {key: v for key, v in self.values.items() if key[2] in keep}
        return PerformanceTable(self.datasets, self.algorithms, keep,
                                {msr: self.orientations[msr] for msr in keep}, values)


def parse_orientations(text: str) -> dict[str, str]:
    """Config lines of the form `measure: higher` or `measure: lower`."""
    out = {}
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        name, sep, orient = ln.partition(":")
        orient = orient.strip().lower()
        if not sep or orient not in (HIGHER, LOWER):
            raise UnknownOrientation(f"bad orientation line: {ln!r}")
        out[name.strip()] = orient
    return out


def ingest(csv_text: str, orientations: dict[str, str]) -> PerformanceTable:
    """Parse a dataset,algorithm,measure,value CSV into a complete grid."""
    reader = csv.DictReader(io.StringIO(csv_text))
    required = {"dataset", "algorithm", "measure", "value"}
    if reader.fieldnames is None or not required <= set(reader.fieldnames):
        raise MissingCell(f"CSV must have columns {sorted(required)}")
    values: dict[tuple[str, str, str], Decimal] = {}
    datasets, algorithms, measures = [], [], []
    for row in reader:
        key = (row["dataset"], row["algorithm"], row["measure"])
        if key in values:
            raise DuplicateCell(f"duplicated cell {key}")
        values[key] = Decimal(row["value"].strip())
        for seq, item in ((datasets, key[0]), (algorithms, key[1]), (measures, key[2])):
            if item not in seq:
                seq.append(item)
    if not values:
        raise EmptyInput("empty performance table")
    for msr in measures:
        if msr not in orientations:
            raise UnknownOrientation(f"no orientation declared for measure {msr!r}")
    missing = [(d, a, msr) for d in datasets for a in algorithms for msr in measures
               if (d, a, msr) not in values]
    if missing:
        raise MissingCell(f"missing cells: {missing[:5]}{'...' if len(missing) > 5 else ''}")
    return PerformanceTable(tuple(datasets), tuple(algorithms), tuple(measures),
                            {msr: orientations[msr] for msr in measures}, values)


def build_poset(table: PerformanceTable, dataset_id: str,
                epsilon: Decimal = Decimal(0)) -> Poset:
    """Dominance poset of one dataset: edge (i, j) iff i weakly beats j on
    every oriented measure and strictly on at least one.

    Comparison is exact by default; a positive `epsilon` treats differences
    within it as equal (off unless explicitly requested, and recorded in
    report metadata by callers that expose it).
    """
    if dataset_id not in table.datasets:
        raise KeyError(f"unknown dataset {dataset_id!r}")
    algos = table.algorithms
    u = ItemUniverse(algos)

    def oriented(a: str, msr: str) -> Decimal:
        v = table.values[(dataset_id, a, msr)]
        return v if table.orientations[msr] == HIGHER else -v

    edges = []
    for i in algos:
        for j in algos:
            if i == j:
                continue
            diffs = [oriented(i, msr) - oriented(j, msr) for msr in table.measures]
            weakly = all(d >= -epsilon for d in diffs)
            strictly = any(d > epsilon for d in diffs)
            if weakly and not strictly:
                raise IndifferentAlgorithms(dataset_id, i, j)
            if weakly and strictly:
                edges.append((i, j))
    mask = u.mask_of(edges) | u.diagonal_mask
    return validate_poset(Relation(u, mask))


def sample_from_table(table: PerformanceTable,
                      measures: Sequence[str] | None = None,
                      epsilon: Decimal = Decimal(0)) -> PosetSample:
    t = table if measures is None else table.restrict_measures(measures)
    return PosetSample.from_posets([build_poset(t, d, epsilon) for d in t.datasets])


# ---------------------------------------------------------------------------
# sum-statistics


@dataclass(frozen=True)
class SumStatistics:
    universe: ItemUniverse
    counts: dict[tuple[str, str], int]
    n: int

    def w(self, a: str, b: str) -> int:
        return self.counts.get((a, b), 0)

    def to_csv(self) -> str:
        labels = self.universe.labels
        lines = ["," + ",".join(labels)]
        for a in labels:
            lines.append(a + "," + ",".join(str(self.w(a, b)) for b in labels))
        return "\n".join(lines) + "\n"


def sum_statistics(sample: PosetSample) -> SumStatistics:
    """Per ordered pair, the number of observations containing the edge."""
    u = sample.universe
    counts: dict[tuple[str, str], int] = {}
    for a in u.labels:
        for b in u.labels:
            c = 0
            for p, mult in zip(sample.unique, sample.counts):
                if p.has(a, b):
                    c += mult
            counts[(a, b)] = c
    return SumStatistics(u, counts, sample.n)


# ---------------------------------------------------------------------------
# edge persistence


MODE_OBSERVED = "observed-only"
MODE_ALL = "all-posets"


@dataclass(frozen=True)
class EdgePersistence:
    """Longest depth-ranking prefixes on which every poset agrees per edge."""

    edge_k: dict[tuple[str, str], int]
    non_edge_k: dict[tuple[str, str], int]
    mode: str
    ambiguous: tuple[tuple[str, str], ...] = ()


def edge_persistence(depth: DepthMap, sample: PosetSample,
                     mode: str = MODE_ALL, strict: bool = False) -> EdgePersistence:
    """Per edge: the largest k such that the k deepest posets all contain
    (respectively all lack) the edge.

    In observed mode the ranking lists observed posets with duplicates.  A
    depth tie across a reported prefix boundary is recorded (or raised when
    strict) because the boundary is then ranking-order dependent.
    """
    if not depth.entries:
        raise EmptyInput("empty depth map")
    u = sample.universe
    if mode == MODE_OBSERVED:
        ranked = []
        by_poset = dict(depth.entries)
        for p, c in zip(sample.unique, sample.counts):
            ranked.extend([(p, by_poset[p])] * c)
        ranked.sort(key=lambda e: (-e[1], e[0].mask))
    elif mode == MODE_ALL:
        ranked = depth.ranked()
    else:
        raise ValueError(f"unknown mode {mode!r}")

    edge_k: dict[tuple[str, str], int] = {}
    non_edge_k: dict[tuple[str, str], int] = {}
    ambiguous: list[tuple[str, str]] = []
    labels = u.labels
    for a in labels:
        for b in labels:
            if a == b:
                continue
            ke = 0
            for p, _ in ranked:
                if p.has(a, b):
                    ke += 1
                else:
                    break
            kn = 0
            for p, _ in ranked:
                if not p.has(a, b):
                    kn += 1
                else:
                    break
            edge_k[(a, b)] = ke
            non_edge_k[(a, b)] = kn
            for kk in (ke, kn):
                if 0 < kk < len(ranked) and ranked[kk - 1][1] == ranked[kk][1] \
                        and ranked[kk - 1][0] != ranked[kk][0]:
                    ambiguous.append((a, b))
                    break
    if strict and ambiguous:
        raise AmbiguousRanking(f"depth ties cross prefix boundaries at {ambiguous}")
    return EdgePersistence(edge_k, non_edge_k, mode, tuple(sorted(set(ambiguous))))


def edge_persistence_to_csv(ep: EdgePersistence) -> str:
    lines = ["from,to,k,kind,mode"]
    for (a, b), k in sorted(ep.edge_k.items()):
        lines.append(f"{a},{b},{k},edge,{ep.mode}")
    for (a, b), k in sorted(ep.non_edge_k.items()):
        lines.append(f"{a},{b},{k},non-edge,{ep.mode}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# dispersion and rank shift


def dispersion(depth_all: DepthMap, observed_depths: Sequence[Fraction],
               alpha: float | Fraction) -> Fraction:
    """Proportion of scope posets at least as deep as the ceil(alpha * n)-th
    largest observed depth (duplicates included)."""
    if not observed_depths:
        raise EmptyInput("no observed depths")
    alpha = Fraction(alpha).limit_denominator(10**9) if not isinstance(alpha, Fraction) else alpha
    if not 0 <= alpha <= 1:
        raise ValueError("alpha must lie in [0, 1]")
    n_obs = len(observed_depths)
    idx = -(-int(alpha * n_obs) if (alpha * n_obs) == int(alpha * n_obs)
            else -int(alpha * n_obs) - 1)  # ceil
    idx = max(idx, 0)
    if idx == 0:
        return Fraction(0)
    threshold = sorted(observed_depths, reverse=True)[idx - 1]
    scope = [d for _, d in depth_all.entries]
    return Fraction(sum(1 for d in scope if d >= threshold), len(scope))


@dataclass(frozen=True)
class RankShift:
    max_shift: int
    median_shift: int
    per_poset: dict[Poset, int]
    tied: bool


def rank_shift(a: DepthMap, b: DepthMap) -> RankShift:
    """Absolute rank differences between two depth maps on the same scope.

    Ranks ascend by depth; ties break by canonical poset order and are
    flagged rather than hidden.
    """
    pa = {p for p, _ in a.entries}
    pb = {p for p, _ in b.entries}
    if pa != pb:
        raise ScopeMismatch("depth maps cover different posets")

    def ranks(dm: DepthMap) -> tuple[dict[Poset, int], bool]:
        ordered = sorted(dm.entries, key=lambda e: (e[1], e[0].mask))
        tied = any(ordered[i][1] == ordered[i + 1][1] for i in range(len(ordered) - 1))
        return {p: i + 1 for i, (p, _) in enumerate(ordered)}, tied

    ra, ta = ranks(a)
    rb, tb = ranks(b)
    per = {p: abs(ra[p] - rb[p]) for p in ra}
    shifts = list(per.values())
    return RankShift(max(shifts), int(median_low(shifts)), per, ta or tb)


def rank_shift_to_csv(rs: RankShift) -> str:
    lines = ["tr_edges,shift"]
    for p in sorted(rs.per_poset, key=lambda q: q.mask):
        edges = ";".join(f"{a}<{b}" for a, b in p.hasse_edges())
        lines.append(f"{edges},{rs.per_poset[p]}")
    lines.append(f"max,{rs.max_shift}")
    lines.append(f"median,{rs.median_shift}")
    return "\n".join(lines) + "\n"
