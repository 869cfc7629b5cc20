"""Exact extremal-depth search without enumerating the poset space.

Branch-and-bound over the off-diagonal edge indicators of a candidate poset.
Antisymmetry and transitivity are enforced during branching, so every leaf
is a valid poset; family sets are scored against the partial assignment to
bound the achievable depth on each subtree.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from .depth import depth_map, empirical_depth
from .errors import SolverTimeout
from .family import PosetSample, UfgFamily
from .poset import DEFAULT_ENUM_LIMIT, Poset, _bit

MAX = "max"
MIN = "min"

DEFAULT_TIMEOUT = 600.0


@dataclass(frozen=True)
class ExtremalProblem:
    family: UfgFamily
    sample: PosetSample
    direction: str = MAX
    k: int = 1

    def __post_init__(self):
        if self.direction not in (MAX, MIN):
            raise ValueError(f"direction must be {MAX!r} or {MIN!r}")
        if self.k < 1:
            raise ValueError("k must be >= 1")


@dataclass(frozen=True)
class ExtremalSolution:
    """Ranked (poset, depth) pairs plus the counted family sets per poset."""

    ranked: tuple[tuple[Poset, Fraction], ...]
    proof: tuple[tuple[int, ...], ...] = field(default=())

    def depths(self) -> list[Fraction]:
        return [d for _, d in self.ranked]


def _family_bounds(problem: ExtremalProblem) -> list[tuple[int, int, Fraction]]:
    u = problem.sample.universe
    out = []
    for s in problem.family.sets:
        inter = u.full_mask
        union = 0
        for i in s.member_ids:
            inter &= problem.sample.unique[i].mask
            union |= problem.sample.unique[i].mask
        out.append((inter, union, s.weight))
    return out


def solve_extremal(problem: ExtremalProblem,
                   timeout: float = DEFAULT_TIMEOUT) -> ExtremalSolution:
    """Exact optimum (k best posets for k > 1) over all posets on the universe."""
    sample = problem.sample
    u, m = sample.universe, sample.universe.m
    bounds = _family_bounds(problem)
    maximize = problem.direction == MAX
    k = problem.k
    offdiag = u.full_mask & ~u.diagonal_mask

    # branch on high-weight pairs first
    pair_weight: dict[tuple[int, int], Fraction] = {}
    for i in range(m):
        for j in range(i + 1, m):
            w = Fraction(0)
            for inter, union, wt in bounds:
                touch = _bit(i, j, m) | _bit(j, i, m)
                if (inter | (u.full_mask & ~union)) & touch:
                    w += wt
            pair_weight[(i, j)] = w
    pairs = sorted(pair_weight, key=lambda ij: (-pair_weight[ij], ij))

    deadline = time.monotonic() + timeout
    pool: list[tuple[Fraction, int]] = []  # (raw counted weight, poset mask)
    pool_masks: set[int] = set()

    def pool_add(value: Fraction, mask: int):
        if mask in pool_masks:
            return
        pool.append((value, mask))
        pool_masks.add(mask)
        pool.sort(key=lambda e: ((-e[0]) if maximize else e[0], e[1]))
        while len(pool) > k:
            value, mask = pool.pop()
            pool_masks.discard(mask)

    def threshold() -> Fraction | None:
        if len(pool) < k:
            return None
        return pool[-1][0]

    present0 = u.diagonal_mask
    node_count = 0

    def consistent(present: int, absent: int, a: int, b: int, add: bool) -> bool:
        if add:
            for c in range(m):
                if c in (a, b):
                    continue
                if present & _bit(b, c, m) and absent & _bit(a, c, m):
                    return False
                if present & _bit(c, a, m) and absent & _bit(c, b, m):
                    return False
        else:
            for c in range(m):
                if c in (a, b):
                    continue
                if present & _bit(a, c, m) and present & _bit(c, b, m):
                    return False
        return True

    def rec(idx: int, present: int, absent: int):
        nonlocal node_count
        node_count += 1
        if node_count % 64 == 0 and time.monotonic() > deadline:
            raise _TimeoutSignal
        if idx == len(pairs):
            value = Fraction(0)
            for inter, union, w in bounds:
                if inter & ~present == 0 and present & ~union == 0:
                    value += w
            pool_add(value, present)
            return
        # bound from set statuses under the partial assignment
        t = threshold()
        if t is not None:
            if maximize:
                ub = Fraction(0)
                for inter, union, w in bounds:
                    if not (inter & absent or present & ~union):
                        ub += w
                if ub <= t:
                    return
            else:
                lb = Fraction(0)
                for inter, union, w in bounds:
                    if inter & ~present == 0 and (offdiag & ~union) & ~absent == 0:
                        lb += w
                if lb >= t:
                    return
        a, b = pairs[idx]
        fwd, bwd = _bit(a, b, m), _bit(b, a, m)
        # orient a < b
        if consistent(present, absent, a, b, True) and consistent(present, absent, b, a, False):
            rec(idx + 1, present | fwd, absent | bwd)
        # orient b < a
        if consistent(present, absent, b, a, True) and consistent(present, absent, a, b, False):
            rec(idx + 1, present | bwd, absent | fwd)
        # leave unrelated
        if consistent(present, absent, a, b, False) and consistent(present, absent, b, a, False):
            rec(idx + 1, present, absent | fwd | bwd)

    try:
        if time.monotonic() > deadline:
            raise _TimeoutSignal
        rec(0, present0, 0)
    except _TimeoutSignal:
        sol = _finalize(problem, pool, bounds)
        gap = None
        if sol.ranked and problem.family.c_n is not None:
            best = sol.ranked[0][1]
            root = problem.family.total_weight * problem.family.c_n
            gap = float(root - best) if maximize else float(best)
        raise SolverTimeout(f"extremal search timed out after {timeout}s",
                            incumbent=sol, gap=gap)
    return _finalize(problem, pool, bounds)


class _TimeoutSignal(Exception):
    pass


def _finalize(problem: ExtremalProblem, pool, bounds) -> ExtremalSolution:
    c_n = problem.family.c_n
    u = problem.sample.universe
    ranked = []
    proofs = []
    for raw, mask in pool:
        p = Poset(u, mask)
        depth = raw * c_n if c_n is not None else Fraction(0)
        counted = tuple(i for i, (inter, union, _) in enumerate(bounds)
                        if inter & ~mask == 0 and mask & ~union == 0)
        ranked.append((p, depth))
        proofs.append(counted)
    return ExtremalSolution(tuple(ranked), tuple(proofs))


def k_best(problem: ExtremalProblem, timeout: float = DEFAULT_TIMEOUT) -> ExtremalSolution:
    """Alias for solve_extremal with the problem's k; kept for symmetry."""
    return solve_extremal(problem, timeout)


def verify_solution(sol: ExtremalSolution, sample: PosetSample, family: UfgFamily,
                    direction: str = MAX,
                    enum_limit: int = DEFAULT_ENUM_LIMIT) -> bool:
    """Recompute reported depths and, when feasible, check optimality
    against full enumeration."""
    if not sol.ranked:
        return False
    if len(sol.proof) != len(sol.ranked):
        return False
    bounds = _family_bounds(ExtremalProblem(family, sample, direction))
    prev = None
    for (p, d), counted in zip(sol.ranked, sol.proof):
        if empirical_depth(p, sample, family) != d:
            return False
        true_counted = tuple(i for i, (inter, union, _) in enumerate(bounds)
                             if inter & ~p.mask == 0 and p.mask & ~union == 0)
        if family.total_weight != 0 and counted != true_counted:
            return False
        if prev is not None:
            if direction == MAX and d > prev:
                return False
            if direction == MIN and d < prev:
                return False
        prev = d
    if sample.universe.m <= enum_limit:
        dm = depth_map(sample, family, enum_limit=enum_limit)
        vals = sorted((d for _, d in dm.entries), reverse=(direction == MAX))
        if sorted(sol.depths()) != sorted(vals[:len(sol.ranked)]):
            return False
    return True


# ---------------------------------------------------------------------------
# LP emission (cross-check adapter for external solvers)


def emit_lp(problem: ExtremalProblem) -> str:
    """Textual binary program for the extremal problem.

    Objective coefficients are the exact set weights scaled by the LCM of
    their denominators, so every coefficient is an exact integer; the scale
    factor is recorded in the header comment.
    """
    sample = problem.sample
    u, m = sample.universe, sample.universe.m
    labels = u.labels
    bounds = _family_bounds(problem)
    denoms = [w.denominator for _, _, w in bounds] or [1]
    scale = lcm(*denoms)

    def ev(i, j):
        return f"e_{labels[i]}_{labels[j]}"

    lines = [
        f"\\ extremal depth program, direction={problem.direction}",
        f"\\ objective scaled by {scale}; divide the optimum by {scale} "
        f"and multiply by c_n to recover the depth",
        "Maximize" if problem.direction == MAX else "Minimize",
    ]
    terms = [f"{int(w * scale)} s_{si}" for si, (_, _, w) in enumerate(bounds)]
    lines.append(" obj: " + (" + ".join(terms) if terms else "0 " + ev(0, min(1, m - 1))))
    lines.append("Subject To")
    cid = 0

    def add(row: str):
        nonlocal cid
        lines.append(f" c{cid}: {row}")
        cid += 1

    # A_poset: antisymmetry and transitivity on the edge indicators
    for i in range(m):
        for j in range(i + 1, m):
            add(f"- {ev(i, j)} - {ev(j, i)} >= -1")
    for i in range(m):
        for j in range(m):
            for h in range(m):
                if len({i, j, h}) == 3:
                    add(f"- {ev(i, j)} - {ev(j, h)} + {ev(i, h)} >= -1")
    # A_intersect / A_union per family set
    offdiag_pairs = [(i, j) for i in range(m) for j in range(m) if i != j]
    for si, (inter, union, _) in enumerate(bounds):
        inter_pairs = [(i, j) for i, j in offdiag_pairs if inter & _bit(i, j, m)]
        nonunion_pairs = [(i, j) for i, j in offdiag_pairs if not union & _bit(i, j, m)]
        for i, j in inter_pairs:
            add(f"{ev(i, j)} - s_{si} >= 0")
        for i, j in nonunion_pairs:
            add(f"- {ev(i, j)} - s_{si} >= -1")
        if problem.direction == MIN:
            # counted-iff-contained coupling: s_S = 1 whenever the poset
            # satisfies every containment condition of S
            terms = [f"s_{si}"]
            terms += [f"- {ev(i, j)}" for i, j in inter_pairs]
            terms += [f"+ {ev(i, j)}" for i, j in nonunion_pairs]
            add(" ".join(terms) + f" >= {1 - len(inter_pairs)}")
    lines.append("Binary")
    for si in range(len(bounds)):
        lines.append(f" s_{si}")
    for i, j in offdiag_pairs:
        lines.append(f" {ev(i, j)}")
    lines.append("End")
    return "\n".join(lines) + "\n"
