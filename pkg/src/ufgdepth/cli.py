"""Batch front-end: ingest -> posets -> family -> depth -> reports.

Exit codes: 0 success, 1 selfcheck failure, 2 data error, 3 solver timeout.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bench import (
    dispersion,
    edge_persistence,
    edge_persistence_to_csv,
    ingest,
    parse_orientations,
    rank_shift,
    rank_shift_to_csv,
    sample_from_table,
    sum_statistics,
)
from .davidson import counts_from_posets, davidson_fit
from .depth import (
    SCOPE_ALL,
    depth_map,
    depth_map_to_csv,
    depth_map_to_json,
    triviality_check,
)
from .errors import SolverTimeout, UfgError
from .extremal import MAX, MIN, ExtremalProblem, emit_lp, solve_extremal
from .family import (
    PosetSample,
    enumerate_ufg_family,
    family_from_jsonl,
    family_to_jsonl,
    is_ufg,
    is_ufg_oracle,
    max_set_size,
)
from .poset import (
    DEFAULT_ENUM_LIMIT,
    ItemUniverse,
    Poset,
    count_posets,
    enumerate_posets,
    hasse_layers,
    posets_from_text,
    posets_to_text,
    transitive_reduction,
)

EXIT_OK = 0
EXIT_SELFCHECK = 1
EXIT_DATA = 2
EXIT_TIMEOUT = 3


def _meta(args: argparse.Namespace) -> dict:
    cfg = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    return {"version": __version__, "config": cfg,
            "epsilon": "0 (exact decimal comparison)",
            "dispersion_convention": "ceil(alpha*n)-th largest observed depth",
            "weights": "product of empirical probabilities per set"}


def _outdir(args) -> Path:
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _read_sample(path: str) -> PosetSample:
    posets = posets_from_text(Path(path).read_text())
    return PosetSample.from_posets(posets)


def _load_table(args):
    orientations = parse_orientations(Path(args.orientations).read_text())
    table = ingest(Path(args.input).read_text(), orientations)
    if getattr(args, "measures", None):
        table = table.restrict_measures(args.measures.split(","))
    return table


def _family_cached(sample: PosetSample, out: Path, enum_limit: int,
                   cap: int | None):
    h = sample.content_hash()
    cache = out / f"family_{h[:16]}.jsonl"
    if cache.exists():
        fam = family_from_jsonl(cache.read_text())
        if fam.sample_hash == h and (cap is None or fam.cap <= cap):
            return fam
    fam = enumerate_ufg_family(sample, enum_limit=enum_limit, cap=cap)
    cache.write_text(family_to_jsonl(fam, sample))
    return fam


# ---------------------------------------------------------------------------
# subcommands


def cmd_ingest(args) -> int:
    out = _outdir(args)
    table = _load_table(args)
    sample = sample_from_table(table)
    (out / "sample.txt").write_text(posets_to_text(sample.observations()))
    (out / "sum_stats.csv").write_text(sum_statistics(sample).to_csv())
    report = _meta(args)
    report.update({
        "n": sample.n,
        "unique": len(sample.unique),
        "datasets": list(table.datasets),
        "algorithms": list(table.algorithms),
        "measures": list(table.measures),
        "sample_hash": sample.content_hash(),
    })
    (out / "ingest.json").write_text(json.dumps(report, indent=2))
    print(f"{len(sample.unique)} of {sample.n} unique")
    return EXIT_OK


def cmd_analyze(args) -> int:
    out = _outdir(args)
    sample = _read_sample(args.input)
    fam = _family_cached(sample, out, args.enum_limit, args.cap)
    trivial = triviality_check(sample)
    report = _meta(args)
    report.update({
        "sample_hash": sample.content_hash(),
        "n": sample.n,
        "unique": len(sample.unique),
        "family_size": len(fam.sets),
        "vc_obs": fam.vc_obs,
        "cap": fam.cap,
        "trivial": trivial,
    })
    m = sample.universe.m
    if m <= args.enum_limit:
        dm = depth_map(sample, fam, scope=SCOPE_ALL, enum_limit=args.enum_limit)
        (out / "depth_map.csv").write_text(depth_map_to_csv(dm))
        (out / "depth_map.json").write_text(depth_map_to_json(dm))
        deepest, dmax = dm.argmax()
        report["deepest"] = {
            "tr_edges": [[a, b] for a, b in deepest.hasse_edges()],
            "layers": hasse_layers(deepest),
            "depth": f"{dmax.numerator}/{dmax.denominator}",
            "depth_decimal": round(float(dmax), 4),
        }
        ep = edge_persistence(dm, sample)
        (out / "edge_persistence.csv").write_text(edge_persistence_to_csv(ep))
        observed = [dm.depth(p) for p in sample.observations()]
        lines = ["alpha,proportion"]
        for a in args.alpha.split(","):
            prop = dispersion(dm, observed, Fraction(a))
            lines.append(f"{a},{float(prop):.4f}")
        (out / "dispersion.csv").write_text("\n".join(lines) + "\n")
    else:
        problem = ExtremalProblem(fam, sample, MAX, args.k)
        sol = solve_extremal(problem, timeout=args.timeout_secs)
        report["extremal"] = _extremal_report(sol)
        deepest, dmax = sol.ranked[0]
        report["deepest"] = {
            "tr_edges": [[a, b] for a, b in deepest.hasse_edges()],
            "layers": hasse_layers(deepest),
            "depth": f"{dmax.numerator}/{dmax.denominator}",
            "depth_decimal": round(float(dmax), 4),
        }
    (out / "analyze.json").write_text(json.dumps(report, indent=2))
    print(f"family size {len(fam.sets)}, trivial={trivial}")
    return EXIT_OK


def _extremal_report(sol) -> list[dict]:
    return [{
        "tr_edges": [[a, b] for a, b in p.hasse_edges()],
        "depth": f"{d.numerator}/{d.denominator}",
        "depth_decimal": round(float(d), 6),
        "counted_sets": list(proof),
    } for (p, d), proof in zip(sol.ranked, sol.proof)]


def cmd_compare(args) -> int:
    out = _outdir(args)
    table = _load_table(args)
    t2 = table if args.measures2 is None else \
        _load_table_base(args).restrict_measures(args.measures2.split(","))
    s1 = sample_from_table(table)
    s2 = sample_from_table(t2)
    f1 = _family_cached(s1, out, args.enum_limit, None)
    f2 = _family_cached(s2, out, args.enum_limit, None)
    d1 = depth_map(s1, f1, scope=SCOPE_ALL, enum_limit=args.enum_limit)
    d2 = depth_map(s2, f2, scope=SCOPE_ALL, enum_limit=args.enum_limit)
    rs = rank_shift(d1, d2)
    (out / "rank_shift.csv").write_text(rank_shift_to_csv(rs))
    by2 = dict(d2.entries)
    lines = ["tr_edges,depth_a,depth_b"]
    for p, da in sorted(d1.entries, key=lambda e: e[0].mask):
        edges = ";".join(f"{a}<{b}" for a, b in p.hasse_edges())
        lines.append(f"{edges},{float(da):.6f},{float(by2[p]):.6f}")
    (out / "paired_depths.csv").write_text("\n".join(lines) + "\n")
    report = _meta(args)
    report.update({"max_shift": rs.max_shift, "median_shift": rs.median_shift,
                   "tied_ranks": rs.tied})
    (out / "compare.json").write_text(json.dumps(report, indent=2))
    print(f"max shift {rs.max_shift}, median {rs.median_shift}")
    return EXIT_OK


def _load_table_base(args):
    orientations = parse_orientations(Path(args.orientations).read_text())
    return ingest(Path(args.input).read_text(), orientations)


def cmd_davidson(args) -> int:
    out = _outdir(args)
    sample = _read_sample(args.input)
    counts = counts_from_posets(sample.universe.labels, sample.observations())
    model = davidson_fit(counts)
    labels = model.labels
    win = {a: {b: (model.prob(a, b)[0] if a != b else None) for b in labels}
           for a in labels}
    tie = {a: {b: (model.prob(a, b)[1] if a != b else None) for b in labels}
           for a in labels}
    report = _meta(args)
    report.update(json.loads(model.to_json()))
    report["pairwise_win"] = win
    report["pairwise_tie"] = tie
    (out / "davidson.json").write_text(json.dumps(report, indent=2))
    ranked = sorted(zip(labels, model.worths), key=lambda e: -e[1])
    print(", ".join(f"{a}={w:.4f}" for a, w in ranked) + f", theta={model.theta:.4f}")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    if args.items:
        u = ItemUniverse(tuple(s.strip() for s in args.items.split(",")))
    else:
        u = ItemUniverse(tuple(f"y{i + 1}" for i in range(args.m)))
    n = count_posets(u.m, enum_limit=args.enum_limit)
    print(f"{n} posets on {u.m} items")
    if args.out_dir:
        out = _outdir(args)
        (out / "posets.txt").write_text(
            posets_to_text(enumerate_posets(u, enum_limit=args.enum_limit)))
    return EXIT_OK


def cmd_extremal(args) -> int:
    out = _outdir(args)
    sample = _read_sample(args.input)
    fam = _family_cached(sample, out, args.enum_limit, args.cap)
    problem = ExtremalProblem(fam, sample, args.direction, args.k)
    if args.emit_lp:
        (out / "extremal.lp").write_text(emit_lp(problem))
    report = _meta(args)
    try:
        sol = solve_extremal(problem, timeout=args.timeout_secs)
    except SolverTimeout as exc:
        report["timeout"] = True
        report["gap"] = exc.gap
        report["incumbent"] = _extremal_report(exc.incumbent) if exc.incumbent else []
        (out / "extremal.json").write_text(json.dumps(report, indent=2))
        print(f"timeout; gap={exc.gap}", file=sys.stderr)
        return EXIT_TIMEOUT
    report["timeout"] = False
    report["ranked"] = _extremal_report(sol)
    (out / "extremal.json").write_text(json.dumps(report, indent=2))
    best, d = sol.ranked[0]
    print(f"{args.direction} depth {d} at {best!r}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# selfcheck


def _random_sample(u: ItemUniverse, rng: random.Random, n: int) -> PosetSample:
    pool = enumerate_posets(u)
    return PosetSample.from_posets([rng.choice(pool) for _ in range(n)])


def cmd_selfcheck(args) -> int:
    rng = random.Random(args.seed)
    results: list[tuple[str, bool]] = []

    def check(name: str, ok: bool):
        results.append((name, ok))
        print(f"{'PASS' if ok else 'FAIL'}  {name}")

    check("poset counts 1,3,19,219",
          [count_posets(m) for m in (1, 2, 3, 4)] == [1, 3, 19, 219])

    u3 = ItemUniverse.of("y1", "y2", "y3")
    ok = True
    from itertools import combinations
    for _ in range(15):
        s = _random_sample(u3, rng, rng.randint(2, 5))
        for k in range(2, len(s.unique) + 1):
            for sub in combinations(s.unique, k):
                if is_ufg(sub) != is_ufg_oracle(sub):
                    ok = False
    check("oracle equivalence (m=3)", ok)

    ok = True
    for _ in range(10):
        s = _random_sample(u3, rng, rng.randint(2, 6))
        fam = enumerate_ufg_family(s)
        sizes = {frozenset(x.member_ids) for x in fam.sets}
        for x in fam.sets:
            if len(x.member_ids) < 2 or len(x.member_ids) > max_set_size(3):
                ok = False
            if len(x.member_ids) >= 3:
                drop = [frozenset(x.member_ids) - {i} for i in x.member_ids]
                if not any(d in sizes for d in drop):
                    ok = False  # connectedness
    check("family bounds and connectedness", ok)

    ok = True
    from .depth import zero_depth_screen, NOT_SCREENED, empirical_depth
    for _ in range(10):
        s = _random_sample(u3, rng, rng.randint(2, 6))
        fam = enumerate_ufg_family(s)
        for q in enumerate_posets(u3):
            if zero_depth_screen(q, s) != NOT_SCREENED:
                if empirical_depth(q, s, fam) != 0:
                    ok = False
    check("zero-screen soundness", ok)

    ok = _consistency_probe(rng)
    check("consistency Monte-Carlo (shrinking sup gap)", ok)

    if args.inject_fault:
        check("injected fault", False)

    if all(passed for _, passed in results):
        print("selfcheck: all suites pass")
        return EXIT_OK
    print("selfcheck: FAILURES present", file=sys.stderr)
    return EXIT_SELFCHECK


def _consistency_probe(rng: random.Random) -> bool:
    from .depth import DiscretePmf, population_depth
    from .poset import poset_from_edges, trivial_poset

    u = ItemUniverse.of("y1", "y2", "y3")
    support = (poset_from_edges(u, [("y1", "y2")]),
               poset_from_edges(u, [("y1", "y3")]),
               poset_from_edges(u, [("y1", "y2"), ("y2", "y3")]))
    pmf = DiscretePmf(support, (Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)))
    queries = enumerate_posets(u)
    truth = {q: population_depth(q, pmf) for q in queries}

    def sup_gap(n: int) -> Fraction:
        draws = rng.choices(support, weights=[float(w) for w in pmf.mass], k=n)
        s = PosetSample.from_posets(draws)
        fam = enumerate_ufg_family(s)
        dm = depth_map(s, fam)
        return max(abs(dm.depth(q) - truth[q]) for q in queries)

    small = sorted(sup_gap(30) for _ in range(5))[2]
    large = sorted(sup_gap(400) for _ in range(5))[2]
    return large < small


# ---------------------------------------------------------------------------
# argument parsing


def _common(p: argparse.ArgumentParser, *, out_required: bool = True):
    p.add_argument("--out-dir", required=out_required, default=None)
    p.add_argument("--enum-limit", type=int, default=DEFAULT_ENUM_LIMIT)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ufgdepth",
                                 description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="performance CSV -> poset sample + sum statistics")
    p.add_argument("--input", required=True)
    p.add_argument("--orientations", required=True)
    p.add_argument("--measures", default=None)
    _common(p)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("analyze", help="sample file -> family, depth map, reports")
    p.add_argument("--input", required=True)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--timeout-secs", type=float, default=600.0)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--alpha", default="0.25,0.5,0.75")
    _common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("compare", help="rank shift between two measure subsets")
    p.add_argument("--input", required=True)
    p.add_argument("--orientations", required=True)
    p.add_argument("--measures", default=None)
    p.add_argument("--measures2", default=None)
    _common(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("davidson", help="fit the paired-comparison model with ties")
    p.add_argument("--input", required=True)
    _common(p)
    p.set_defaults(func=cmd_davidson)

    p = sub.add_parser("enumerate", help="enumerate all posets on a ground set")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--items", default=None)
    _common(p, out_required=False)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("extremal", help="exact extremal-depth search")
    p.add_argument("--input", required=True)
    p.add_argument("--direction", choices=[MAX, MIN], default=MAX)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--timeout-secs", type=float, default=600.0)
    p.add_argument("--emit-lp", action="store_true")
    _common(p)
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("selfcheck", help="run the property suites at desk scale")
    p.add_argument("--inject-fault", action="store_true",
                   help="force one failing suite (exit-code test hook)")
    _common(p, out_required=False)
    p.set_defaults(func=cmd_selfcheck)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "enumerate" and not (args.m or args.items):
        print("enumerate needs --m or --items", file=sys.stderr)
        return EXIT_DATA
    try:
        return args.func(args)
    except SolverTimeout as exc:
        print(f"timeout: {exc}", file=sys.stderr)
        return EXIT_TIMEOUT
    except (UfgError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    raise SystemExit(main())
