"""Command-line interface.

Exit codes: 0 success, 1 infeasible instance or violated certificate,
2 usage error.  Every randomized subcommand takes --seed and is fully
reproducible; SEGSTAB_NODE_BUDGET caps the branch-and-bound search.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from fractions import Fraction
from typing import Optional

from . import approx, generators, hardness, render, serialization, solve
from .approx import RoundingParams
from .geometry import InfeasibleInstanceError, StabInstance, verify_solution
from .laminar import laminarize
from .scc import scc_profile
from .setcover import lp_solve
from .candidates import candidate_segments, dedup_by_stab_set


def _emit(doc, out: Optional[str]) -> None:
    if isinstance(doc, str):
        text = doc
    else:
        text = json.dumps(doc, indent=1) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_instance(path: str) -> StabInstance:
    obj = serialization.load(path)
    if not isinstance(obj, StabInstance):
        raise SystemExit(f"{path} is not an instance file")
    return obj


def _dec(x: Fraction) -> str:
    return f"{float(x):.12g}"


def cmd_gen(args) -> int:
    if args.kind == "random":
        inst = generators.gen_random(args.n, args.seed, args.coord_range)
    elif args.kind == "scc":
        inst = generators.gen_scc_counterexample(args.m)
    elif args.kind == "greedy-trap":
        inst = generators.gen_greedy_trap(
            args.levels, Fraction(args.eps), args.weighted
        )
    else:
        inst = generators.gen_double_staircase(args.levels)
    _emit(serialization.to_dict(inst), args.out)
    return 0


def cmd_candidates(args) -> int:
    inst = _load_instance(args.instance)
    cands = solve.instance_candidates(inst)
    if args.dedup:
        cands = dedup_by_stab_set(cands, inst.rects)
    doc = {
        "type": "segment_list",
        "count": len(cands),
        "segments": [serialization._seg_dict(s) for s in cands],
    }
    _emit(doc, args.out)
    return 0


def cmd_laminarize(args) -> int:
    inst = _load_instance(args.instance)
    cands = dedup_by_stab_set(candidate_segments(inst.rects), inst.rects)
    lam = laminarize(inst, cands)
    _emit(serialization.to_dict(lam), args.out)
    return 0


def cmd_solve(args) -> int:
    inst = _load_instance(args.instance)
    if args.algo == "exact":
        sol, res = solve.solve_exact(inst)
        doc = serialization.to_dict(sol)
        doc["proven"] = res.proven
        doc["nodes"] = res.nodes
    elif args.algo in ("greedy", "greedy-width"):
        mode = "count" if args.algo == "greedy" else "width"
        sol = solve.solve_greedy(inst, mode=mode)
        doc = serialization.to_dict(sol)
    elif args.algo == "lp":
        z, _ = solve.solve_lp(inst)
        doc = {
            "type": "fractional_solution",
            "objective": serialization.frac_to_str(z.objective),
            "z": {
                str(sid): serialization.frac_to_str(v)
                for sid, v in sorted(z.z.items())
                if v
            },
        }
    else:  # approx
        sol = approx.approx_stab(inst, RoundingParams(trials=args.trials, seed=args.seed))
        doc = serialization.to_dict(sol)
    _emit(doc, args.out)
    return 0


def cmd_approx(args) -> int:
    inst = _load_instance(args.instance)
    params = RoundingParams(trials=args.trials, seed=args.seed)
    sol = approx.approx_hv(inst, params) if args.hv else approx.approx_stab(inst, params)
    _emit(serialization.to_dict(sol), args.out)
    return 0


def cmd_scc(args) -> int:
    inst = _load_instance(args.instance)
    cands = solve.instance_candidates(inst)
    prof = scc_profile(cands, inst.rects)
    doc = {
        "type": "scc_profile",
        "by_depth": prof.by_depth,
        "cumulative": prof.cumulative,
        "orphans": list(prof.orphans),
        "total_cells": prof.total_cells,
    }
    _emit(doc, args.out)
    return 0


def _read_edges(path: str):
    edges = []
    verts = set()
    with open(path) as fh:
        for line in fh:
            line = line.split("#")[0].strip()
            if not line:
                continue
            u, w = (int(t) for t in line.split())
            edges.append((u, w))
            verts.update((u, w))
    return sorted(verts), edges


def cmd_harden(args) -> int:
    if args.target == "vc":
        verts, edges = _read_edges(args.graph)
        rep = hardness.build_visibility(verts, edges)
        gi = hardness.compile_np_instance(rep)
        cert = {
            "type": "np_certificate",
            "c": serialization.frac_to_str(gi.c),
            "scale": gi.scale,
            "n": gi.n,
            "gadget_rects": {str(v): list(g.rect_ids) for v, g in gi.gadgets.items()},
            "edge_rects": {f"{u}-{w}": rid for (u, w), rid in gi.edge_rects.items()},
        }
        if args.oracle:
            vc = hardness.min_vertex_cover(verts, edges)
            cert["min_vertex_cover"] = vc
            cert["expected_optimum"] = serialization.frac_to_str(gi.c + vc)
        _emit(serialization.to_dict(gi.inst), args.out)
        if args.certificate:
            _emit(cert, args.certificate)
        return 0
    spsc = hardness.gen_spsc(args.m, args.seed)
    mode = "cardinality" if args.mode == "card" else "constrained"
    inst = hardness.spsc_to_stabbing(spsc, mode)
    _emit(serialization.to_dict(inst), args.out)
    if args.certificate:
        cert = {
            "type": "spsc_certificate",
            "m": spsc.m,
            "n": spsc.n,
            "triples": [list(t) for t in spsc.triples],
            "sets": {str(sid): sorted(mem) for sid, mem in spsc.sets},
        }
        if args.oracle:
            cert["spsc_optimum"] = hardness.spsc_cover_optimum(spsc)
        _emit(cert, args.certificate)
    return 0


def cmd_render(args) -> int:
    inst = _load_instance(args.instance)
    sol = serialization.load(args.solution) if args.solution else None
    lam = serialization.load(args.decomposition) if args.decomposition else None
    _emit(render.render_svg(inst, sol, lam), args.out)
    return 0


def cmd_bench(args) -> int:
    from concurrent.futures import ThreadPoolExecutor

    def one(i: int):
        inst = generators.gen_random(args.n, args.seed + i, 4 * args.n)
        sc, _ = solve.build_cover(inst)
        lp = lp_solve(sc).objective
        rows = []
        for algo in ("greedy", "approx"):
            t0 = time.perf_counter()
            if algo == "greedy":
                sol = solve.solve_greedy(inst)
            else:
                sol = approx.approx_stab(
                    inst, RoundingParams(trials=args.trials, seed=args.seed + i)
                )
            ms = 1000 * (time.perf_counter() - t0)
            rows.append(
                {
                    "instance": f"random-{args.seed + i}",
                    "n": args.n,
                    "algo": algo,
                    "cost": sol.cost,
                    "lp_bound": lp,
                    "ratio": sol.cost / lp if lp else None,
                    "ms": ms,
                }
            )
        return rows

    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        rows = [r for chunk in pool.map(one, range(args.count)) for r in chunk]
    csv_path = args.out or "bench.csv"
    with open(csv_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(
            ["instance", "n", "algo", "cost", "cost_exact", "lp_bound",
             "lp_bound_exact", "ratio", "ms"]
        )
        for row in rows:
            w.writerow(
                [
                    row["instance"], row["n"], row["algo"],
                    _dec(row["cost"]), serialization.frac_to_str(row["cost"]),
                    _dec(row["lp_bound"]), serialization.frac_to_str(row["lp_bound"]),
                    _dec(row["ratio"]) if row["ratio"] is not None else "",
                    f"{row['ms']:.1f}",
                ]
            )
    png_path = args.figure or os.path.splitext(csv_path)[0] + ".png"
    render.render_bench_png(rows, png_path)
    print(f"wrote {csv_path}", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    inst = _load_instance(args.instance)
    sol = serialization.load(args.solution)
    report = verify_solution(inst, sol)
    doc = {
        "type": "verify_report",
        "feasible": report.feasible,
        "uncovered": list(report.uncovered),
        "foreign_segments": list(report.foreign_segments),
        "recomputed_cost": serialization.frac_to_str(report.recomputed_cost),
        "claimed_cost": serialization.frac_to_str(sol.cost),
    }
    ok = report.feasible and report.recomputed_cost == sol.cost
    _emit(doc, args.out)
    return 0 if ok else 1


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="segstab", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed=True, out=True):
        if seed:
            sp.add_argument("--seed", type=int, default=0)
        if out:
            sp.add_argument("--out", default=None)

    g = sub.add_parser("gen", help="generate an instance")
    gs = g.add_subparsers(dest="kind", required=True)
    r = gs.add_parser("random")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--coord-range", type=int, default=100)
    common(r)
    s = gs.add_parser("scc")
    s.add_argument("--m", type=int, required=True)
    common(s, seed=False)
    t = gs.add_parser("greedy-trap")
    t.add_argument("--levels", type=int, required=True)
    t.add_argument("--eps", default="1/100")
    t.add_argument("--weighted", action="store_true")
    common(t, seed=False)
    d = gs.add_parser("staircase")
    d.add_argument("--levels", type=int, required=True)
    common(d, seed=False)
    for sp in (r, s, t, d):
        sp.set_defaults(func=cmd_gen)

    c = sub.add_parser("candidates", help="canonical candidate family")
    c.add_argument("instance")
    c.add_argument("--dedup", action="store_true")
    common(c, seed=False)
    c.set_defaults(func=cmd_candidates)

    l = sub.add_parser("laminarize", help="snap candidates to laminar families")
    l.add_argument("instance")
    common(l, seed=False)
    l.set_defaults(func=cmd_laminarize)

    so = sub.add_parser("solve", help="solve an instance")
    so.add_argument("instance")
    so.add_argument(
        "--algo",
        choices=["exact", "greedy", "greedy-width", "lp", "approx"],
        default="exact",
    )
    so.add_argument("--trials", type=int, default=32)
    common(so)
    so.set_defaults(func=cmd_solve)

    a = sub.add_parser("approx", help="LP-rounding approximation")
    a.add_argument("instance")
    a.add_argument("--trials", type=int, default=32)
    a.add_argument("--hv", action="store_true")
    common(a)
    a.set_defaults(func=cmd_approx)

    sc = sub.add_parser("scc", help="shallow cell complexity profile")
    sc.add_argument("instance")
    common(sc, seed=False)
    sc.set_defaults(func=cmd_scc)

    h = sub.add_parser("harden", help="compile hardness constructions")
    hs = h.add_subparsers(dest="target", required=True)
    hv = hs.add_parser("vc")
    hv.add_argument("graph", help="edge list file, one 'u w' pair per line")
    hv.add_argument("--certificate", default=None)
    hv.add_argument("--oracle", action="store_true")
    common(hv, seed=False)
    hv.set_defaults(func=cmd_harden)
    hp = hs.add_parser("spsc")
    hp.add_argument("--m", type=int, required=True)
    hp.add_argument("--mode", choices=["card", "constr"], default="card")
    hp.add_argument("--certificate", default=None)
    hp.add_argument("--oracle", action="store_true")
    common(hp)
    hp.set_defaults(func=cmd_harden)

    re = sub.add_parser("render", help="render an instance to SVG")
    re.add_argument("instance")
    re.add_argument("--solution", default=None)
    re.add_argument("--decomposition", default=None)
    common(re, seed=False)
    re.set_defaults(func=cmd_render)

    b = sub.add_parser("bench", help="benchmark over a random corpus")
    b.add_argument("--n", type=int, default=20)
    b.add_argument("--count", type=int, default=20)
    b.add_argument("--trials", type=int, default=8)
    b.add_argument("--jobs", type=int, default=4)
    b.add_argument("--figure", default=None)
    common(b)
    b.set_defaults(func=cmd_bench)

    v = sub.add_parser("verify", help="check a solution file")
    v.add_argument("instance")
    v.add_argument("solution")
    common(v, seed=False)
    v.set_defaults(func=cmd_verify)
    return p


def run(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InfeasibleInstanceError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
