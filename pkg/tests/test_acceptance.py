"""End-to-end acceptance checks for the whole pipeline.

Each test is a self-contained criterion: oracle agreement, LP soundness,
laminarization and shallow-cell bounds, the greedy trap, the vertex-cover
gadget identity, the SPSC correspondences, the 3D piercing lift, the
double staircase, and the approximation sweep.  Everything except the
explicitly statistical sweep uses exact rational arithmetic.
"""

import time
from fractions import Fraction as F

from segstab.approx import RoundingParams, approx_stab
from segstab.candidates import candidate_segments, dedup_by_stab_set
from segstab.exactcover import exact_cover
from segstab.generators import (
    gen_double_staircase,
    gen_greedy_trap,
    gen_random,
    gen_scc_counterexample,
    piercing_3d,
    piercing_violations,
)
from segstab.geometry import StabInstance, verify_solution
from segstab.hardness import (
    build_visibility,
    compile_np_instance,
    gen_spsc,
    min_vertex_cover,
    spsc_cover_optimum,
    spsc_to_stabbing,
)
from segstab.laminar import is_x_laminar, laminarize
from segstab.scc import cell_count, scc_profile
from segstab.setcover import lp_solve, to_set_cover
from segstab.solve import (
    build_cover,
    instance_candidates,
    solve_exact,
    solve_greedy,
)

from conftest import brute_optimum

_ORACLE_CACHE: dict[int, tuple] = {}


def _oracle_corpus():
    """200 seeded instances with their brute-force and solver optima."""
    if not _ORACLE_CACHE:
        rows = []
        for seed in range(200):
            n = 3 + seed % 5  # n in 3..7
            inst = gen_random(n, seed)
            sc, _ = build_cover(inst)
            rows.append((inst, sc, brute_optimum(inst), exact_cover(sc)))
        _ORACLE_CACHE[0] = tuple(rows)
    return _ORACLE_CACHE[0]


def test_01_exact_matches_brute_force():
    t0 = time.monotonic()
    for _, _, brute, res in _oracle_corpus():
        assert res.proven
        assert res.cost == brute
    assert time.monotonic() - t0 < 120


def test_02_lp_never_exceeds_optimum():
    violations = 0
    for _, sc, _, res in _oracle_corpus():
        if lp_solve(sc).objective > res.cost:
            violations += 1
    assert violations == 0


def test_03_laminarized_optimum_within_six_times():
    t0 = time.monotonic()
    for seed in range(100):
        n = 3 + seed % 4  # n in 3..6
        inst = gen_random(n, seed)
        cands = dedup_by_stab_set(candidate_segments(inst.rects), inst.rects)
        lam = laminarize(inst, cands)
        f1, f2 = lam.families()
        assert is_x_laminar(list(f1))
        assert is_x_laminar(list(f2))
        by_id = {s.id: s for s in lam.segments}
        for orig in cands:
            snapped = by_id[lam.provenance[orig.id]]
            if orig.length > 0:
                assert snapped.length <= 6 * orig.length
        opt = brute_optimum(inst)
        snapped_opt = brute_optimum(
            StabInstance(inst.rects, fixed_candidates=tuple(lam.segments))
        )
        assert opt <= snapped_opt <= 6 * opt
    assert time.monotonic() - t0 < 300


def test_04_shallow_cell_bounds():
    for m in range(2, 21, 2):
        inst = gen_scc_counterexample(m)
        assert cell_count(inst.fixed_candidates, inst.rects, 2) == m * m // 4
    # Laminarized families stay quadratically shallow: mk^2 cells at depth k.
    for seed in range(20):
        inst = gen_random(4 + seed % 5, seed)
        cands = dedup_by_stab_set(candidate_segments(inst.rects), inst.rects)
        lam = laminarize(inst, cands)
        for fam in lam.families():
            m = len(fam)
            if not 0 < m <= 40:
                continue
            prof = scc_profile(tuple(fam), inst.rects)
            for k, count in prof.cumulative.items():
                assert count <= m * k * k


def _bottom_tops(inst):
    return {
        (r.x_left, r.x_right, r.y_top)
        for r in inst.rects
        if r.y_bottom == 0
    }


def test_05_greedy_trap():
    eps = F(1, 100)
    for levels in (2, 3, 4, 5):
        inst = gen_greedy_trap(levels, eps=eps)
        sol = solve_greedy(inst, mode="count")
        assert {
            (s.x_left, s.x_right, s.y) for s in sol.segments
        } == _bottom_tops(inst)
        assert sol.cost == sum((1 - i * eps) for i in range(levels + 1))
        _, res = solve_exact(inst)
        assert res.proven and res.cost == 2
        winst = gen_greedy_trap(levels, eps=eps, weighted=True)
        wsol = solve_greedy(winst, mode="width")
        assert {
            (s.x_left, s.x_right, s.y) for s in wsol.segments
        } == _bottom_tops(winst)


def test_06_np_gadget_identity():
    graphs = {
        "P2": ([1, 2], [(1, 2)]),
        "P3": ([1, 2, 3], [(1, 2), (2, 3)]),
        "C3": ([1, 2, 3], [(1, 2), (2, 3), (1, 3)]),
        "C4": ([1, 2, 3, 4], [(1, 2), (2, 3), (3, 4), (1, 4)]),
        "K1,3": ([1, 2, 3, 4], [(1, 2), (1, 3), (1, 4)]),
        "K4-e": ([1, 2, 3, 4], [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]),
    }
    t0 = time.monotonic()
    for name, (vs, es) in graphs.items():
        gi = compile_np_instance(build_visibility(vs, es))
        _, res = solve_exact(gi.inst, budget=10**7)
        assert res.proven, name
        assert res.cost == gi.c + min_vertex_cover(vs, es), name
    assert time.monotonic() - t0 < 600


def test_07_spsc_correspondence():
    for m in (2, 4):
        spsc = gen_spsc(m, seed=0)
        opt_sets = spsc_cover_optimum(spsc)
        _, card = solve_exact(spsc_to_stabbing(spsc, "cardinality"))
        assert card.proven and card.cost == opt_sets
        _, cons = solve_exact(spsc_to_stabbing(spsc, "constrained"))
        assert cons.proven and cons.cost <= 2 * opt_sets


def test_08_piercing_isomorphism():
    for seed in range(50):
        base = gen_random(3 + seed % 6, seed)
        segs = tuple(instance_candidates(base))
        inst = StabInstance(base.rects, fixed_candidates=segs)
        p3d = piercing_3d(inst, segs)
        assert piercing_violations(p3d, inst, segs) == []


def test_09_double_staircase():
    from segstab.candidates import stab_mask

    for levels in (4, 8, 12):
        k = levels // 2
        inst = gen_double_staircase(levels)
        family, universal = inst.fixed_candidates[:-1], inst.fixed_candidates[-1]
        assert len(family) == k * (k + 1)
        masks = [stab_mask(s, inst.rects) for s in family]
        assert len(set(masks)) == k * (k + 1)
        assert all(bin(m).count("1") == k + 1 for m in masks)
        assert stab_mask(universal, inst.rects) == (1 << len(inst.rects)) - 1


def test_10_approximation_sweep():
    t0 = time.monotonic()
    params = RoundingParams(trials=2, inflation=(2, 4))
    for i in range(500):
        n = 3 + (i * 48) // 500  # n ranges 3..50
        inst = gen_random(n, seed=i, coord_range=4 * n)
        sol = approx_stab(inst, params)
        assert verify_solution(inst, sol).feasible
        dd = dedup_by_stab_set(candidate_segments(inst.rects), inst.rects)
        lp = lp_solve(to_set_cover(inst, dd), mode="float").objective
        assert lp > 0 and sol.cost / lp < float("inf")
    for seed in range(20):
        inst = gen_random(3 + seed % 4, seed)
        sol = approx_stab(inst, params)
        assert sol.cost <= 12 * brute_optimum(inst)
    for i in range(100):
        base = gen_random(3 + i % 8, 1000 + i)
        inst = StabInstance(base.rects, hv=True)
        sol = approx_stab(inst, params)
        assert verify_solution(inst, sol).feasible
    assert time.monotonic() - t0 < 900
