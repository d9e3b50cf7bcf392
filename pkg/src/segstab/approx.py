"""Constant-factor approximation by laminarization and LP rounding.

The pipeline: canonical candidates, deduplicated by stab set, snapped
onto two laminar families (stretch < 6), one covering LP over the snapped
family, then a decomposition that routes every rectangle to the family
carrying at least half of its LP mass.  Each side is rounded by repeated
inflated sampling with greedy repair; the union is a feasible stabbing
whose cost is bounded by the stretch times the rounding overhead.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .candidates import candidate_segments, dedup_by_stab_set
from .geometry import (
    Solution,
    StabInstance,
    canonicalize_solution,
    make_solution,
    transpose_instance,
)
from .laminar import LaminarDecomposition, laminarize
from .setcover import (
    FractionalSolution,
    SetCoverInstance,
    ZERO,
    decompose_and_conquer,
    greedy_cover,
    lp_solve,
    to_set_cover,
)
from .solve import vertical_candidates

ONE = Fraction(1)


@dataclass(frozen=True)
class RoundingParams:
    trials: int = 32
    inflation: tuple[int, ...] = (2, 4, 8)
    seed: int = 0
    lp_mode: str = "auto"


def round_laminar(
    sc: SetCoverInstance,
    z: FractionalSolution,
    params: RoundingParams = RoundingParams(),
) -> list[int]:
    """Sample sets with probability min(1, lambda*z), repair greedily.

    Runs trials x inflation-factors independent samples and keeps the
    cheapest feasible cover; ties break on the sorted id tuple so the
    result is deterministic for a fixed seed.
    """
    rng = random.Random(params.seed)
    masks = sc.masks()
    full = (1 << len(sc.universe)) - 1
    best: tuple[Fraction, tuple[int, ...]] | None = None
    for _ in range(max(1, params.trials)):
        for lam in params.inflation:
            chosen: list[int] = []
            covered = 0
            for j, (sid, _) in enumerate(sc.sets):
                p = min(ONE, lam * z.z.get(sid, ZERO))
                if p > 0 and rng.random() < p:
                    chosen.append(sid)
                    covered |= masks[j]
            if covered != full:
                rest = _repair(sc, masks, covered)
                chosen = sorted(set(chosen) | rest)
            cost = sum((sc.cost[sid] for sid in set(chosen)), ZERO)
            key = (cost, tuple(sorted(set(chosen))))
            if best is None or key < best:
                best = key
    assert best is not None
    return list(best[1])


def _repair(sc: SetCoverInstance, masks: list[int], covered: int) -> set[int]:
    """Greedy patch-up covering whatever the sample missed."""
    missing = [
        e for i, e in enumerate(sc.universe) if not covered >> i & 1
    ]
    idx = {e: i for i, e in enumerate(sc.universe)}
    sets = []
    for j, (sid, mem) in enumerate(sc.sets):
        mm = [e for e in mem if not covered >> idx[e] & 1]
        if mm:
            sets.append((sid, tuple(mm)))
    sub = SetCoverInstance(tuple(missing), tuple(sets), sc.cost)
    return set(greedy_cover(sub, mode="count").set_ids)


def _snap_and_cover(
    inst: StabInstance, cands, params: RoundingParams
) -> tuple[LaminarDecomposition, SetCoverInstance]:
    lam = laminarize(inst, dedup_by_stab_set(cands, inst.rects))
    return lam, to_set_cover(inst, lam.segments)


def approx_stab(
    inst: StabInstance, params: RoundingParams = RoundingParams()
) -> Solution:
    """Approximate minimum-length stabbing for unconstrained instances."""
    if inst.constrained:
        raise ValueError("approximation pipeline needs unconstrained input")
    if inst.hv:
        return approx_hv(inst, params)
    cands = candidate_segments(inst.rects)
    lam, sc = _snap_and_cover(inst, cands, params)
    z = lp_solve(sc, mode=params.lp_mode)
    f1, f2 = lam.families()
    res = decompose_and_conquer(
        sc,
        (frozenset(s.id for s in f1), frozenset(s.id for s in f2)),
        z,
        ONE,
        ONE,
        lambda s, y: round_laminar(s, y, params),
        lambda s, y: round_laminar(
            s, y, RoundingParams(params.trials, params.inflation, params.seed + 1)
        ),
    )
    by_id = {s.id: s for s in lam.segments}
    sol = make_solution(inst, (by_id[sid] for sid in res.set_ids))
    return canonicalize_solution(inst, sol)


def approx_hv(
    inst: StabInstance, params: RoundingParams = RoundingParams()
) -> Solution:
    """Horizontal-vertical variant: one joint LP, then a two-level
    decomposition (orientation first, laminar family second)."""
    if inst.constrained:
        raise ValueError("approximation pipeline needs unconstrained input")
    rects = inst.rects
    h_cands = dedup_by_stab_set(candidate_segments(rects), rects)
    lam_h = laminarize(inst, h_cands)
    # Vertical side: snap in the transposed world, then flip back.
    t_inst = transpose_instance(inst)
    v_raw = dedup_by_stab_set(candidate_segments(t_inst.rects), t_inst.rects)
    lam_v = laminarize(t_inst, v_raw)
    offset = max((s.id for s in lam_h.segments), default=-1) + 1
    from dataclasses import replace

    from .geometry import VERTICAL

    v_segments = tuple(
        replace(s, id=s.id + offset, orientation=VERTICAL)
        for s in lam_v.segments
    )
    all_segs = lam_h.segments + v_segments
    sc = to_set_cover(inst, all_segs)
    z = lp_solve(sc, mode=params.lp_mode)

    h_ids = frozenset(s.id for s in lam_h.segments)
    v_ids = frozenset(s.id for s in v_segments)

    def side_rounder(fam1: frozenset[int], fam2: frozenset[int], seed: int):
        def run(sub: SetCoverInstance, sub_z: FractionalSolution):
            ids = {sid for sid, _ in sub.sets}
            p = RoundingParams(params.trials, params.inflation, seed)
            p2 = RoundingParams(params.trials, params.inflation, seed + 1)
            return decompose_and_conquer(
                sub,
                (fam1 & ids, frozenset(ids - fam1)),
                sub_z,
                ONE,
                ONE,
                lambda s, y: round_laminar(s, y, p),
                lambda s, y: round_laminar(s, y, p2),
            ).set_ids

        return run

    h_f1 = frozenset(
        s.id for s in lam_h.segments if lam_h.family[s.id] == 1
    )
    v_f1 = frozenset(
        s.id + offset
        for s in lam_v.segments
        if lam_v.family[s.id] == 1
    )
    res = decompose_and_conquer(
        sc,
        (h_ids, v_ids),
        z,
        ONE,
        ONE,
        side_rounder(h_f1, h_ids - h_f1, params.seed + 10),
        side_rounder(v_f1, v_ids - v_f1, params.seed + 20),
    )
    by_id = {s.id: s for s in all_segs}
    return make_solution(inst, (by_id[sid] for sid in res.set_ids))
