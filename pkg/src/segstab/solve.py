"""Front door for solving a stabbing instance end to end.

Each solver here goes instance -> candidate family -> set cover ->
segments, so the CLI and the tests never juggle the intermediate ids
themselves.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Optional, Sequence

from .candidates import candidate_segments
from .exactcover import exact_cover
from .geometry import (
    Segment,
    Solution,
    StabInstance,
    VERTICAL,
    make_solution,
    transpose_instance,
)
from .setcover import (
    CoverResult,
    FractionalSolution,
    SetCoverInstance,
    greedy_cover,
    lp_solve,
    to_set_cover,
)


def vertical_candidates(inst: StabInstance, start_id: int = 0) -> list[Segment]:
    """Canonical vertical candidates, in the transposed field convention."""
    horiz = candidate_segments(transpose_instance(inst).rects)
    return [
        replace(s, id=start_id + k, orientation=VERTICAL)
        for k, s in enumerate(horiz)
    ]


def instance_candidates(inst: StabInstance) -> list[Segment]:
    """The family solutions may draw from: fixed, or canonical (+vertical)."""
    if inst.constrained:
        return list(inst.fixed_candidates)
    cands = list(candidate_segments(inst.rects))
    if inst.hv:
        cands += vertical_candidates(inst, start_id=len(cands))
    return cands


def build_cover(
    inst: StabInstance, cands: Optional[Sequence[Segment]] = None
) -> tuple[SetCoverInstance, dict[int, Segment]]:
    if cands is None:
        cands = instance_candidates(inst)
    return to_set_cover(inst, cands), {s.id: s for s in cands}


def _to_solution(
    inst: StabInstance, res: CoverResult, by_id: dict[int, Segment]
) -> Solution:
    return make_solution(inst, (by_id[sid] for sid in res.set_ids))


def solve_exact(
    inst: StabInstance,
    budget: Optional[int] = None,
    lp_mode: str = "auto",
) -> tuple[Solution, CoverResult]:
    """Optimal stabbing via branch and bound (see the CoverResult.proven
    flag for whether the node budget sufficed)."""
    sc, by_id = build_cover(inst)
    res = exact_cover(sc, budget=budget, lp_mode=lp_mode)
    return _to_solution(inst, res, by_id), res


def solve_greedy(inst: StabInstance, mode: str = "count") -> Solution:
    sc, by_id = build_cover(inst)
    widths = None
    if mode == "width":
        widths = {r.id: r.width for r in inst.rects}
    res = greedy_cover(sc, mode=mode, widths=widths)
    return _to_solution(inst, res, by_id)


def solve_lp(
    inst: StabInstance, mode: str = "auto"
) -> tuple[FractionalSolution, dict[int, Segment]]:
    sc, by_id = build_cover(inst)
    return lp_solve(sc, mode=mode), by_id
