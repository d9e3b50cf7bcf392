"""Exact weighted set cover by branch and bound.

Sound exact optimization over rationals: the incumbent comes from greedy,
pruning uses exactly dual-feasible LP prices (scaled to integers so the
per-node bound is integer arithmetic plus one rational comparison), and
branching covers the element with the fewest remaining options.  A node
budget turns the solver into an anytime one; the result says whether
optimality was proven.
"""

from __future__ import annotations

import os
from fractions import Fraction

from .setcover import (
    CoverResult,
    SetCoverInstance,
    ZERO,
    greedy_cover,
    lp_duals,
    lp_solve,
)

DUAL_SCALE = 1 << 40
DEFAULT_NODE_BUDGET = 10_000_000


def node_budget() -> int:
    raw = os.environ.get("SEGSTAB_NODE_BUDGET", "")
    return int(raw) if raw else DEFAULT_NODE_BUDGET


def exact_cover(
    sc: SetCoverInstance,
    budget: int | None = None,
    lp_mode: str = "auto",
) -> CoverResult:
    """Minimum-cost cover; ``proven`` is False only if the budget ran out."""
    if budget is None:
        budget = node_budget()
    idx = sc.element_index()
    m = len(sc.universe)
    full = (1 << m) - 1

    # Keep only the cheapest set per stab mask (ties: lowest id).
    raw_masks = sc.masks()
    best_for_mask: dict[int, int] = {}
    for j, mask in enumerate(raw_masks):
        if mask == 0:
            continue
        k = best_for_mask.get(mask)
        if k is None or sc.cost[sc.sets[j][0]] < sc.cost[sc.sets[k][0]]:
            best_for_mask[mask] = j
    order = sorted(best_for_mask.values(), key=lambda j: sc.sets[j][0])
    masks = [raw_masks[j] for j in order]
    ids = [sc.sets[j][0] for j in order]
    costs = [sc.cost[sc.sets[j][0]] for j in order]

    dedup = SetCoverInstance(
        sc.universe, tuple(sc.sets[j] for j in order), sc.cost
    )
    inc = greedy_cover(dedup, mode="count")
    best_cost = inc.cost
    best_sets = set(inc.set_ids)

    # Dual prices, truncated to integers over DUAL_SCALE.  Truncation only
    # lowers them, so exact feasibility (and bound validity) is preserved.
    y = lp_duals(dedup, mode=lp_mode)
    lower = sum(y, ZERO)
    yint = [int(v * DUAL_SCALE) for v in y]
    total_yint = sum(yint)

    # LP-guided incumbent: keep the heavy half of the fractional optimum and
    # repair the remainder greedily.  On instances whose LP happens to round
    # to an integral optimum this meets the dual bound straight away.
    z = lp_solve(dedup, mode=lp_mode).z
    chosen = [j for j in range(len(masks)) if z.get(ids[j], ZERO) >= Fraction(1, 2)]
    covered = 0
    for j in chosen:
        covered |= masks[j]
    while covered != full:
        j = min(
            (j for j in range(len(masks)) if masks[j] & ~covered),
            key=lambda j: (costs[j] / bin(masks[j] & ~covered).count("1"), ids[j]),
        )
        chosen.append(j)
        covered |= masks[j]
    lp_cost = sum((costs[j] for j in chosen), ZERO)
    if lp_cost < best_cost:
        best_cost = lp_cost
        best_sets = {ids[j] for j in chosen}

    # The exact dual mass is a valid global lower bound: meeting it proves
    # the incumbent optimal without any branching.
    if best_cost <= lower:
        return CoverResult(tuple(sorted(best_sets)), best_cost, proven=True, nodes=0)

    # Reduced-cost elimination: a cover containing set S costs at least
    # c(S) plus the dual mass outside S; drop S if that beats the incumbent.
    keep = []
    for j in range(len(masks)):
        ys = 0
        mm = masks[j]
        while mm:
            low = mm & -mm
            ys += yint[low.bit_length() - 1]
            mm ^= low
        if costs[j] + Fraction(total_yint - ys, DUAL_SCALE) <= best_cost:
            keep.append(j)
    masks = [masks[j] for j in keep]
    ids = [ids[j] for j in keep]
    costs = [costs[j] for j in keep]

    covering: list[list[int]] = [[] for _ in range(m)]
    for j, mask in enumerate(masks):
        mm = mask
        while mm:
            low = mm & -mm
            covering[low.bit_length() - 1].append(j)
            mm ^= low
    for e in range(m):
        if not covering[e]:
            # Every set covering e was eliminated: greedy was optimal there.
            return CoverResult(tuple(sorted(best_sets)), best_cost, proven=True, nodes=0)

    nodes = 0
    exhausted = False

    def dual_rest(uncovered: int) -> int:
        tot = 0
        mm = uncovered
        while mm:
            low = mm & -mm
            tot += yint[low.bit_length() - 1]
            mm ^= low
        return tot

    def dfs(uncovered: int, cost: Fraction, chosen: list[int], banned: set[int]):
        nonlocal nodes, best_cost, best_sets, exhausted
        if exhausted:
            return
        nodes += 1
        if nodes > budget:
            exhausted = True
            return
        if not uncovered:
            if cost < best_cost:
                best_cost = cost
                best_sets = {ids[j] for j in chosen}
            return
        if cost + Fraction(dual_rest(uncovered), DUAL_SCALE) >= best_cost:
            return
        # Branch on the uncovered element with the fewest usable sets.
        pick, options = -1, None
        mm = uncovered
        while mm:
            low = mm & -mm
            e = low.bit_length() - 1
            opts = [j for j in covering[e] if j not in banned]
            if not opts:
                return
            if options is None or len(opts) < len(options):
                pick, options = e, opts
                if len(opts) == 1:
                    break
            mm ^= low
        options.sort(key=lambda j: costs[j])
        newly_banned: list[int] = []
        for j in options:
            c2 = cost + costs[j]
            if c2 < best_cost:
                chosen.append(j)
                dfs(uncovered & ~masks[j], c2, chosen, banned)
                chosen.pop()
            # Later branches must not reuse this set, or covers repeat.
            banned.add(j)
            newly_banned.append(j)
            if exhausted:
                break
        for j in newly_banned:
            banned.discard(j)

    dfs(full, ZERO, [], set())
    return CoverResult(
        tuple(sorted(best_sets)), best_cost, proven=not exhausted, nodes=nodes
    )
