"""Shared fixtures and independent brute-force oracles.

The oracles here deliberately avoid the library's candidate enumeration and
branch-and-bound: covers are priced over *subsets of rectangles* directly
(the cheapest segment stabbing a group costs the width of the group's hull,
and exists iff the group's vertical ranges share a point), so agreement with
the solvers is meaningful evidence rather than a tautology.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import pytest

from segstab import Rect, Segment, StabInstance, gen_random, stabs

F = Fraction


def _feasible_groups(rects):
    """All non-empty rect groups a single horizontal segment can stab.

    Returns (mask, cost) pairs; cost is the x-hull width of the group.
    """
    n = len(rects)
    out = []
    for mask in range(1, 1 << n):
        group = [rects[i] for i in range(n) if mask >> i & 1]
        lo = max(r.y_bottom for r in group)
        hi = min(r.y_top for r in group)
        if lo > hi:
            continue
        cost = max(r.x_right for r in group) - min(r.x_left for r in group)
        out.append((mask, cost))
    return out


def _cover_dp(n, priced_sets):
    """Minimum cost to cover {0..n-1} from (mask, cost) sets, or None."""
    full = (1 << n) - 1
    by_elem = [[] for _ in range(n)]
    for mask, cost in priced_sets:
        for e in range(n):
            if mask >> e & 1:
                by_elem[e].append((mask, cost))

    @lru_cache(maxsize=None)
    def best(uncovered):
        if not uncovered:
            return F(0)
        e = (uncovered & -uncovered).bit_length() - 1
        result = None
        for mask, cost in by_elem[e]:
            sub = best(uncovered & ~mask)
            if sub is not None and (result is None or cost + sub < result):
                result = cost + sub
        return result

    return best(full)


def brute_optimum(inst: StabInstance) -> Fraction | None:
    """Exact optimum by exhaustive subset covering (unconstrained, length)."""
    if inst.fixed_candidates is not None:
        priced = []
        rects = inst.rects
        for s in inst.fixed_candidates:
            mask = sum(1 << i for i, r in enumerate(rects) if stabs(s, r))
            if mask:
                priced.append((mask, s.length))
        return _cover_dp(len(rects), priced)
    return _cover_dp(len(inst.rects), _feasible_groups(inst.rects))


def brute_optimum_hv(inst: StabInstance) -> Fraction | None:
    """Exact optimum when each rect may be stabbed horizontally or vertically."""
    rects = inst.rects
    n = len(rects)
    priced = list(_feasible_groups(rects))
    for mask in range(1, 1 << n):
        group = [rects[i] for i in range(n) if mask >> i & 1]
        lo = max(r.x_left for r in group)
        hi = min(r.x_right for r in group)
        if lo > hi:
            continue
        cost = max(r.y_top for r in group) - min(r.y_bottom for r in group)
        priced.append((mask, cost))
    return _cover_dp(n, priced)


@pytest.fixture
def small_corpus():
    """Deterministic bundle of small random instances for oracle comparisons."""
    return [gen_random(n, seed) for n in (3, 4, 5) for seed in range(5)]


@pytest.fixture
def unit_rect():
    return Rect(F(0), F(1), F(0), F(1), id=0)


@pytest.fixture
def two_disjoint():
    return StabInstance(
        (Rect(0, 1, 0, 1, id=0), Rect(5, 6, 5, 6, id=1))
    )
