"""Shallow cell complexity of a stabbing set system.

In the set-cover view the candidate segments are the sets, so each
rectangle induces a cell: the subset of candidates that stab it.  The
k-shallow count is the number of distinct cells of depth at most k;
plotting it against k is the cheapest way to see whether a family is
union-complexity-friendly or not.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .geometry import Rect, Segment, stabs


def cells(cands: Sequence[Segment], rects: Sequence[Rect]) -> set[int]:
    """Distinct nonempty rectangle cells (bit j = cands[j] stabs it)."""
    out = set()
    for r in rects:
        m = 0
        for j, s in enumerate(cands):
            if stabs(s, r):
                m |= 1 << j
        if m:
            out.add(m)
    return out


def cell_count(cands: Sequence[Segment], rects: Sequence[Rect], k: int) -> int:
    """Number of distinct cells of depth between 1 and k."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return sum(1 for m in cells(cands, rects) if bin(m).count("1") <= k)


@dataclass(frozen=True)
class SCCProfile:
    by_depth: dict[int, int]  # cell depth -> number of distinct cells
    cumulative: dict[int, int]  # k -> cells of depth <= k
    orphans: tuple[int, ...]  # rect ids stabbed by no candidate
    total_cells: int


def scc_profile(cands: Sequence[Segment], rects: Sequence[Rect]) -> SCCProfile:
    masks: dict[int, int] = {}  # rect id -> mask, to spot orphans
    for r in rects:
        m = 0
        for j, s in enumerate(cands):
            if stabs(s, r):
                m |= 1 << j
        masks[r.id] = m
    depths = sorted(bin(m).count("1") for m in set(masks.values()) if m)
    by_depth: dict[int, int] = {}
    for d in depths:
        by_depth[d] = by_depth.get(d, 0) + 1
    cumulative, running = {}, 0
    for k in range(1, (depths[-1] if depths else 0) + 1):
        running += by_depth.get(k, 0)
        cumulative[k] = running
    orphans = tuple(rid for rid, m in masks.items() if not m)
    return SCCProfile(by_depth, cumulative, orphans, len(depths))
