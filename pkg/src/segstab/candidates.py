"""Canonical candidate segments: the O(n^3) family containing an optimum.

A candidate runs from some rectangle's left boundary to some rectangle's
right boundary at the height of some rectangle's top boundary, and must
stab at least one rectangle.  Generation works level by level with bitmask
stab sets so large structured instances stay cheap.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from fractions import Fraction
from typing import Optional, Sequence

from .geometry import HORIZONTAL, Rect, Segment


def stab_mask(seg: Segment, rects: Sequence[Rect]) -> int:
    """Bitmask of rect positions stabbed by ``seg`` (horizontal only)."""
    m = 0
    for i, r in enumerate(rects):
        if (
            seg.x_left <= r.x_left
            and r.x_right <= seg.x_right
            and r.y_bottom <= seg.y <= r.y_top
        ):
            m |= 1 << i
    return m


def candidate_segments(rects: Sequence[Rect]) -> list[Segment]:
    """All canonical candidates, sorted by (y, left, right), deduplicated."""
    if not rects:
        raise ValueError("need at least one rectangle")
    lefts = sorted({r.x_left for r in rects})
    rights = sorted({r.x_right for r in rects})
    tops = sorted({r.y_top for r in rects})
    found: set[tuple[Fraction, Fraction, Fraction]] = set()
    for y in tops:
        level = [r for r in rects if r.y_bottom <= y <= r.y_top]
        if not level:
            continue
        # f(a) = min right edge over level rects with x_left >= a; a candidate
        # [a, b] stabs something at this level iff b >= f(a).
        level.sort(key=lambda r: r.x_left)
        xs = [r.x_left for r in level]
        suffix_min: list[Fraction] = [None] * len(level)
        acc = None
        for i in range(len(level) - 1, -1, -1):
            acc = level[i].x_right if acc is None else min(acc, level[i].x_right)
            suffix_min[i] = acc
        for a in lefts:
            i = bisect_left(xs, a)
            if i == len(level):
                continue
            need = suffix_min[i]
            j = bisect_left(rights, need)
            for b in rights[j:]:
                if b > a:
                    found.add((y, a, b))
    return [
        Segment(a, b, y, id=k, orientation=HORIZONTAL)
        for k, (y, a, b) in enumerate(sorted(found))
    ]


def dedup_by_stab_set(
    cands: Sequence[Segment], rects: Sequence[Rect]
) -> list[Segment]:
    """Keep one cheapest candidate per distinct stab set (lowest id on ties).

    Preserves at least one optimal solution: swapping a segment for the kept
    representative of its stab set never increases cost.
    """
    by_y: dict[Fraction, list[Segment]] = {}
    for s in cands:
        by_y.setdefault(s.y, []).append(s)
    best: dict[int, Segment] = {}
    for y, group in by_y.items():
        level = sorted(
            (
                (r.x_left, r.x_right, 1 << i)
                for i, r in enumerate(rects)
                if r.y_bottom <= y <= r.y_top
            ),
            reverse=True,
        )
        # Sweep the candidates by decreasing left endpoint, absorbing the
        # level rects whose left edge is still reachable; a prefix-OR over
        # the absorbed rects sorted by right edge answers each stab mask
        # with one bisection instead of a scan.
        rights: list[Fraction] = []
        masks: list[int] = []
        prefix: list[int] = [0]
        k = 0
        for s in sorted(group, key=lambda s: s.x_left, reverse=True):
            while k < len(level) and level[k][0] >= s.x_left:
                _, xr, bit = level[k]
                pos = bisect_left(rights, xr)
                rights.insert(pos, xr)
                masks.insert(pos, bit)
                prefix = [0]
                for b in masks:
                    prefix.append(prefix[-1] | b)
                k += 1
            m = prefix[bisect_right(rights, s.x_right)]
            if m == 0:
                continue
            cur = best.get(m)
            if cur is None or (s.length, s.id) < (cur.length, cur.id):
                best[m] = s
    return sorted(best.values(), key=lambda s: s.id)


def prune_dominated(
    cands: Sequence[Segment],
    rects: Sequence[Rect],
    limit: Optional[int] = 4000,
) -> list[Segment]:
    """Drop candidates whose stab set is contained in a no-longer candidate.

    Quadratic in the number of distinct stab sets; ``limit`` guards against
    accidental use on huge families (dedup alone is applied beyond it).
    """
    kept = dedup_by_stab_set(cands, rects)
    if limit is not None and len(kept) > limit:
        return kept
    masks = [stab_mask(s, rects) for s in kept]
    order = sorted(
        range(len(kept)), key=lambda i: (-bin(masks[i]).count("1"), kept[i].length)
    )
    result: list[tuple[Segment, int]] = []
    for i in order:
        m, s = masks[i], kept[i]
        if any(m | m2 == m2 and s2.length <= s.length for s2, m2 in result):
            continue
        result.append((s, m))
    return sorted((s for s, _ in result), key=lambda s: s.id)
