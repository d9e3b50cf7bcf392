"""Instance generators: random corpora and the named constructions.

Besides the seeded random generator this module builds the structured
instances used throughout: the quadratic shallow-cell family, the greedy
trap whose cost-efficiency greedy pays a near-logarithmic factor, the
double staircase with its universal line, and the lift of any stabbing
instance to weighted point/box piercing in three dimensions.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .geometry import (
    HORIZONTAL,
    Rect,
    Segment,
    StabInstance,
    frac,
    stabs,
)

F = Fraction


def gen_random(n: int, seed: int, coord_range: int = 100) -> StabInstance:
    """n random integer-coordinate rectangles, deterministic in the seed."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = random.Random(seed)
    rects = []
    for i in range(n):
        x1, x2 = sorted(rng.sample(range(coord_range + 1), 2))
        y1, y2 = sorted(rng.sample(range(coord_range + 1), 2))
        rects.append(Rect(x1, x2, y1, y2, id=i))
    return StabInstance(tuple(rects))


def gen_scc_counterexample(m: int) -> StabInstance:
    """m segments whose m^2/4 rectangles all have distinct depth-2 cells.

    Rectangle (i, j) is the square [i, j]^2 for i <= m/2 < j; it is stabbed
    by exactly the two fixed candidates at heights i and j, so the set
    system has quadratically many shallow cells on a linear ground set.
    """
    if m < 2 or m % 2:
        raise ValueError("m must be even and >= 2")
    h = m // 2
    rects = []
    rid = 0
    for i in range(1, h + 1):
        for j in range(h + 1, m + 1):
            rects.append(Rect(i, j, i, j, id=rid))
            rid += 1
    segs = []
    for i in range(1, m + 1):
        if i <= h:
            segs.append(Segment(i, m, i, id=i - 1))
        else:
            segs.append(Segment(1, i, i, id=i - 1))
    return StabInstance(tuple(rects), fixed_candidates=tuple(segs))


def gen_greedy_trap(
    levels: int, eps: Fraction = F(1, 100), weighted: bool = False
) -> StabInstance:
    """Nested-rectangle instance where efficiency greedy overpays.

    A binary tree of bottom rectangles (level i: 2^i rects of width
    (1-i*eps)/2^i, nested left/right inside the parent) all rises from
    y=0 to just above 1; tiny rank-ordered perturbations of the top edges
    make deeper tops lower.  Each bottom rect carries a partner rect from
    its top edge up to a common roof.  Greedy stabs every bottom rect along
    its own top edge, paying sum_i (1 - i*eps), while one full-width line
    under all the bottom tops plus one at the roof cost exactly 2.

    ``weighted`` keeps only the even levels and multiplies each rect into
    ceil(2^i / (1-i*eps)) coincident copies, the multiset variant that
    fools the width-weighted greedy as well.
    """
    if levels < 0:
        raise ValueError("levels must be >= 0")
    eps = frac(eps)
    if not 0 < eps < F(1, max(1, 2 * levels)):
        raise ValueError("eps must be in (0, 1/(2*levels))")
    spans = [[(F(0), F(1))]]
    for i in range(1, levels + 1):
        w = (1 - i * eps) / 2**i
        spans.append(
            [iv for a, b in spans[i - 1] for iv in ((a, a + w), (b - w, b))]
        )
    roof = 2 + (levels + 2) * eps
    delta_unit = eps / (4 * 2**levels)
    kept = [i for i in range(levels + 1) if not (weighted and i % 2)]
    keys = [(i, idx) for i in kept for idx in range(2**i)]
    # Order the perturbed tops so that the root's top edge splits the other
    # rectangles into a lower and an upper group whose maximal spans sum to
    # more than 1 in each direction of the split.  Any full-width segment
    # then leaves a residual of cost >= 1, pinning the optimum at exactly 2.
    # With fewer than two proper levels no such interleaving exists and the
    # tops simply decrease with depth.
    if len(kept) >= 3:
        l1, l2 = kept[1], kept[2]
        low = [(l1, 0), (l2, (2**l1 - 1) * 2 ** (l2 - l1))]
        order = low + [(0, 0)] + [k for k in keys if k not in low and k != (0, 0)]
    else:
        order = sorted(keys, key=lambda k: (-k[0], k[1]))
    rank_of = {key: r + 1 for r, key in enumerate(order)}
    rects: list[Rect] = []
    rid = 0
    for i in kept:
        copies = math.ceil(2**i / (1 - i * eps)) if weighted else 1
        for idx, (a, b) in enumerate(spans[i]):
            top = 1 + rank_of[(i, idx)] * delta_unit
            for _ in range(copies):
                rects.append(Rect(a, b, 0, top, id=rid))
                rid += 1
                rects.append(Rect(a, b, top, roof, id=rid))
                rid += 1
    return StabInstance(tuple(rects))


def gen_double_staircase(levels: int) -> StabInstance:
    """Staircase rising both ways from the origin, plus its line family.

    With k = levels/2 the fixed candidates are k(k+1) maximal lines, all
    stabbing exactly k+1 rectangles with pairwise distinct stab sets, and
    one universal line at height 1/2 that stabs everything.
    """
    if levels < 2 or levels % 2:
        raise ValueError("levels must be even and >= 2")
    k = levels // 2
    rects = tuple(
        Rect(i, i + 1, 0, abs(i) + 1, id=i + levels)
        for i in range(-levels, levels + 1)
    )
    segs = []
    sid = 0
    for i in range(1, k + 2):
        for j in range(1, k + 1):
            segs.append(
                Segment(-i - j + 1, i + k - j + 1, F(2 * i + 1, 2), id=sid)
            )
            sid += 1
    segs.append(Segment(-levels, levels + 1, F(1, 2), id=sid))
    return StabInstance(rects, fixed_candidates=tuple(segs))


Interval = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class Box3D:
    id: int
    extents: tuple[Interval, Interval, Interval]

    def contains(self, p: tuple[Fraction, Fraction, Fraction]) -> bool:
        return all(lo <= c <= hi for c, (lo, hi) in zip(p, self.extents))


@dataclass(frozen=True)
class Point3D:
    id: int
    coords: tuple[Fraction, Fraction, Fraction]
    weight: Fraction


@dataclass(frozen=True)
class PiercingInstance3D:
    boxes: tuple[Box3D, ...]
    points: tuple[Point3D, ...]


def piercing_3d(
    inst: StabInstance, segments: Sequence[Segment]
) -> PiercingInstance3D:
    """Lift stabbing to 3D piercing: segment (l, r, y) becomes the point
    (l, r, y) of weight r - l, rect [a, b] x [c, d] the box of all points
    with l <= a, r >= b, y in [c, d], clipped to finite extents.  A point
    lies in a box exactly when the segment stabs the rectangle.
    """
    if any(s.orientation != HORIZONTAL for s in segments):
        raise ValueError("3D lifting is defined for horizontal segments")
    lo1 = min(
        [s.x_left for s in segments] + [r.x_left for r in inst.rects]
    ) - 1
    hi2 = max(
        [s.x_right for s in segments] + [r.x_right for r in inst.rects]
    ) + 1
    boxes = tuple(
        Box3D(
            r.id,
            ((lo1, r.x_left), (r.x_right, hi2), (r.y_bottom, r.y_top)),
        )
        for r in inst.rects
    )
    points = tuple(
        Point3D(s.id, (s.x_left, s.x_right, s.y), s.length) for s in segments
    )
    return PiercingInstance3D(boxes, points)


def piercing_violations(
    p3d: PiercingInstance3D, inst: StabInstance, segments: Sequence[Segment]
) -> list[tuple[int, int]]:
    """All (segment id, rect id) pairs where point-in-box and stabs differ."""
    rect_by_id = inst.rect_by_id()
    box_by_id = {b.id: b for b in p3d.boxes}
    bad = []
    for pt, s in zip(p3d.points, segments):
        for r in inst.rects:
            if box_by_id[r.id].contains(pt.coords) != stabs(s, rect_by_id[r.id]):
                bad.append((s.id, r.id))
    return bad
