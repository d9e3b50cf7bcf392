"""Snapping segments onto two laminar interval families.

Any interval of length at most 1/3 fits inside a cell of the plain dyadic
grid or of the dyadic grid shifted right by 1/3, at a grid level that
stretches it by a factor in [3, 6).  The two grids are each laminar, so an
arbitrary candidate family turns into two laminar families while every
stab set only grows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .geometry import Coord, HORIZONTAL, Segment, StabInstance, frac

ONE_THIRD = Fraction(1, 3)


def _interiors_nested_or_disjoint(a, b, c, d) -> bool:
    if b <= c or d <= a:  # interior-disjoint (endpoint touch allowed)
        return True
    return (a <= c and d <= b) or (c <= a and b <= d)


def is_x_laminar(segments: Sequence[Segment]) -> bool:
    """True if every pair of x-intervals is nested or interior-disjoint."""
    iv = sorted(s.interval for s in segments)
    for i, (a, b) in enumerate(iv):
        for c, d in iv[i + 1 :]:
            if c >= b:
                break
            if not _interiors_nested_or_disjoint(a, b, c, d):
                return False
    return True


def dyadic_snap(a: Coord, b: Coord) -> tuple[Fraction, Fraction, int]:
    """Smallest-stretch shifted-dyadic cell containing [a, b].

    Requires 0 < b - a <= 1/3.  Returns (left, right, family) where family
    1 is the plain dyadic grid and family 2 the grid shifted by 1/3; the
    ratio (right - left) / (b - a) always lands in [3, 6).
    """
    a, b = frac(a), frac(b)
    if not 0 < b - a <= ONE_THIRD:
        raise ValueError(f"interval length {b - a} outside (0, 1/3]")
    s = 0
    while b - a <= Fraction(1, 3 * 2 ** (s + 1)):
        s += 1
    cell = Fraction(1, 2**s)
    j = (a / cell).__floor__()
    if (j + 1) * cell >= b:
        return j * cell, (j + 1) * cell, 1
    # A grid point j/2^s lies strictly inside (a, b); use the shifted grid.
    j += 1
    shift = cell / 3 if s % 2 == 0 else -cell / 3
    left = (j - 1) * cell + shift if s % 2 == 0 else j * cell + shift
    right = left + cell
    assert left <= a and b <= right, "shifted cell misses the interval"
    return left, right, 2


@dataclass(frozen=True)
class LaminarDecomposition:
    segments: tuple[Segment, ...]
    family: dict[int, int]  # segment id -> 1 or 2
    stretch: dict[int, Fraction]  # new id -> blown-up length ratio
    provenance: dict[int, int]  # original candidate id -> new segment id
    scale: Fraction
    translation: Fraction

    def families(self) -> tuple[tuple[Segment, ...], tuple[Segment, ...]]:
        f1 = tuple(s for s in self.segments if self.family[s.id] == 1)
        f2 = tuple(s for s in self.segments if self.family[s.id] == 2)
        return f1, f2


def laminarize(
    inst: StabInstance, cands: Sequence[Segment]
) -> LaminarDecomposition:
    """Snap every candidate onto one of two laminar families.

    Coordinates are translated and scaled (rationally, hence reversibly) so
    the longest candidate has length 1/3, snapped, and mapped back.  Snapped
    segments keep their y, contain their original, and deduplicate to the
    lowest originating id; within each family the x-intervals are laminar.
    """
    if any(s.orientation != HORIZONTAL for s in cands):
        raise ValueError("laminarize expects horizontal candidates")
    if not cands:
        return LaminarDecomposition((), {}, {}, {}, Fraction(1), Fraction(0))
    x0 = min(s.x_left for s in cands)
    lmax = max(s.length for s in cands)
    scale = Fraction(1, 3) / lmax
    seen: dict[tuple[Fraction, Fraction, Fraction, int], int] = {}
    out: list[Segment] = []
    family: dict[int, int] = {}
    stretch: dict[int, Fraction] = {}
    provenance: dict[int, int] = {}
    next_id = 0
    for s in sorted(cands, key=lambda s: s.id):
        ua = (s.x_left - x0) * scale
        ub = (s.x_right - x0) * scale
        left, right, fam = dyadic_snap(ua, ub)
        xl = left / scale + x0
        xr = right / scale + x0
        key = (xl, xr, s.y, fam)
        if key in seen:
            provenance[s.id] = seen[key]
            continue
        seg = Segment(xl, xr, s.y, id=next_id)
        seen[key] = next_id
        out.append(seg)
        family[next_id] = fam
        stretch[next_id] = seg.length / s.length
        provenance[s.id] = next_id
        next_id += 1
    return LaminarDecomposition(
        tuple(out), family, stretch, provenance, scale, Fraction(x0)
    )
