"""Exact geometric primitives: rectangles, segments, instances, solutions.

All coordinates are `fractions.Fraction`; every operation here is a pure
function over immutable values, so everything is safe to share between
threads.  Rectangles are closed sets: a segment lying exactly on a top or
bottom edge stabs.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

Coord = Union[int, str, Fraction]

HORIZONTAL = "horizontal"
VERTICAL = "vertical"


def frac(x: Coord) -> Fraction:
    """Coerce ints, 'p/q' strings and Fractions to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError(f"refusing inexact float coordinate {x!r}")
    return Fraction(x)


@dataclass(frozen=True)
class Rect:
    """Closed axis-aligned rectangle with positive area."""

    x_left: Fraction
    x_right: Fraction
    y_bottom: Fraction
    y_top: Fraction
    id: int
    multiplicity: int = 1

    def __post_init__(self):
        object.__setattr__(self, "x_left", frac(self.x_left))
        object.__setattr__(self, "x_right", frac(self.x_right))
        object.__setattr__(self, "y_bottom", frac(self.y_bottom))
        object.__setattr__(self, "y_top", frac(self.y_top))
        if not self.x_left < self.x_right:
            raise ValueError(f"rect {self.id}: x_left must be < x_right")
        if not self.y_bottom < self.y_top:
            raise ValueError(f"rect {self.id}: y_bottom must be < y_top")
        if self.multiplicity < 1:
            raise ValueError(f"rect {self.id}: multiplicity must be >= 1")

    @property
    def width(self) -> Fraction:
        return self.x_right - self.x_left

    @property
    def height(self) -> Fraction:
        return self.y_top - self.y_bottom

    def translated(self, dx: Coord, dy: Coord) -> "Rect":
        dx, dy = frac(dx), frac(dy)
        return replace(
            self,
            x_left=self.x_left + dx,
            x_right=self.x_right + dx,
            y_bottom=self.y_bottom + dy,
            y_top=self.y_top + dy,
        )


@dataclass(frozen=True)
class Segment:
    """Closed axis-parallel segment.

    For a horizontal segment, ``x_left``/``x_right`` is the x-extent and
    ``y`` the height.  For a vertical segment the same fields store the
    y-extent and the x-position (transposed convention).
    """

    x_left: Fraction
    x_right: Fraction
    y: Fraction
    id: int
    orientation: str = HORIZONTAL

    def __post_init__(self):
        object.__setattr__(self, "x_left", frac(self.x_left))
        object.__setattr__(self, "x_right", frac(self.x_right))
        object.__setattr__(self, "y", frac(self.y))
        if self.x_left > self.x_right:
            raise ValueError(f"segment {self.id}: x_left must be <= x_right")
        if self.orientation not in (HORIZONTAL, VERTICAL):
            raise ValueError(f"segment {self.id}: bad orientation {self.orientation!r}")

    @property
    def length(self) -> Fraction:
        return self.x_right - self.x_left

    @property
    def interval(self) -> tuple[Fraction, Fraction]:
        return (self.x_left, self.x_right)

    def translated(self, dx: Coord, dy: Coord) -> "Segment":
        dx, dy = frac(dx), frac(dy)
        if self.orientation == VERTICAL:
            dx, dy = dy, dx
        return replace(
            self, x_left=self.x_left + dx, x_right=self.x_right + dx, y=self.y + dy
        )


def stabs(s: Segment, r: Rect) -> bool:
    """True iff ``s`` crosses both the left and right edge of ``r``.

    A vertical segment is evaluated on the transposed coordinates, i.e. it
    must cross the bottom and top edge and pass through the x-range.
    """
    if s.orientation == HORIZONTAL:
        return (
            s.x_left <= r.x_left
            and r.x_right <= s.x_right
            and r.y_bottom <= s.y <= r.y_top
        )
    return (
        s.x_left <= r.y_bottom
        and r.y_top <= s.x_right
        and r.x_left <= s.y <= r.x_right
    )


OBJECTIVE_LENGTH = "length"
OBJECTIVE_CARDINALITY = "cardinality"


class InfeasibleInstanceError(ValueError):
    """Raised when a constrained instance has an unstabbable rectangle."""


@dataclass(frozen=True)
class StabInstance:
    """A stabbing problem: rectangles, optional fixed candidates, objective.

    ``fixed_candidates`` present means constrained mode (solutions must be
    subsets of the given family).  ``hv`` enables horizontal-vertical
    stabbing, where a rectangle may also be stabbed by a vertical segment.
    """

    rects: tuple[Rect, ...]
    fixed_candidates: Optional[tuple[Segment, ...]] = None
    objective: str = OBJECTIVE_LENGTH
    hv: bool = False

    def __post_init__(self):
        object.__setattr__(self, "rects", tuple(self.rects))
        if self.fixed_candidates is not None:
            object.__setattr__(self, "fixed_candidates", tuple(self.fixed_candidates))
        if self.objective not in (OBJECTIVE_LENGTH, OBJECTIVE_CARDINALITY):
            raise ValueError(f"bad objective {self.objective!r}")
        ids = [r.id for r in self.rects]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate rect ids")
        if self.fixed_candidates is not None:
            sids = [s.id for s in self.fixed_candidates]
            if len(set(sids)) != len(sids):
                raise ValueError("duplicate candidate ids")
            for r in self.rects:
                if not any(stabs(s, r) for s in self.fixed_candidates):
                    raise InfeasibleInstanceError(
                        f"rect {r.id} is not stabbed by any fixed candidate"
                    )

    @property
    def constrained(self) -> bool:
        return self.fixed_candidates is not None

    def rect_by_id(self) -> dict[int, Rect]:
        return {r.id: r for r in self.rects}

    def segment_cost(self, s: Segment) -> Fraction:
        if self.objective == OBJECTIVE_CARDINALITY:
            return Fraction(1)
        return s.length


@dataclass(frozen=True)
class Solution:
    """A set of stabbing segments with its recomputed cost."""

    segments: tuple[Segment, ...]
    cost: Fraction
    assignment: Optional[Mapping[int, int]] = None  # rect id -> segment id

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        object.__setattr__(self, "cost", frac(self.cost))


def solution_cost(inst: StabInstance, segments: Iterable[Segment]) -> Fraction:
    segments = list(segments)
    if inst.objective == OBJECTIVE_CARDINALITY:
        return Fraction(len(segments))
    return sum((s.length for s in segments), Fraction(0))


def make_solution(
    inst: StabInstance,
    segments: Iterable[Segment],
    assignment: Optional[Mapping[int, int]] = None,
) -> Solution:
    segments = tuple(segments)
    return Solution(segments, solution_cost(inst, segments), assignment)


@dataclass(frozen=True)
class VerifyReport:
    feasible: bool
    uncovered: tuple[int, ...]
    recomputed_cost: Fraction
    foreign_segments: tuple[int, ...] = ()


def verify_solution(inst: StabInstance, sol: Solution) -> VerifyReport:
    """Check feasibility from scratch; never trusts ``sol.cost``.

    In constrained mode every solution segment must coincide with some
    fixed candidate (same geometry and orientation); offenders are reported
    and make the solution infeasible.
    """
    foreign: list[int] = []
    if inst.constrained:
        allowed = {
            (s.x_left, s.x_right, s.y, s.orientation) for s in inst.fixed_candidates
        }
        for s in sol.segments:
            if (s.x_left, s.x_right, s.y, s.orientation) not in allowed:
                foreign.append(s.id)
    uncovered = [
        r.id for r in inst.rects if not any(stabs(s, r) for s in sol.segments)
    ]
    cost = solution_cost(inst, sol.segments)
    feasible = not uncovered and not foreign
    return VerifyReport(feasible, tuple(uncovered), cost, tuple(foreign))


def canonicalize_solution(inst: StabInstance, sol: Solution) -> Solution:
    """Push a feasible solution into the canonical candidate family.

    Each segment is assigned all rects it stabs, trimmed to the tight
    x-extent of those rects and raised to the lowest assigned top edge.
    Cost never increases; segments stabbing nothing are dropped.
    """
    if inst.constrained:
        raise ValueError("canonical form is undefined for constrained instances")
    out: dict[tuple, list[int]] = {}
    for s in sol.segments:
        if s.orientation != HORIZONTAL:
            raise ValueError("canonicalization handles horizontal segments only")
        assigned = [r for r in inst.rects if stabs(s, r)]
        if not assigned:
            continue
        a = min(r.x_left for r in assigned)
        b = max(r.x_right for r in assigned)
        y = min(r.y_top for r in assigned)
        out.setdefault((a, b, y), []).extend(r.id for r in assigned)
    segments = []
    assignment: dict[int, int] = {}
    for i, ((a, b, y), rids) in enumerate(sorted(out.items())):
        seg = Segment(a, b, y, id=i)
        segments.append(seg)
        for rid in rids:
            assignment.setdefault(rid, i)
    return make_solution(inst, segments, assignment)


def transpose_rect(r: Rect) -> Rect:
    return Rect(r.y_bottom, r.y_top, r.x_left, r.x_right, r.id, r.multiplicity)


def transpose_instance(inst: StabInstance) -> StabInstance:
    """Swap x and y; horizontal stabbing of the transpose models vertical."""
    return StabInstance(
        tuple(transpose_rect(r) for r in inst.rects),
        objective=inst.objective,
    )
