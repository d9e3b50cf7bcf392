"""Core geometric predicates, containers and solution handling."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from segstab import (
    InfeasibleInstanceError,
    Rect,
    Segment,
    Solution,
    StabInstance,
    VERTICAL,
    canonicalize_solution,
    make_solution,
    solution_cost,
    stabs,
    transpose_instance,
    verify_solution,
)
from segstab.geometry import frac

F = Fraction

coords = st.integers(min_value=-50, max_value=50)


def test_frac_coercion():
    assert frac(3) == F(3)
    assert frac("2/7") == F(2, 7)
    assert frac(F(1, 3)) == F(1, 3)
    with pytest.raises(TypeError):
        frac(0.5)


def test_rect_validation():
    with pytest.raises(ValueError):
        Rect(1, 1, 0, 2, id=0)
    with pytest.raises(ValueError):
        Rect(0, 1, 2, 2, id=0)
    with pytest.raises(ValueError):
        Rect(0, 1, 0, 1, id=0, multiplicity=0)
    r = Rect("1/2", "3/2", 0, 4, id=7)
    assert r.width == 1 and r.height == 4


def test_segment_validation_and_length():
    with pytest.raises(ValueError):
        Segment(2, 1, 0, id=0)
    s = Segment(F(1, 3), F(5, 3), F(1, 2), id=0)
    assert s.length == F(4, 3)
    assert s.interval == (F(1, 3), F(5, 3))
    assert Segment(0, 0, 1, id=1).length == 0


def test_stabs_spans_and_touches():
    r = Rect(1, 4, 0, 2, id=0)
    assert stabs(Segment(1, 4, 1, id=0), r)
    assert stabs(Segment(0, 9, 2, id=0), r), "top edge is closed"
    assert stabs(Segment(1, 4, 0, id=0), r), "bottom edge is closed"
    assert not stabs(Segment(2, 9, 1, id=0), r), "must reach the left edge"
    assert not stabs(Segment(1, 3, 1, id=0), r), "must reach the right edge"
    assert not stabs(Segment(1, 4, F(5, 2), id=0), r)


def test_stabs_vertical_transposed():
    r = Rect(1, 4, 0, 2, id=0)
    # Vertical segment at x=2 spanning y in [-1, 3] crosses bottom and top.
    v = Segment(-1, 3, 2, id=0, orientation=VERTICAL)
    assert stabs(v, r)
    assert not stabs(Segment(1, 3, 2, id=1, orientation=VERTICAL), r)
    assert not stabs(Segment(-1, 3, 5, id=2, orientation=VERTICAL), r)


@given(
    l=coords, w=st.integers(1, 20), b=coords, h=st.integers(1, 20),
    sl=coords, sw=st.integers(0, 40), sy=coords,
)
def test_stabs_matches_direct_definition(l, w, b, h, sl, sw, sy):
    r = Rect(l, l + w, b, b + h, id=0)
    s = Segment(sl, sl + sw, sy, id=0)
    expected = sl <= l and l + w <= sl + sw and b <= sy <= b + h
    assert stabs(s, r) == expected


def test_transpose_involution_preserves_stabbing():
    r = Rect(1, 4, 0, 2, id=0)
    inst = StabInstance((r,))
    t = transpose_instance(inst)
    assert transpose_instance(t).rects == inst.rects
    v = Segment(0, 5, 2, id=0, orientation=VERTICAL)
    h = Segment(0, 5, 2, id=0)
    assert stabs(v, r) == stabs(h, t.rects[0])


def test_instance_rejects_duplicate_ids():
    with pytest.raises(ValueError):
        StabInstance((Rect(0, 1, 0, 1, id=0), Rect(2, 3, 2, 3, id=0)))


def test_constrained_instance_must_be_coverable():
    r = Rect(0, 10, 0, 1, id=0)
    with pytest.raises(InfeasibleInstanceError):
        StabInstance((r,), fixed_candidates=(Segment(0, 3, 0, id=0),))
    ok = StabInstance((r,), fixed_candidates=(Segment(0, 10, 1, id=0),))
    assert ok.constrained


def test_solution_cost_modes():
    inst_len = StabInstance((Rect(0, 2, 0, 1, id=0),))
    inst_card = StabInstance((Rect(0, 2, 0, 1, id=0),), objective="cardinality")
    segs = [Segment(0, 2, 0, id=0), Segment(0, 2, 1, id=1)]
    assert solution_cost(inst_len, segs) == 4
    assert solution_cost(inst_card, segs) == 2


def test_verify_solution_reports():
    inst = StabInstance((Rect(0, 2, 0, 1, id=0), Rect(5, 6, 0, 1, id=1)))
    sol = make_solution(inst, [Segment(0, 2, 1, id=0)])
    rep = verify_solution(inst, sol)
    assert not rep.feasible and rep.uncovered == (1,)
    full = make_solution(inst, [Segment(0, 2, 1, id=0), Segment(5, 6, 0, id=1)])
    rep2 = verify_solution(inst, full)
    assert rep2.feasible and rep2.recomputed_cost == 3


def test_verify_flags_foreign_segments_in_constrained_mode():
    cand = Segment(0, 10, 1, id=0)
    inst = StabInstance((Rect(0, 10, 0, 1, id=0),), fixed_candidates=(cand,))
    sol = Solution((Segment(0, 10, F(1, 2), id=3),), F(10), {})
    rep = verify_solution(inst, sol)
    assert not rep.feasible and rep.foreign_segments == (3,)


def test_canonicalize_trims_and_never_costs_more():
    inst = StabInstance((Rect(1, 3, 0, 2, id=0), Rect(2, 5, 0, 1, id=1)))
    raw = make_solution(inst, [Segment(0, 9, F(1, 2), id=0)])
    canon = canonicalize_solution(inst, raw)
    assert canon.cost <= raw.cost
    assert verify_solution(inst, canon).feasible
    (seg,) = canon.segments
    assert (seg.x_left, seg.x_right) == (1, 5)
    assert seg.y == 1, "raised to the lowest assigned top edge"


def test_canonicalize_drops_useless_segments():
    inst = StabInstance((Rect(0, 1, 0, 1, id=0),))
    sol = Solution(
        (Segment(0, 1, 0, id=0), Segment(7, 9, 7, id=1)), F(3), {}
    )
    canon = canonicalize_solution(inst, sol)
    assert len(canon.segments) == 1 and canon.cost == 1
