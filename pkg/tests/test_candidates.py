"""Canonical candidate generation and stab-set bookkeeping."""

from fractions import Fraction

from conftest import brute_optimum

from segstab import (
    Rect,
    Segment,
    StabInstance,
    candidate_segments,
    dedup_by_stab_set,
    gen_random,
    prune_dominated,
    stab_mask,
    stabs,
)

F = Fraction


def test_single_rect_yields_its_top_edge():
    r = Rect(2, 5, 0, 3, id=0)
    cands = candidate_segments([r])
    assert len(cands) == 1
    (s,) = cands
    assert (s.x_left, s.x_right, s.y) == (2, 5, 3)


def test_candidates_lie_on_top_edges_and_dedup_is_tight():
    for seed in range(10):
        inst = gen_random(6, seed)
        tops = {r.y_top for r in inst.rects}
        cands = candidate_segments(inst.rects)
        for s in cands:
            assert s.y in tops
            assert any(stabs(s, r) for r in inst.rects)
        # After mask dedup every surviving candidate is hull-tight: its
        # extent is exactly the hull of the rects it stabs.
        for s in dedup_by_stab_set(cands, inst.rects):
            hit = [r for r in inst.rects if stabs(s, r)]
            assert s.x_left == min(r.x_left for r in hit)
            assert s.x_right == max(r.x_right for r in hit)


def test_candidate_family_contains_an_optimal_cover():
    """The subset-pricing oracle must be reachable inside the family."""
    import itertools

    for seed in range(12):
        inst = gen_random(5, seed)
        kept = dedup_by_stab_set(candidate_segments(inst.rects), inst.rects)
        priced = [(stab_mask(s, inst.rects), s.length) for s in kept]
        full = (1 << len(inst.rects)) - 1
        best = None
        for k in range(1, len(priced) + 1):
            for combo in itertools.combinations(priced, k):
                covered = 0
                for mask, _ in combo:
                    covered |= mask
                if covered == full:
                    c = sum((cost for _, cost in combo), F(0))
                    if best is None or c < best:
                        best = c
            if best is not None and k >= 5:
                break
        assert best == brute_optimum(inst)


def test_stab_mask_bits():
    rects = [Rect(0, 2, 0, 2, id=0), Rect(1, 3, 0, 1, id=1), Rect(9, 10, 9, 10, id=2)]
    assert stab_mask(Segment(0, 3, 1, id=0), rects) == 0b011
    assert stab_mask(Segment(0, 2, 2, id=0), rects) == 0b001
    assert stab_mask(Segment(4, 5, 4, id=0), rects) == 0


def test_dedup_keeps_cheapest_per_mask():
    rects = [Rect(0, 2, 0, 2, id=0)]
    segs = [
        Segment(0, 2, 2, id=0),
        Segment(-1, 2, 2, id=1),
        Segment(0, 2, 1, id=2),
    ]
    kept = dedup_by_stab_set(segs, rects)
    assert len(kept) == 1
    assert kept[0].length == 2 and kept[0].id == 0, "cheapest, lowest id"


def test_dedup_preserves_coverage():
    for seed in range(8):
        inst = gen_random(7, seed)
        cands = candidate_segments(inst.rects)
        kept = dedup_by_stab_set(cands, inst.rects)
        assert {stab_mask(s, inst.rects) for s in kept} == {
            stab_mask(s, inst.rects) for s in cands
        }


def test_prune_dominated_is_optimum_preserving():
    for seed in range(8):
        inst = gen_random(5, seed)
        cands = candidate_segments(inst.rects)
        pruned = prune_dominated(cands, inst.rects)
        assert set(pruned) <= set(cands)
        constrained = StabInstance(inst.rects, fixed_candidates=tuple(pruned))
        assert brute_optimum(constrained) == brute_optimum(inst)
