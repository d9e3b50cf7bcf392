"""Shallow-cell-complexity measurement on the quadratic counterexample."""

import pytest

from segstab.generators import gen_scc_counterexample
from segstab.scc import cell_count, cells, scc_profile


def test_counterexample_shape():
    inst = gen_scc_counterexample(6)
    assert len(inst.rects) == 9
    assert len(inst.fixed_candidates) == 6


def test_counterexample_rejects_odd_m():
    with pytest.raises(ValueError):
        gen_scc_counterexample(5)
    with pytest.raises(ValueError):
        gen_scc_counterexample(0)


def test_every_rect_has_depth_two():
    inst = gen_scc_counterexample(8)
    for mask in cells(inst.fixed_candidates, inst.rects):
        assert bin(mask).count("1") == 2


def test_quadratic_shallow_cells():
    for m in (2, 4, 6, 8, 10):
        inst = gen_scc_counterexample(m)
        assert cell_count(inst.fixed_candidates, inst.rects, 2) == m * m // 4


def test_cell_count_rejects_bad_k():
    inst = gen_scc_counterexample(4)
    with pytest.raises(ValueError):
        cell_count(inst.fixed_candidates, inst.rects, 0)


def test_profile_matches_cell_count():
    inst = gen_scc_counterexample(6)
    prof = scc_profile(inst.fixed_candidates, inst.rects)
    assert prof.orphans == ()
    assert prof.total_cells == 9
    assert prof.by_depth == {2: 9}
    for k, cum in prof.cumulative.items():
        assert cum == cell_count(inst.fixed_candidates, inst.rects, k)


def test_profile_reports_orphans():
    inst = gen_scc_counterexample(4)
    # Drop every candidate: all rects become orphans and no cell survives.
    prof = scc_profile((), inst.rects)
    assert set(prof.orphans) == {r.id for r in inst.rects}
    assert prof.total_cells == 0
    assert prof.cumulative == {}
