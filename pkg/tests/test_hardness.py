"""Hardness constructions: visibility reps, vertex-cover gadgets, SPSC."""

from fractions import Fraction as F

import pytest

from segstab.geometry import stabs
from segstab.hardness import (
    build_visibility,
    check_np_instance,
    check_visibility,
    compile_np_instance,
    gen_spsc,
    min_vertex_cover,
    spsc_cover_optimum,
    spsc_to_stabbing,
)
from segstab.solve import solve_exact


def test_min_vertex_cover_known_graphs():
    assert min_vertex_cover([1, 2], [(1, 2)]) == 1
    assert min_vertex_cover([1, 2, 3], [(1, 2), (2, 3)]) == 1
    assert min_vertex_cover([1, 2, 3], [(1, 2), (2, 3), (1, 3)]) == 2
    assert min_vertex_cover([1, 2, 3, 4], [(1, 2), (2, 3), (3, 4), (1, 4)]) == 2
    assert min_vertex_cover([1, 2, 3, 4], [(1, 2), (1, 3), (1, 4)]) == 1
    assert min_vertex_cover([1, 2, 3], []) == 0


def test_build_visibility_passes_checker():
    rep = build_visibility([1, 2, 3], [(1, 2), (2, 3)])
    assert check_visibility(rep) == []
    assert set(rep.vertex_segments) == {1, 2, 3}
    assert set(rep.edge_segments) == {(1, 2), (2, 3)}


def test_build_visibility_rejects_nonplanar():
    k5_edges = [(i, j) for i in range(1, 6) for j in range(i + 1, 6)]
    with pytest.raises(ValueError):
        build_visibility(list(range(1, 6)), k5_edges)


def test_checker_flags_broken_rep():
    rep = build_visibility([1, 2], [(1, 2)])
    broken = type(rep)(
        dict(rep.vertex_segments), {(1, 2): (99, 0, 1)}
    )
    assert check_visibility(broken)


def test_gadget_segments_stab_their_stack():
    gi = compile_np_instance(build_visibility([1, 2], [(1, 2)]))
    by_id = gi.inst.rect_by_id()
    for g in gi.gadgets.values():
        stack = [by_id[rid] for rid in g.rect_ids]
        for group in (g.s_act, g.s_ina):
            for r in stack:
                assert any(stabs(s, r) for s in group)
        assert g.len_act + 1 == g.len_ina or g.len_ina + 1 == g.len_act


def test_compile_np_instance_small_graphs():
    for vs, es, vc in (
        ([1, 2], [(1, 2)], 1),
        ([1, 2, 3], [(1, 2), (2, 3)], 1),
    ):
        gi = compile_np_instance(build_visibility(vs, es))
        assert check_np_instance(gi) == []
        assert gi.scale == 1
        assert min_vertex_cover(vs, es) == vc
        _, res = solve_exact(gi.inst)
        assert res.proven
        assert res.cost == gi.c + vc


def test_gen_spsc_structure():
    spsc = gen_spsc(4, seed=1)
    assert spsc.n == 6
    assert len(spsc.elements) == spsc.n + 4 * spsc.m
    assert len(spsc.sets) == 5 * spsc.m
    counts = {f"a{i}": 0 for i in range(1, spsc.n + 1)}
    for _, mem in spsc.sets:
        for e in mem:
            if e.startswith("a"):
                counts[e] += 1
    assert all(c == 2 for c in counts.values())


def test_gen_spsc_validation():
    with pytest.raises(ValueError):
        gen_spsc(3)
    with pytest.raises(ValueError):
        gen_spsc(0)


def test_spsc_encoding_modes():
    spsc = gen_spsc(2, seed=0)
    card = spsc_to_stabbing(spsc, "cardinality")
    cons = spsc_to_stabbing(spsc, "constrained")
    assert len(card.rects) == spsc.n + 4 * spsc.m
    assert len(card.fixed_candidates) == 5 * spsc.m
    costs = {s.length for s in cons.fixed_candidates}
    assert costs == {F(1), 1 + F(1, 10 * spsc.m)}
    with pytest.raises(ValueError):
        spsc_to_stabbing(spsc, "weighted")


def test_spsc_cardinality_optimum_matches_set_cover():
    spsc = gen_spsc(2, seed=3)
    inst = spsc_to_stabbing(spsc, "cardinality")
    _, res = solve_exact(inst)
    assert res.proven
    assert res.cost == spsc_cover_optimum(spsc)
