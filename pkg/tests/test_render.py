"""SVG and benchmark-figure output."""

import xml.etree.ElementTree as ET

from segstab.candidates import candidate_segments, dedup_by_stab_set
from segstab.generators import gen_random
from segstab.laminar import laminarize
from segstab.render import render_bench_png, render_svg
from segstab.solve import solve_greedy

SVG_NS = "{http://www.w3.org/2000/svg}"


def test_svg_has_one_rect_per_rectangle():
    inst = gen_random(7, seed=1)
    root = ET.fromstring(render_svg(inst))
    assert root.tag == f"{SVG_NS}svg"
    assert len(root.findall(f"{SVG_NS}rect")) == 7
    assert root.findall(f"{SVG_NS}line") == []


def test_svg_solution_lines():
    inst = gen_random(6, seed=2)
    sol = solve_greedy(inst)
    root = ET.fromstring(render_svg(inst, solution=sol))
    lines = root.findall(f"{SVG_NS}line")
    assert len(lines) == len(sol.segments)
    assert all(el.get("class") == "solution" for el in lines)


def test_svg_decomposition_family_classes():
    inst = gen_random(6, seed=3)
    cands = dedup_by_stab_set(candidate_segments(inst.rects), inst.rects)
    lam = laminarize(inst, cands)
    root = ET.fromstring(render_svg(inst, decomposition=lam))
    classes = {el.get("class") for el in root.findall(f"{SVG_NS}line")}
    assert classes <= {"family1", "family2"}
    assert len(root.findall(f"{SVG_NS}line")) == len(lam.segments)


def test_bench_png_written(tmp_path):
    rows = [
        {"algo": "greedy", "n": 5, "ratio": "1.5"},
        {"algo": "greedy", "n": 10, "ratio": "1.2"},
        {"algo": "approx", "n": 5, "ratio": "2.0"},
        {"algo": "exact", "n": 5, "ratio": None},
    ]
    out = tmp_path / "bench.png"
    render_bench_png(rows, str(out))
    data = out.read_bytes()
    assert data[:8] == b"\x89PNG\r\n\x1a\n"
