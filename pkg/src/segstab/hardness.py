"""Hardness constructions: vertex-cover gadgets and special 3-set cover.

Two reductions are compiled into concrete stabbing instances.  The first
turns a planar graph (via a visibility representation) into stacks of
overlapping rectangles per vertex plus one long rectangle per edge; the
instance's exact optimum is c + (minimum vertex cover) for an explicit
constant c.  The second encodes the APX-hard special 3-set cover problem
(every set of size <= 3, each a-element in exactly two sets) as stabbing,
in a cardinality-preserving and in a length-based variant.

The compilers are deliberately paranoid: every structural property the
correctness argument leans on is re-checked by ``check_visibility`` /
``check_np_instance`` on the produced coordinates, not assumed from the
layout code.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import lcm
from typing import Iterable, Mapping, Sequence

from .geometry import (
    OBJECTIVE_CARDINALITY,
    OBJECTIVE_LENGTH,
    Rect,
    Segment,
    StabInstance,
)

Edge = tuple[int, int]
F = Fraction


def _norm_edges(edges: Iterable[Edge]) -> list[Edge]:
    out = []
    for u, w in edges:
        if u == w:
            raise ValueError("self-loops not allowed")
        out.append((min(u, w), max(u, w)))
    if len(set(out)) != len(out):
        raise ValueError("parallel edges not allowed")
    return sorted(out)


def min_vertex_cover(vertices: Sequence[int], edges: Iterable[Edge]) -> int:
    """Exhaustive minimum vertex cover size."""
    edges = _norm_edges(edges)
    verts = sorted(vertices)
    for k in range(len(verts) + 1):
        for sub in combinations(verts, k):
            s = set(sub)
            if all(u in s or w in s for u, w in edges):
                return k
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# Visibility representations


@dataclass(frozen=True)
class VisibilityRep:
    """Vertices as vertical grid segments, edges as horizontal ones."""

    vertex_segments: dict[int, tuple[int, int, int]]  # v -> (x, y_lo, y_hi)
    edge_segments: dict[Edge, tuple[int, int, int]]  # edge -> (y, x_left, x_right)


def check_visibility(rep: VisibilityRep) -> list[str]:
    bad = []
    xs = [x for x, _, _ in rep.vertex_segments.values()]
    if len(set(xs)) != len(xs):
        bad.append("vertex segments overlap (shared x)")
    ys = [y for y, _, _ in rep.edge_segments.values()]
    if len(set(ys)) != len(ys):
        bad.append("two edge segments coincide (shared level)")
    for (u, w), (y, xl, xr) in rep.edge_segments.items():
        for v, (x, lo, hi) in rep.vertex_segments.items():
            touches = xl <= x <= xr and lo <= y <= hi
            if v in (u, w):
                if not (touches and x in (xl, xr)):
                    bad.append(f"edge {(u, w)} misses endpoint {v}")
            elif touches:
                bad.append(f"edge {(u, w)} crosses vertex {v}")
    n = max(1, len(rep.vertex_segments))
    extent = max(
        [abs(c) for x, lo, hi in rep.vertex_segments.values() for c in (x, lo, hi)]
        + [0]
    )
    if extent > 6 * n:
        bad.append(f"grid extent {extent} exceeds 6n")
    return bad


def build_visibility(
    vertices: Sequence[int], edges: Iterable[Edge]
) -> VisibilityRep:
    """Search for a valid representation (desk-scale graphs only).

    Tries all vertex orders and edge level assignments; the validity
    checker is the contract, the search is merely one way to satisfy it.
    Rejects non-planar input up front.
    """
    edges = _norm_edges(edges)
    verts = sorted(set(vertices))
    import networkx as nx

    g = nx.Graph()
    g.add_nodes_from(verts)
    g.add_edges_from(edges)
    ok, _ = nx.check_planarity(g)
    if not ok:
        raise ValueError("graph is not planar")
    for order in permutations(verts):
        xpos = {v: i + 1 for i, v in enumerate(order)}
        for lvl_order in permutations(range(1, len(edges) + 1)):
            level = dict(zip(edges, lvl_order))
            rep = _assemble(xpos, level)
            if not check_visibility(rep):
                return rep
    raise ValueError("no visibility representation found by search")


def _assemble(
    xpos: Mapping[int, int], level: Mapping[Edge, int]
) -> VisibilityRep:
    spans: dict[int, list[int]] = {v: [] for v in xpos}
    for (u, w), y in level.items():
        spans[u].append(y)
        spans[w].append(y)
    vsegs = {
        v: (xpos[v], min(ls, default=0), max(ls, default=0))
        for v, ls in spans.items()
    }
    esegs = {
        e: (y, min(xpos[e[0]], xpos[e[1]]), max(xpos[e[0]], xpos[e[1]]))
        for e, y in level.items()
    }
    return VisibilityRep(vsegs, esegs)


# ---------------------------------------------------------------------------
# Vertex/edge gadget compilation


@dataclass(frozen=True)
class VertexGadget:
    rect_ids: tuple[int, ...]  # top to bottom
    s_act: tuple[Segment, ...]
    s_ina: tuple[Segment, ...]

    @property
    def len_act(self) -> Fraction:
        return sum((s.length for s in self.s_act), F(0))

    @property
    def len_ina(self) -> Fraction:
        return sum((s.length for s in self.s_ina), F(0))


@dataclass(frozen=True)
class NPGadgetInstance:
    inst: StabInstance
    c: Fraction
    scale: int
    n: int  # number of graph vertices
    gadgets: dict[int, VertexGadget]
    edge_rects: dict[Edge, int]  # edge -> rect id


def gadget_segments(stack: Sequence[Rect], first_id: int = 0):
    """Merged boundary segments of a vertical rect stack, top to bottom.

    Level j's segment spans the union of the extents of the rects whose
    top or bottom edge lies at that height, so it stabs exactly those.
    The odd-numbered levels form S_ina, the even-numbered S_act; both are
    feasible stabbings of the stack.
    """
    ys = sorted({r.y_top for r in stack} | {r.y_bottom for r in stack}, reverse=True)
    if len(ys) != len(stack) + 1:
        raise ValueError("not a contiguous stack")
    s_ina, s_act = [], []
    for num, y in enumerate(ys, start=1):
        at = [r for r in stack if y in (r.y_top, r.y_bottom)]
        seg = Segment(
            min(r.x_left for r in at),
            max(r.x_right for r in at),
            y,
            id=first_id + num - 1,
        )
        (s_ina if num % 2 else s_act).append(seg)
    if len(s_ina) != len(s_act):
        raise ValueError("stack must have an odd rect count")
    return tuple(s_act), tuple(s_ina)


def compile_np_instance(rep: VisibilityRep) -> NPGadgetInstance:
    """Realize the reduction on an integer grid.

    Per vertex: a stack of 2d+3 rects (d = degree) sharing a core of width
    n+3; middle rects alternately protrude n+5 to the right (odd position)
    or left (even), the top rect has width 1 and the bottom width 2.  Per
    edge: one flat rect running between the two protruding attachment
    rects, overlapping each by exactly n+3 along a shared edge.

    The stack is centered on a half-integer x with the core split 3/2 left
    and n+3/2 right, which keeps every rectangle corner integral without
    any grid blow-up.
    """
    bad = check_visibility(rep)
    if bad:
        raise ValueError(f"invalid visibility representation: {bad}")
    n = len(rep.vertex_segments)
    cl, cr = F(3, 2), n + F(3, 2)
    prot = n + 5
    spacing = 10 * (n + 10)

    vert_raw: dict[int, list[tuple[Fraction, Fraction, Fraction, Fraction]]] = {}
    edge_raw: dict[Edge, tuple[Fraction, Fraction, Fraction, Fraction]] = {}

    for v, (xp, _, _) in rep.vertex_segments.items():
        x = spacing * xp + F(1, 2)
        att = []
        for e, (lam, _, _) in rep.edge_segments.items():
            if v not in e:
                continue
            # Left endpoints are touched from below-right (edge-rect top at
            # 10*lam+1), right endpoints from above-left (bottom, 10*lam-1).
            att.append((10 * lam + (1 if _is_left(rep, v, e) else -1), e))
        att.sort(reverse=True)
        d = len(att)
        q = 2 * d + 3
        lvl: dict[int, Fraction] = {}
        if d:
            a = [F(y) for y, _ in att]
            lvl[1], lvl[2], lvl[3] = a[0] + 6, a[0] + 4, a[0] + 3
            for i in range(1, d + 1):
                lvl[2 * i + 2] = a[i - 1]
            for i in range(1, d):
                lvl[2 * i + 3] = (a[i - 1] + a[i]) // 2
            lvl[2 * d + 3], lvl[2 * d + 4] = a[-1] - 2, a[-1] - 4
        else:
            lvl = {1: F(4), 2: F(2), 3: F(0), 4: F(-2)}
        rects = []
        for j in range(1, q + 1):
            if j == 1:
                xl, xr = x - F(1, 2), x + F(1, 2)
            elif j == q:
                xl, xr = x - F(1, 2), x + F(3, 2)
            elif j % 2:
                xl, xr = x - cl, x + cr + prot
            else:
                xl, xr = x - cl - prot, x + cr
            rects.append((xl, xr, lvl[j + 1], lvl[j]))
        vert_raw[v] = rects

    for e, (lam, _, _) in rep.edge_segments.items():
        u, w = sorted(e, key=lambda t: rep.vertex_segments[t][0])
        xu = spacing * rep.vertex_segments[u][0] + F(1, 2)
        xw = spacing * rep.vertex_segments[w][0] + F(1, 2)
        edge_raw[e] = (
            xu + cr + prot - (n + 3),
            xw - cl - prot + (n + 3),
            F(10 * lam - 1),
            F(10 * lam + 1),
        )

    all_coords = [
        c for rl in vert_raw.values() for rect in rl for c in rect
    ] + [c for rect in edge_raw.values() for c in rect]
    scale = lcm(*(c.denominator for c in all_coords))

    rects: list[Rect] = []
    gadgets: dict[int, VertexGadget] = {}
    rid = 0
    for v in sorted(vert_raw):
        ids = []
        stack = []
        for xl, xr, yb, yt in vert_raw[v]:
            r = Rect(xl * scale, xr * scale, yb * scale, yt * scale, id=rid)
            rects.append(r)
            stack.append(r)
            ids.append(rid)
            rid += 1
        s_act, s_ina = gadget_segments(stack, first_id=10_000 + 100 * v)
        gadgets[v] = VertexGadget(tuple(ids), s_act, s_ina)
    edge_rects: dict[Edge, int] = {}
    for e in sorted(edge_raw):
        xl, xr, yb, yt = edge_raw[e]
        rects.append(Rect(xl * scale, xr * scale, yb * scale, yt * scale, id=rid))
        edge_rects[e] = rid
        rid += 1

    c = sum((g.len_ina for g in gadgets.values()), F(0))
    for e, erid in edge_rects.items():
        c += rects[erid].width - scale * (n + 3)
    gi = NPGadgetInstance(
        StabInstance(tuple(rects), objective=OBJECTIVE_LENGTH),
        c,
        scale,
        n,
        gadgets,
        edge_rects,
    )
    bad = check_np_instance(gi)
    if bad:
        raise ValueError(f"gadget layout violates invariants: {bad}")
    return gi


def _is_left(rep: VisibilityRep, v: int, e: Edge) -> bool:
    other = e[0] if e[1] == v else e[1]
    return rep.vertex_segments[v][0] < rep.vertex_segments[other][0]


def check_np_instance(gi: NPGadgetInstance) -> list[str]:
    """Re-derive every structural invariant from the coordinates."""
    bad = []
    by_id = gi.inst.rect_by_id()
    unit = gi.scale * (gi.n + 3)
    vertex_rect_ids = set()
    for v, g in gi.gadgets.items():
        stack = [by_id[i] for i in g.rect_ids]
        vertex_rect_ids.update(g.rect_ids)
        if len(stack) % 2 == 0:
            bad.append(f"gadget {v}: even rect count")
        if stack[0].width != gi.scale or stack[-1].width != 2 * gi.scale:
            bad.append(f"gadget {v}: rTop/rBot widths wrong")
        for a, b in zip(stack, stack[1:]):
            if a.y_bottom != b.y_top:
                bad.append(f"gadget {v}: stack not contiguous")
            ov = min(a.x_right, b.x_right) - max(a.x_left, b.x_left)
            expect = a.width if a is stack[0] else b.width if b is stack[-1] else unit
            if ov != expect:
                bad.append(f"gadget {v}: overlap {ov} != {expect}")
        if len(g.s_act) != len(g.s_ina):
            bad.append(f"gadget {v}: |S_act| != |S_ina|")
        if g.len_act != g.len_ina + gi.scale:
            bad.append(f"gadget {v}: length identity broken")
        for name, sol in (("S_act", g.s_act), ("S_ina", g.s_ina)):
            covered = {
                r.id
                for r in stack
                for s in sol
                if s.x_left <= r.x_left
                and r.x_right <= s.x_right
                and r.y_bottom <= s.y <= r.y_top
            }
            if covered != set(g.rect_ids):
                bad.append(f"gadget {v}: {name} does not stab the stack")
    for va, vb in combinations(gi.gadgets, 2):
        for ra in gi.gadgets[va].rect_ids:
            for rb in gi.gadgets[vb].rect_ids:
                if _overlap_area(by_id[ra], by_id[rb]):
                    bad.append(f"gadgets {va},{vb}: rects {ra},{rb} overlap")
    for e, erid in gi.edge_rects.items():
        er = by_id[erid]
        hits = []
        for rid in vertex_rect_ids:
            vr = by_id[rid]
            xov = min(er.x_right, vr.x_right) - max(er.x_left, vr.x_left)
            yov = min(er.y_top, vr.y_top) - max(er.y_bottom, vr.y_bottom)
            if xov > 0 and yov > 0:
                bad.append(f"edge rect {e} has area overlap with rect {rid}")
            elif xov > 0 and yov == 0:
                hits.append((rid, xov))
        owners = {
            v
            for v in gi.gadgets
            if any(rid in gi.gadgets[v].rect_ids for rid, _ in hits)
        }
        if len(hits) != 2 or owners != set(e):
            bad.append(f"edge rect {e}: touches {hits}, gadgets {owners}")
        elif any(xov != unit for _, xov in hits):
            bad.append(f"edge rect {e}: contact lengths {hits} != {unit}")
    expected_c = sum((g.len_ina for g in gi.gadgets.values()), F(0)) + sum(
        (by_id[i].width - unit for i in gi.edge_rects.values()), F(0)
    )
    if gi.c != expected_c:
        bad.append(f"c = {gi.c} != recomputed {expected_c}")
    return bad


def _overlap_area(a: Rect, b: Rect) -> bool:
    return (
        min(a.x_right, b.x_right) > max(a.x_left, b.x_left)
        and min(a.y_top, b.y_top) > max(a.y_bottom, b.y_bottom)
    )


# ---------------------------------------------------------------------------
# Special 3-set cover (SPSC)


@dataclass(frozen=True)
class SPSCInstance:
    m: int  # number of triple areas
    n: int  # number of a-elements (= 3m/2)
    elements: tuple[str, ...]
    sets: tuple[tuple[int, frozenset[str]], ...]
    triples: tuple[tuple[int, int, int], ...]


def gen_spsc(m: int, seed: int = 0) -> SPSCInstance:
    """Random SPSC instance: per area t with a-triple i < j < k the five
    sets {a_i, w_t}, {w_t, x_t}, {a_j, x_t, y_t}, {y_t, z_t}, {a_k, z_t};
    every a-element lands in exactly two sets.
    """
    if m < 2 or m % 2:
        raise ValueError("m must be even and >= 2")
    n = 3 * m // 2
    rng = random.Random(seed)
    pool = list(range(1, n + 1)) * 2
    for _ in range(100_000):
        rng.shuffle(pool)
        triples = [tuple(sorted(pool[3 * t : 3 * t + 3])) for t in range(m)]
        if all(len(set(tr)) == 3 for tr in triples):
            break
    else:
        raise RuntimeError("could not split the a-elements into triples")
    elements = tuple(
        [f"a{i}" for i in range(1, n + 1)]
        + [f"{c}{t}" for t in range(1, m + 1) for c in "wxyz"]
    )
    sets = []
    sid = 0
    for t, (i, j, k) in enumerate(triples, start=1):
        for mem in (
            {f"a{i}", f"w{t}"},
            {f"w{t}", f"x{t}"},
            {f"a{j}", f"x{t}", f"y{t}"},
            {f"y{t}", f"z{t}"},
            {f"a{k}", f"z{t}"},
        ):
            sets.append((sid, frozenset(mem)))
            sid += 1
    return SPSCInstance(m, n, elements, tuple(sets), tuple(triples))


def spsc_cover_optimum(spsc: SPSCInstance) -> int:
    """Exhaustive minimum number of sets covering the universe."""
    universe = frozenset(spsc.elements)

    def go(uncovered: frozenset[str], avail: tuple, best: int) -> int:
        if not uncovered:
            return 0
        e = min(uncovered)
        opts = [(sid, mem) for sid, mem in avail if e in mem]
        res = best
        for k, (sid, mem) in enumerate(opts):
            if res <= 1:
                break
            rest = tuple(s for s in avail if s[0] != sid)
            sub = go(uncovered - mem, rest, res - 1)
            res = min(res, 1 + sub)
        return res

    return go(universe, spsc.sets, len(spsc.sets))


def spsc_to_stabbing(spsc: SPSCInstance, mode: str = "cardinality") -> StabInstance:
    """Encode SPSC as constrained stabbing.

    The a-elements become n congruent rects of width 1 + delta, shifted by
    delta/(n-1) so their common intersection I has width exactly 1.  Each
    area t gets four thin rects (w, x, y, z) over I in its own y-block,
    with pairwise-overlapping bands; the five candidate segments of the
    area sit at heights hitting exactly their set's bands, with x-range
    equal to the a-rect's extent when the set contains an a-element and to
    I otherwise.  Costs: unit in cardinality mode; in constrained mode the
    objective is length, so segments cost either 1 or 1 + delta.
    """
    if mode not in ("cardinality", "constrained"):
        raise ValueError(f"bad mode {mode!r}")
    m, n = spsc.m, spsc.n
    delta = F(1, 10 * m)
    sigma = delta / (n - 1)
    height = 40 * m

    def a_extent(i: int) -> tuple[Fraction, Fraction]:
        return (i - 1) * sigma, (i - 1) * sigma + 1 + delta

    isect = (delta, 1 + delta)  # common intersection of the a-rects
    rect_of: dict[str, int] = {}
    rects = []
    for i in range(1, n + 1):
        xl, xr = a_extent(i)
        rects.append(Rect(xl, xr, 0, height, id=i - 1))
        rect_of[f"a{i}"] = i - 1
    bands = {"w": (24, 32), "x": (18, 26), "y": (12, 20), "z": (6, 14)}
    for t in range(1, m + 1):
        base = 40 * (t - 1)
        for k, c in enumerate("wxyz"):
            lo, hi = bands[c]
            rid = n + 4 * (t - 1) + k
            rects.append(Rect(isect[0], isect[1], base + lo, base + hi, id=rid))
            rect_of[f"{c}{t}"] = rid
    heights = [28, 25, 19, 13, 9]  # per-area template, one per set
    segs = []
    for sid, mem in spsc.sets:
        t = sid // 5 + 1
        base = 40 * (t - 1)
        a_mem = [e for e in mem if e.startswith("a")]
        if a_mem:
            xl, xr = a_extent(int(a_mem[0][1:]))
        else:
            xl, xr = isect
        segs.append(Segment(xl, xr, base + heights[sid % 5], id=sid))
    objective = OBJECTIVE_CARDINALITY if mode == "cardinality" else OBJECTIVE_LENGTH
    inst = StabInstance(tuple(rects), fixed_candidates=tuple(segs), objective=objective)
    _check_spsc_encoding(spsc, inst, rect_of)
    return inst


def _check_spsc_encoding(
    spsc: SPSCInstance, inst: StabInstance, rect_of: Mapping[str, int]
) -> None:
    from .geometry import stabs

    by_id = inst.rect_by_id()
    for sid, mem in spsc.sets:
        seg = inst.fixed_candidates[sid]
        stabbed = {
            label for label, rid in rect_of.items() if stabs(seg, by_id[rid])
        }
        if stabbed != set(mem):
            raise ValueError(
                f"set {sid}: segment stabs {sorted(stabbed)}, wants {sorted(mem)}"
            )
