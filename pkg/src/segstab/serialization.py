"""JSON (de)serialization with exact rational coordinates.

All coordinates are written as "p/q" strings (or "p" for integers), so a
round trip through a file never loses exactness.  Every document carries a
"type" tag; ``load`` dispatches on it.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .geometry import Rect, Segment, Solution, StabInstance
from .generators import Box3D, PiercingInstance3D, Point3D
from .laminar import LaminarDecomposition


def frac_to_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def str_to_frac(s: str) -> Fraction:
    return Fraction(s)


def _rect_dict(r: Rect) -> dict:
    d = {
        "id": r.id,
        "x_left": frac_to_str(r.x_left),
        "x_right": frac_to_str(r.x_right),
        "y_bottom": frac_to_str(r.y_bottom),
        "y_top": frac_to_str(r.y_top),
    }
    if r.multiplicity != 1:
        d["multiplicity"] = r.multiplicity
    return d


def _rect_from(d: dict) -> Rect:
    return Rect(
        Fraction(d["x_left"]),
        Fraction(d["x_right"]),
        Fraction(d["y_bottom"]),
        Fraction(d["y_top"]),
        id=d["id"],
        multiplicity=d.get("multiplicity", 1),
    )


def _seg_dict(s: Segment) -> dict:
    return {
        "id": s.id,
        "x_left": frac_to_str(s.x_left),
        "x_right": frac_to_str(s.x_right),
        "y": frac_to_str(s.y),
        "orientation": s.orientation,
    }


def _seg_from(d: dict) -> Segment:
    return Segment(
        Fraction(d["x_left"]),
        Fraction(d["x_right"]),
        Fraction(d["y"]),
        id=d["id"],
        orientation=d.get("orientation", "horizontal"),
    )


def instance_to_dict(inst: StabInstance) -> dict:
    return {
        "type": "stab_instance",
        "objective": inst.objective,
        "hv": inst.hv,
        "rects": [_rect_dict(r) for r in inst.rects],
        "fixed_candidates": (
            None
            if inst.fixed_candidates is None
            else [_seg_dict(s) for s in inst.fixed_candidates]
        ),
    }


def instance_from_dict(d: dict) -> StabInstance:
    fc = d.get("fixed_candidates")
    return StabInstance(
        tuple(_rect_from(r) for r in d["rects"]),
        fixed_candidates=None if fc is None else tuple(_seg_from(s) for s in fc),
        objective=d.get("objective", "length"),
        hv=d.get("hv", False),
    )


def solution_to_dict(sol: Solution) -> dict:
    return {
        "type": "solution",
        "cost": frac_to_str(sol.cost),
        "segments": [_seg_dict(s) for s in sol.segments],
        "assignment": (
            None
            if sol.assignment is None
            else {str(k): v for k, v in sol.assignment.items()}
        ),
    }


def solution_from_dict(d: dict) -> Solution:
    a = d.get("assignment")
    return Solution(
        tuple(_seg_from(s) for s in d["segments"]),
        Fraction(d["cost"]),
        None if a is None else {int(k): v for k, v in a.items()},
    )


def decomposition_to_dict(lam: LaminarDecomposition) -> dict:
    return {
        "type": "laminar_decomposition",
        "scale": frac_to_str(lam.scale),
        "translation": frac_to_str(lam.translation),
        "segments": [
            dict(_seg_dict(s), family=lam.family[s.id], stretch=frac_to_str(lam.stretch[s.id]))
            for s in lam.segments
        ],
        "provenance": {str(k): v for k, v in lam.provenance.items()},
    }


def decomposition_from_dict(d: dict) -> LaminarDecomposition:
    segs = tuple(_seg_from(s) for s in d["segments"])
    return LaminarDecomposition(
        segs,
        {s["id"]: s["family"] for s in d["segments"]},
        {s["id"]: Fraction(s["stretch"]) for s in d["segments"]},
        {int(k): v for k, v in d["provenance"].items()},
        Fraction(d["scale"]),
        Fraction(d["translation"]),
    )


def piercing_to_dict(p: PiercingInstance3D) -> dict:
    return {
        "type": "piercing_3d",
        "boxes": [
            {
                "id": b.id,
                "extents": [[frac_to_str(lo), frac_to_str(hi)] for lo, hi in b.extents],
            }
            for b in p.boxes
        ],
        "points": [
            {
                "id": pt.id,
                "coords": [frac_to_str(c) for c in pt.coords],
                "weight": frac_to_str(pt.weight),
            }
            for pt in p.points
        ],
    }


def piercing_from_dict(d: dict) -> PiercingInstance3D:
    boxes = tuple(
        Box3D(
            b["id"],
            tuple((Fraction(lo), Fraction(hi)) for lo, hi in b["extents"]),
        )
        for b in d["boxes"]
    )
    points = tuple(
        Point3D(
            p["id"],
            tuple(Fraction(c) for c in p["coords"]),
            Fraction(p["weight"]),
        )
        for p in d["points"]
    )
    return PiercingInstance3D(boxes, points)


_WRITERS = {
    StabInstance: instance_to_dict,
    Solution: solution_to_dict,
    LaminarDecomposition: decomposition_to_dict,
    PiercingInstance3D: piercing_to_dict,
}
_READERS = {
    "stab_instance": instance_from_dict,
    "solution": solution_from_dict,
    "laminar_decomposition": decomposition_from_dict,
    "piercing_3d": piercing_from_dict,
}


def to_dict(obj: Any) -> dict:
    for cls, fn in _WRITERS.items():
        if isinstance(obj, cls):
            return fn(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def save(obj: Any, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(to_dict(obj), fh, indent=1)
        fh.write("\n")


def load(path: str) -> Any:
    with open(path) as fh:
        d = json.load(fh)
    kind = d.get("type")
    if kind not in _READERS:
        raise ValueError(f"unknown document type {kind!r}")
    return _READERS[kind](d)
