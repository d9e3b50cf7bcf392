"""Rendering: deterministic SVG pictures and the benchmark figure.

The SVG output is assembled by hand so identical inputs give identical
bytes; the y-axis is flipped to the usual mathematical orientation and the
viewBox gets a 5% margin.  The benchmark chart goes through matplotlib.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .geometry import HORIZONTAL, Segment, Solution, StabInstance
from .laminar import LaminarDecomposition

_FAMILY_STROKE = {1: "#d62728", 2: "#1f77b4"}


def _fmt(x: Fraction) -> str:
    return f"{float(x):.6g}"


def _seg_coords(s: Segment):
    if s.orientation == HORIZONTAL:
        return s.x_left, s.y, s.x_right, s.y
    return s.y, s.x_left, s.y, s.x_right  # vertical: transposed fields


def render_svg(
    inst: StabInstance,
    solution: Optional[Solution] = None,
    decomposition: Optional[LaminarDecomposition] = None,
    size: int = 640,
) -> str:
    """One <rect> per rectangle, one <line> per solution/decomposition
    segment (stroke per laminar family when a decomposition is given)."""
    segments: list[Segment] = []
    if solution is not None:
        segments += list(solution.segments)
    if decomposition is not None:
        segments += list(decomposition.segments)
    xs = [r.x_left for r in inst.rects] + [r.x_right for r in inst.rects]
    ys = [r.y_bottom for r in inst.rects] + [r.y_top for r in inst.rects]
    for s in segments:
        x1, y1, x2, y2 = _seg_coords(s)
        xs += [x1, x2]
        ys += [y1, y2]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    margin_x = (x_hi - x_lo) * Fraction(1, 20) or Fraction(1)
    margin_y = (y_hi - y_lo) * Fraction(1, 20) or Fraction(1)
    x_lo, x_hi = x_lo - margin_x, x_hi + margin_x
    y_lo, y_hi = y_lo - margin_y, y_hi + margin_y
    width = x_hi - x_lo
    height = y_hi - y_lo

    def flip(y: Fraction) -> Fraction:
        return y_hi - y + y_lo

    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{size}" viewBox="{_fmt(x_lo)} {_fmt(y_lo)} '
        f'{_fmt(width)} {_fmt(height)}">'
    ]
    stroke_w = _fmt(width / 400)
    for r in inst.rects:
        lines.append(
            f'<rect x="{_fmt(r.x_left)}" y="{_fmt(flip(r.y_top))}" '
            f'width="{_fmt(r.width)}" height="{_fmt(r.height)}" '
            f'fill="#aaaaaa" fill-opacity="0.25" stroke="#333333" '
            f'stroke-width="{stroke_w}"/>'
        )
    for s in segments:
        if decomposition is not None and s.id in decomposition.family:
            stroke = _FAMILY_STROKE[decomposition.family[s.id]]
            cls = f"family{decomposition.family[s.id]}"
        else:
            stroke = "#2ca02c"
            cls = "solution"
        x1, y1, x2, y2 = _seg_coords(s)
        lines.append(
            f'<line class="{cls}" x1="{_fmt(x1)}" y1="{_fmt(flip(y1))}" '
            f'x2="{_fmt(x2)}" y2="{_fmt(flip(y2))}" stroke="{stroke}" '
            f'stroke-width="{_fmt(width / 150)}" stroke-linecap="round"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_bench_png(rows: Sequence[dict], path: str) -> None:
    """Ratio-vs-size scatter per algorithm for the bench report."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 4.5))
    algos = sorted({row["algo"] for row in rows})
    for algo in algos:
        pts = [
            (row["n"], float(row["ratio"]))
            for row in rows
            if row["algo"] == algo and row["ratio"] is not None
        ]
        if pts:
            ax.scatter(*zip(*pts), label=algo, s=18, alpha=0.75)
    ax.set_xlabel("rectangles")
    ax.set_ylabel("cost / LP bound")
    ax.axhline(1.0, color="gray", lw=0.8, ls=":")
    ax.legend()
    ax.set_title("stabbing benchmark")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
