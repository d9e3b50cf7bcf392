"""Generic weighted set cover: model, LP relaxation, greedy, decomposition.

The LP is solved exactly (rational simplex) at desk scale and with HiGHS
beyond; either way the returned fractional solution is *exactly* feasible,
because the float path rescales the raw solver output with rational
arithmetic before returning it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence

from .geometry import (
    OBJECTIVE_CARDINALITY,
    Segment,
    StabInstance,
    stabs,
)
from .simplex import solve_covering_lp

ZERO = Fraction(0)
ONE = Fraction(1)

# Above this many LP variables the float (HiGHS) path is used.
EXACT_LP_MAX_VARS = 400
EXACT_LP_MAX_ROWS = 40


@dataclass(frozen=True)
class SetCoverInstance:
    universe: tuple[int, ...]  # element ids
    sets: tuple[tuple[int, tuple[int, ...]], ...]  # (set id, member ids)
    cost: Mapping[int, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "universe", tuple(self.universe))
        object.__setattr__(
            self, "sets", tuple((sid, tuple(mem)) for sid, mem in self.sets)
        )
        covered = set()
        for sid, mem in self.sets:
            covered.update(mem)
            if self.cost[sid] <= 0:
                raise ValueError(f"set {sid}: cost must be positive")
        missing = set(self.universe) - covered
        if missing:
            raise ValueError(f"elements not covered by any set: {sorted(missing)}")

    def element_index(self) -> dict[int, int]:
        return {e: i for i, e in enumerate(self.universe)}

    def masks(self) -> list[int]:
        """Per-set bitmask over universe positions."""
        idx = self.element_index()
        out = []
        for _, mem in self.sets:
            m = 0
            for e in mem:
                if e in idx:
                    m |= 1 << idx[e]
            out.append(m)
        return out


@dataclass(frozen=True)
class FractionalSolution:
    z: Mapping[int, Fraction]  # set id -> value in [0, 1]
    objective: Fraction

    def mass(self, sc: SetCoverInstance, element: int) -> Fraction:
        return sum(
            (self.z.get(sid, ZERO) for sid, mem in sc.sets if element in mem), ZERO
        )


@dataclass(frozen=True)
class CoverResult:
    set_ids: tuple[int, ...]
    cost: Fraction
    proven: bool
    nodes: int = 0


def to_set_cover(inst: StabInstance, cands: Sequence[Segment]) -> SetCoverInstance:
    """Rectangles become elements, candidates become sets, cost = length."""
    sets = []
    cost: dict[int, Fraction] = {}
    covered: set[int] = set()
    for s in cands:
        mem = tuple(r.id for r in inst.rects if stabs(s, r))
        if not mem:
            continue
        sets.append((s.id, mem))
        cost[s.id] = (
            ONE if inst.objective == OBJECTIVE_CARDINALITY else s.length
        )
        covered.update(mem)
    for r in inst.rects:
        if r.id not in covered:
            raise ValueError(f"rect {r.id} not stabbed by any candidate")
    return SetCoverInstance(tuple(r.id for r in inst.rects), tuple(sets), cost)


def _lp_solve_exact(sc: SetCoverInstance) -> FractionalSolution:
    idx = sc.element_index()
    columns = [[idx[e] for e in mem] for _, mem in sc.sets]
    costs = [sc.cost[sid] for sid, _ in sc.sets]
    res = solve_covering_lp(columns, costs, len(sc.universe))
    z = {sid: res.x[j] for j, (sid, _) in enumerate(sc.sets)}
    return FractionalSolution(z, res.objective)


def _repair_fractional(
    sc: SetCoverInstance, z: dict[int, Fraction]
) -> FractionalSolution:
    """Rescale an approximately feasible z into an exactly feasible one."""
    per_elem: dict[int, Fraction] = {e: ZERO for e in sc.universe}
    for sid, mem in sc.sets:
        v = z.get(sid, ZERO)
        if v > 0:
            for e in mem:
                per_elem[e] += v
    mu = min(per_elem.values(), default=ONE)
    if mu <= 0:
        raise ValueError("fractional solution leaves an element uncovered")
    if mu < 1:
        z = {sid: min(v / mu, ONE) for sid, v in z.items()}
    z = {sid: min(max(v, ZERO), ONE) for sid, v in z.items() if v > 0}
    obj = sum((sc.cost[sid] * v for sid, v in z.items()), ZERO)
    return FractionalSolution(z, obj)


def _lp_solve_float(sc: SetCoverInstance) -> FractionalSolution:
    import numpy as np
    from scipy.optimize import linprog
    from scipy.sparse import csr_matrix

    idx = sc.element_index()
    m, n = len(sc.universe), len(sc.sets)
    data, rows, cols = [], [], []
    for j, (_, mem) in enumerate(sc.sets):
        for e in mem:
            rows.append(idx[e])
            cols.append(j)
            data.append(-1.0)
    a_ub = csr_matrix((data, (rows, cols)), shape=(m, n))
    c = np.array([float(sc.cost[sid]) for sid, _ in sc.sets])
    res = linprog(c, A_ub=a_ub, b_ub=-np.ones(m), bounds=(0, None), method="highs")
    if not res.success:
        raise RuntimeError(f"LP solver failed: {res.message}")
    z = {
        sid: Fraction(float(v))
        for (sid, _), v in zip(sc.sets, res.x)
        if v > 1e-12
    }
    return _repair_fractional(sc, z)


def lp_solve(sc: SetCoverInstance, mode: str = "auto") -> FractionalSolution:
    """Standard covering LP relaxation; exactly feasible output in all modes.

    mode 'exact' forces rational pivoting, 'float' forces HiGHS, 'auto'
    picks exact below a size threshold.  In float mode the objective may
    exceed the true LP optimum by the tiny repair factor.
    """
    if mode == "exact" or (
        mode == "auto"
        and len(sc.sets) <= EXACT_LP_MAX_VARS
        and len(sc.universe) <= EXACT_LP_MAX_ROWS
    ):
        return _lp_solve_exact(sc)
    if mode not in ("auto", "float"):
        raise ValueError(f"bad LP mode {mode!r}")
    return _lp_solve_float(sc)


def lp_duals(sc: SetCoverInstance, mode: str = "auto") -> list[Fraction]:
    """Exactly dual-feasible prices, one per universe element (in order).

    From the exact simplex these are the true optimal duals; from HiGHS the
    marginals are scaled down rationally until every set constraint
    sum_{e in S} y_e <= c(S) holds exactly, so sum_i y_i is always a valid
    lower bound on any cover's cost.
    """
    if mode == "exact" or (
        mode == "auto"
        and len(sc.sets) <= EXACT_LP_MAX_VARS
        and len(sc.universe) <= EXACT_LP_MAX_ROWS
    ):
        idx = sc.element_index()
        columns = [[idx[e] for e in mem] for _, mem in sc.sets]
        costs = [sc.cost[sid] for sid, _ in sc.sets]
        return solve_covering_lp(columns, costs, len(sc.universe)).duals
    import numpy as np
    from scipy.optimize import linprog
    from scipy.sparse import csr_matrix

    idx = sc.element_index()
    m, n = len(sc.universe), len(sc.sets)
    data, rows, cols = [], [], []
    for j, (_, mem) in enumerate(sc.sets):
        for e in mem:
            rows.append(idx[e])
            cols.append(j)
            data.append(-1.0)
    a_ub = csr_matrix((data, (rows, cols)), shape=(m, n))
    c = np.array([float(sc.cost[sid]) for sid, _ in sc.sets])
    res = linprog(c, A_ub=a_ub, b_ub=-np.ones(m), bounds=(0, None), method="highs")
    if not res.success:
        raise RuntimeError(f"LP solver failed: {res.message}")
    raw = [max(0.0, -v) for v in res.ineqlin.marginals]
    y = [Fraction(v).limit_denominator(10**12) for v in raw]
    # Exact feasibility repair: scale all prices by the worst violation.
    theta = ONE
    for j, (sid, mem) in enumerate(sc.sets):
        tot = sum((y[idx[e]] for e in mem), ZERO)
        if tot > sc.cost[sid]:
            theta = min(theta, sc.cost[sid] / tot)
    if theta < 1:
        y = [v * theta for v in y]
    return y


def greedy_cover(
    sc: SetCoverInstance,
    mode: str = "count",
    widths: Optional[Mapping[int, Fraction]] = None,
) -> CoverResult:
    """Cost-efficiency greedy; ties broken by lowest set id.

    'count' divides by the number of newly covered elements, 'width' by
    their total width (the width-weighted variant needs ``widths``).
    """
    if mode not in ("count", "width"):
        raise ValueError(f"bad greedy mode {mode!r}")
    if mode == "width" and widths is None:
        raise ValueError("width mode requires element widths")
    idx = sc.element_index()
    masks = sc.masks()
    full = (1 << len(sc.universe)) - 1
    gain: list[Fraction] = []
    if mode == "width":
        w = [Fraction(widths[e]) for e in sc.universe]
    uncovered = full
    chosen: list[int] = []
    order = sorted(range(len(sc.sets)), key=lambda j: sc.sets[j][0])
    while uncovered:
        best_j, best_eff = -1, None
        for j in order:
            new = masks[j] & uncovered
            if not new:
                continue
            if mode == "count":
                denom = Fraction(bin(new).count("1"))
            else:
                denom = ZERO
                mm = new
                while mm:
                    low = mm & -mm
                    denom += w[low.bit_length() - 1]
                    mm ^= low
            eff = sc.cost[sc.sets[j][0]] / denom
            if best_eff is None or eff < best_eff:
                best_j, best_eff = j, eff
        sid, _ = sc.sets[best_j]
        chosen.append(sid)
        uncovered &= ~masks[best_j]
    cost = sum((sc.cost[sid] for sid in chosen), ZERO)
    return CoverResult(tuple(chosen), cost, proven=False)


Rounder = Callable[[SetCoverInstance, FractionalSolution], Sequence[int]]


def decompose_and_conquer(
    sc: SetCoverInstance,
    part: tuple[frozenset[int], frozenset[int]],
    z: FractionalSolution,
    a1: Fraction,
    a2: Fraction,
    rounder1: Rounder,
    rounder2: Rounder,
) -> CoverResult:
    """Split elements by LP mass, scale, round each side, merge.

    Elements whose family-1 mass reaches a1/(a1+a2) go to U1 (ties to U1),
    the rest to U2; each side's z is scaled by (a1+a2)/ai and capped at 1,
    which is provably feasible for the sub-LP and asserted here exactly.
    """
    f1, f2 = part
    all_ids = {sid for sid, _ in sc.sets}
    if f1 | f2 != all_ids or f1 & f2:
        raise ValueError("F1, F2 must partition the set family")
    a1, a2 = Fraction(a1), Fraction(a2)
    thresh = a1 / (a1 + a2)
    mass1: dict[int, Fraction] = {e: ZERO for e in sc.universe}
    mass2: dict[int, Fraction] = {e: ZERO for e in sc.universe}
    for sid, mem in sc.sets:
        v = z.z.get(sid, ZERO)
        if v > 0:
            tgt = mass1 if sid in f1 else mass2
            for e in mem:
                tgt[e] += v
    u1 = tuple(e for e in sc.universe if mass1[e] >= thresh)
    u2 = tuple(e for e in sc.universe if mass1[e] < thresh)

    def side(u: tuple[int, ...], fam: frozenset[int], a: Fraction, rounder: Rounder):
        if not u:
            return []
        scale = (a1 + a2) / a
        sets = tuple(
            (sid, tuple(e for e in mem if e in set(u)))
            for sid, mem in sc.sets
            if sid in fam
        )
        sets = tuple((sid, mem) for sid, mem in sets if mem)
        sub = SetCoverInstance(u, sets, sc.cost)
        zs = {
            sid: min(scale * z.z.get(sid, ZERO), ONE)
            for sid, _ in sets
            if z.z.get(sid, ZERO) > 0
        }
        obj = sum((sc.cost[sid] * v for sid, v in zs.items()), ZERO)
        sub_z = FractionalSolution(zs, obj)
        for e in u:  # the scaled solution must be exactly feasible
            m = sum((zs.get(sid, ZERO) for sid, mem in sets if e in mem), ZERO)
            assert m >= 1, f"scaled LP mass {m} < 1 for element {e}"
        chosen = list(rounder(sub, sub_z))
        covered = set()
        for sid, mem in sets:
            if sid in chosen:
                covered.update(mem)
        if set(u) - covered:
            raise RuntimeError(
                f"rounder returned infeasible sub-cover, missing {set(u) - covered}"
            )
        return chosen

    chosen = sorted(set(side(u1, f1, a1, rounder1)) | set(side(u2, f2, a2, rounder2)))
    cost = sum((sc.cost[sid] for sid in chosen), ZERO)
    return CoverResult(tuple(chosen), cost, proven=False)
