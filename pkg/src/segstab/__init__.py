"""segstab: stabbing axis-aligned rectangles with horizontal segments.

Exact rational geometry, canonical candidate generation, LP relaxation
(exact simplex or HiGHS), branch-and-bound exact covers, greedy baselines,
shifted-dyadic laminarization with an LP-rounding approximation pipeline,
shallow-cell-complexity measurement, hardness-reduction compilers, and
instance generators for all of the above.
"""

from .approx import RoundingParams, approx_hv, approx_stab, round_laminar
from .candidates import (
    candidate_segments,
    dedup_by_stab_set,
    prune_dominated,
    stab_mask,
)
from .exactcover import exact_cover
from .generators import (
    Box3D,
    PiercingInstance3D,
    Point3D,
    gen_double_staircase,
    gen_greedy_trap,
    gen_random,
    gen_scc_counterexample,
    piercing_3d,
    piercing_violations,
)
from .geometry import (
    HORIZONTAL,
    OBJECTIVE_CARDINALITY,
    OBJECTIVE_LENGTH,
    VERTICAL,
    InfeasibleInstanceError,
    Rect,
    Segment,
    Solution,
    StabInstance,
    VerifyReport,
    canonicalize_solution,
    make_solution,
    solution_cost,
    stabs,
    transpose_instance,
    verify_solution,
)
from .hardness import (
    NPGadgetInstance,
    SPSCInstance,
    VisibilityRep,
    build_visibility,
    check_np_instance,
    check_visibility,
    compile_np_instance,
    gadget_segments,
    gen_spsc,
    min_vertex_cover,
    spsc_cover_optimum,
    spsc_to_stabbing,
)
from .laminar import LaminarDecomposition, dyadic_snap, is_x_laminar, laminarize
from .scc import SCCProfile, cell_count, cells, scc_profile
from .setcover import (
    CoverResult,
    FractionalSolution,
    SetCoverInstance,
    decompose_and_conquer,
    greedy_cover,
    lp_duals,
    lp_solve,
    to_set_cover,
)
from .simplex import LPResult, SimplexError, solve_covering_lp
from .solve import (
    build_cover,
    instance_candidates,
    solve_exact,
    solve_greedy,
    solve_lp,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
