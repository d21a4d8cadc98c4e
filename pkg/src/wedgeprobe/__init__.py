"""Reconstruction of convex polygons with an omega-wedge probing tool.

The package provides an exact probe oracle over a hidden polygon, the
reconstruction algorithms with their probe-count guarantees, the adversary
that enforces the matching lower bound, and a harness for generating
instances and running budget experiments.
"""

from .adversary import Adversary, DuelResult, audit, duel, new_adversary
from .cloud import OmegaCloud, build_cloud, count_narrow, narrow_vertex_indices
from .errors import (
    BudgetExceeded,
    CoincidentPoints,
    DegenerateCorner,
    DegeneratePolygon,
    EpsilonViolated,
    InconsistencyFound,
    Infeasible,
    InvalidOmega,
    InvalidParams,
    NarrowVertexEncountered,
    OmegaMismatch,
    WedgeProbeError,
)
from .geometry import (
    ConvexPolygon,
    DirectedLine,
    OmegaArc,
    Point,
    Wedge,
    angular_width,
    ccw_angle,
    internal_angle,
    line_arc_intersections,
    omega_arc,
    orient,
)
from .harness import ExperimentConfig, ExperimentReport, cyclic_hausdorff, gen_polygon, run_suite
from .oracle import (
    MISS,
    Miss,
    ProbeOutcome,
    ProbeResult,
    ProbeSession,
    brute_force_probe,
    new_session,
    solve_probe,
)
from .reconstruct import (
    ReconstructionResult,
    classify_narrow_pair,
    greedy_reconstruct,
    reconstruct_general,
    reconstruct_no_narrow,
    reconstruct_right_angle,
)
from .region import ConvexRegion, FeasibleRegion, feasible_edge_region, feasible_region, gap_triangle

__version__ = "0.1.0"
