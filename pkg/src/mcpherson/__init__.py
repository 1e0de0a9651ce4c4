"""McPherson numbers of simple graphs.

Exploding a vertex joins it to every vertex it is not yet adjacent to. The
McPherson number of a graph is the fewest explosions that make it complete;
this package computes it exactly, runs the greedy recursions that
approximate it, and analyses the standard families and Jaco graphs.
"""
from ._accel import BACKEND
from .engine import (
    GapReport,
    PolicyViolation,
    SolverLimitError,
    StabilityReport,
    TieBreakPolicy,
    UpsilonCertificate,
    exact_upsilon,
    exact_upsilon_star,
    greedy_gap_scan,
    greedy_mcpherson,
    inverse_mcpherson,
    order_invariance_check,
    stability_report,
    upsilon_upper_bound,
)
from .families import (
    FamilySpec,
    JacoProfile,
    closed_form_upsilon,
    conjecture_scan,
    generate,
    jaco,
    jaco_profile,
    jaco_table,
    jaco_upsilon_formula,
    platonic_upsilon,
)
from .graph import (
    ExplosionTrace,
    MixedState,
    SimpleGraph,
    build_graph,
    complement,
    degree_profile,
    disjoint_union,
    explode,
    format_edge_list,
    is_complete,
    join_across,
    non_edges,
    parse_edge_list,
    underlying,
)

__version__ = "0.1.0"
