"""Triangulations of closed orientable surfaces with a non-degenerate
antiferromagnetic Ising groundstate: construction, exact enumeration and
verification."""

from .complex import (
    DualGraph,
    GluingSpec,
    SurfaceComplex,
    build_complex,
    canonical_form,
    dual_graph,
    euler_genus,
    glue,
    is_isomorphic,
    remove_faces,
)
from .ising import (
    Constraint,
    GroundstateReport,
    SolveReport,
    energy,
    enumerate_satisfying,
    frustrated_edges,
    groundstates,
    is_satisfying,
    matching_from_state,
    serious_edges,
    state_from_matching,
)

__version__ = "0.1.0"

__all__ = [
    "DualGraph",
    "GluingSpec",
    "SurfaceComplex",
    "build_complex",
    "canonical_form",
    "dual_graph",
    "euler_genus",
    "glue",
    "is_isomorphic",
    "remove_faces",
    "Constraint",
    "GroundstateReport",
    "SolveReport",
    "energy",
    "enumerate_satisfying",
    "frustrated_edges",
    "groundstates",
    "is_satisfying",
    "matching_from_state",
    "serious_edges",
    "state_from_matching",
]
