"""Solution families, optimality certificate checkers and perturbation scans
for extremal problems over convex figures."""

from .bodies import arc_centers, bulge_body, lens_2d, stadium, triangle_bulge_body
from .flattening import (
    CurrentHyperplaneCertificate,
    FlatteningCertificate,
    verify_current_hyperplane,
    verify_flattening_optimality,
)
from .pareto import ParetoPoint, objective_vector, pareto_vector_isoperimetric
from .report import Condition, Report
from .rotation import RotationBody, rotate_profile, rotation_breadth, rotation_surface, rotation_volume
from .scans import ScanResult, isoperimetric_scan, perturb_support, rotation_scan, urysohn_scan
from .urysohn import (
    UrysohnCertificate,
    snap_to_grid,
    solve_external_urysohn_triangle,
    verify_external_optimality,
)

__all__ = [
    "arc_centers", "bulge_body", "lens_2d", "stadium", "triangle_bulge_body",
    "CurrentHyperplaneCertificate", "FlatteningCertificate",
    "verify_current_hyperplane", "verify_flattening_optimality",
    "ParetoPoint", "objective_vector", "pareto_vector_isoperimetric",
    "Condition", "Report",
    "RotationBody", "rotate_profile", "rotation_breadth", "rotation_surface", "rotation_volume",
    "ScanResult", "isoperimetric_scan", "perturb_support", "rotation_scan", "urysohn_scan",
    "UrysohnCertificate", "snap_to_grid", "solve_external_urysohn_triangle", "verify_external_optimality",
]
