"""Convex figures in the plane: support functions, surface measures, majorization
certificates and closed-form solutions of isoperimetric-type problems."""

__version__ = "0.1.0"

from .geometry import (
    ConvexFigure,
    DirectionGrid,
    SupportVector,
    breadth,
    contains,
    contains_up_to_translation,
    disk,
    equilateral_triangle,
    hausdorff_distance,
    integral_breadth,
    minkowski_combination,
    minkowski_sum,
    point,
    polygon_from_support,
    regular_polygon,
    sample_support,
    scale,
    segment,
    square,
    support_eval,
    translate,
    unit_ball,
)
from .majorization import (
    ConvexTestFunction,
    PointMeasure,
    SublinearFunction,
    TransportCertificate,
    affinely_majorizes,
    cfm_check,
    decomposition_complete,
    decomposition_hypothesis,
    linearly_majorizes,
    reshetnyak_gap,
)
from .measures import (
    AlexandrovMeasure,
    DiscreteMeasure,
    ball_measure,
    blaschke_sum,
    dirac,
    figure_measure,
    mixed_volume,
    reconstruct,
    surface_measure,
    volume,
)
