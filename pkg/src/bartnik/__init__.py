"""Numerical laboratory for Bartnik quasi-local mass in rotational symmetry.

Geometric units throughout: G = c = 1, masses are lengths.
"""

from .geometry import (
    AnalyticTag,
    BoundaryData,
    CornerManifold,
    RadialProfile,
    WarpedProfile,
    af_check,
    corner_classify,
    cylinder_segment,
    flat_ball,
    flat_exterior,
    flat_profile,
    gauss_curvature,
    hawking_mass,
    mean_curvature,
    scalar_curvature,
    scalar_curvature_warped,
    schwarzschild_profile,
    sphere_area,
    weighted_deviation,
    weighted_norm,
)

__version__ = "0.1.0"
