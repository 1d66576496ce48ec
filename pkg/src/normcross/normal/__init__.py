"""
Normal surface machinery: matching-equation cones, Hilbert basis
enumeration, surface reconstruction and efficiency checks.
"""
from .dd import EnumerationAborted, solution_cone_rays
from .matching import (MatchingSystem, matching_system, lift_to_standard,
                       project_to_quad, quad_separating)
from .hilbert import hilbert_basis, DEFAULT_CAP
from .surface import NormalSurface, reconstruct, DEFAULT_DISC_CAP
from .enumerate import (EnumerationResult, EfficiencyReport,
                        enumerate_fundamental, fundamental_surfaces,
                        fundamental_vectors, suitability_check,
                        vertex_surfaces, zero_efficiency_check)

__all__ = [
    "EnumerationAborted", "EnumerationResult", "EfficiencyReport",
    "MatchingSystem", "NormalSurface", "DEFAULT_CAP", "DEFAULT_DISC_CAP",
    "enumerate_fundamental", "fundamental_surfaces", "fundamental_vectors",
    "hilbert_basis", "lift_to_standard", "matching_system",
    "project_to_quad", "quad_separating", "reconstruct",
    "solution_cone_rays", "suitability_check", "vertex_surfaces",
    "zero_efficiency_check",
]
