"""Six-vertex model with domain-wall boundary conditions.

Partition function ``Z_N`` and the boundary correlators ``G_N^(M)`` (boundary
polarization) and ``H_N^(M)`` (turning-point probability) from determinant
formulas, together with two independent brute-force oracles: an operator
(monodromy-matrix) evaluation and an exhaustive sum over configurations.
"""

from .determinant import (CorrelatorResult, g_det, g_reduction, h_det, h_reduction,
                          recursion_residual, z_det, z_perm)
from .enumeration import correlators_by_enumeration, count_configs, enumerate_configs, z_by_enumeration
from .errors import (DegenerateNormalizationError, DimensionError, InvalidInputError, NearSingularWarning,
                     PrecisionWarning, ResourceError, SingularJetError, SingularParameterError, SixVertexError)
from .free_fermion import FreeFermionParams, g_ff, g_thermo, h_ff, z_ff
from .homogeneous import g_hom, h_hom, ice_point_asm, z_hom
from .model import SpectralParams, f_fun, g_fun, phi, random_params, vertex_weights
from .numeric import Jet, det, precision
from .qism import g_via_monodromy, h_via_monodromy, z_via_monodromy

__version__ = "0.1.0"

__all__ = [
    "CorrelatorResult",
    "DegenerateNormalizationError",
    "DimensionError",
    "FreeFermionParams",
    "InvalidInputError",
    "Jet",
    "NearSingularWarning",
    "PrecisionWarning",
    "ResourceError",
    "SingularJetError",
    "SingularParameterError",
    "SixVertexError",
    "SpectralParams",
    "correlators_by_enumeration",
    "count_configs",
    "det",
    "enumerate_configs",
    "f_fun",
    "g_det",
    "g_ff",
    "g_fun",
    "g_hom",
    "g_reduction",
    "g_thermo",
    "g_via_monodromy",
    "h_det",
    "h_ff",
    "h_hom",
    "h_reduction",
    "h_via_monodromy",
    "ice_point_asm",
    "phi",
    "precision",
    "random_params",
    "recursion_residual",
    "vertex_weights",
    "z_by_enumeration",
    "z_det",
    "z_ff",
    "z_hom",
    "z_perm",
    "z_via_monodromy",
]
