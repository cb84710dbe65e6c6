"""Laguerre-Gauss beam toolkit.

Analytic transverse modes, ladder-operator synthesis, unitary paraxial
propagation and modal decomposition on desk-scale grids, with a compiled
mode-evaluation kernel (numpy fallback selected at import).
"""

from .analytic import (BeamGeometry, beam_geometry, default_grid, eval_lg_mode,
                       laguerre_poly, normalization_const)
from .core import (BeamParams, ComplexField, Grid, ModalSpectrum, ModeIndex,
                   add, fidelity, inner_product, make_grid, norm, normalized,
                   scale)
from .decomposition import decompose, oam_spectrum, reconstruct, residual_power
from .kernels import backend_name
from .operators import (LadderKind, apply_ladder_at_z, apply_ladder_polar,
                        apply_ladder_zero, commutator_residual, index_map_scan,
                        lowering, map_indices, oam_expectation, raising,
                        synthesize_mode)
from .propagation import (GuardError, PropagationPlan, composition_check,
                          default_plan, gouy_phase_extract, paraxial_residual,
                          propagate)

__version__ = "0.1.0"

__all__ = [
    "BeamGeometry", "BeamParams", "ComplexField", "Grid", "GuardError",
    "LadderKind", "ModalSpectrum", "ModeIndex", "PropagationPlan", "add",
    "apply_ladder_at_z", "apply_ladder_polar", "apply_ladder_zero",
    "backend_name", "beam_geometry", "commutator_residual",
    "composition_check", "decompose", "default_grid", "default_plan",
    "eval_lg_mode", "fidelity", "gouy_phase_extract", "index_map_scan",
    "inner_product", "laguerre_poly", "lowering", "make_grid", "map_indices",
    "norm", "normalization_const", "normalized", "oam_expectation",
    "oam_spectrum", "paraxial_residual", "propagate", "raising",
    "reconstruct", "residual_power", "scale", "synthesize_mode",
]
