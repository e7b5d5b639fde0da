"""Optical Stern-Gerlach quantum-eraser simulations."""
from .branches import (BranchCenters, BranchSign, branch_centers, branch_overlap,
                       branch_p_amplitude, branch_x_amplitude, dropped_phase)
from .distributions import (DensityProfile, damping_factor, density_conditioned,
                            density_unconditioned, distinguishability_report, fringe_visibility,
                            interference_term, visibility_crossover_time)
from .errors import (GridTooNarrow, InvalidParameter, NegativeTime, NyquistOverflow, SGQEError,
                     TimeBeforeExit, UnconditionedOutcome)
from .grids import Grid1D, Grid2D
from .measurement import MeasurementOutcome
from .model import (HBAR, DerivedScales, ModelParams, correlation_coefficient, derive_scales,
                    packet_spread, reference_params, validate)
from .oracle import (CovarianceSummary, NumericState, Stage, default_grid, evolve_branch,
                     initial_state, mixture_moments, moments, propagate, wigner_transform)
from .phase_space import (WignerField, WignerKind, normalizations, phase_space_distance,
                          uncertainty_area_conditioned, uncertainty_area_reduced, wigner_branch,
                          wigner_conditioned, wigner_field, wigner_interference, wigner_reduced)

__version__ = "0.1.0"
