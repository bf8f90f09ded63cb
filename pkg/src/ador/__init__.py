"""
Anisotropic diffusion oscillation reduction (ADOR) on discrete singular
convolution (DSC) grids.

Solvers for Burgers' equation and planar incompressible flow, with
gradient-sensitive artificial diffusion that suppresses the Gibbs
oscillations of the wide DSC stencils near steep fronts.
"""

from ador.anisotropic import AdorConfig, Prescription, ador_term, artificial_pressure_tensor, decompose_velocity_gradient
from ador.dsc import DscKernel, DscOperator, derivative_weights, differentiation_matrix
from ador.grid import Boundary, Field, Grid, error_report, norm
from ador.integrators import BlowUpError, Scheme, StepperConfig, integrate
from ador.problems import BurgersProblem, IncompressibleProblem, ShearLayerParams, cole_exact

__version__ = "0.1.0"

__all__ = (
    "AdorConfig",
    "Boundary",
    "BlowUpError",
    "BurgersProblem",
    "DscKernel",
    "DscOperator",
    "Field",
    "Grid",
    "IncompressibleProblem",
    "Prescription",
    "Scheme",
    "ShearLayerParams",
    "StepperConfig",
    "ador_term",
    "artificial_pressure_tensor",
    "cole_exact",
    "decompose_velocity_gradient",
    "derivative_weights",
    "differentiation_matrix",
    "error_report",
    "integrate",
    "norm",
)
