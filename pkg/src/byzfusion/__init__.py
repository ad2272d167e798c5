"""Distributed Bayesian detection with Byzantine data falsification:
fused report marginals, Chernoff information, optimal attacks, and
finite-N error-probability oracles."""
from .adversary import (
    ALPHA_BLIND,
    OptimalAttack,
    blinding_fraction,
    is_blinded,
    optimal_attack,
    robust_design_exponent,
)
from .chernoff import (
    ChernoffResult,
    chernoff_information,
    chernoff_objective,
    closed_form_t_star,
    numeric_t_star,
    t_star_bounds,
)
from .errors import ByzFusionError
from .kernels import BACKEND
from .model import (
    AttackStrategy,
    FusedMarginals,
    GaussianSensingModel,
    NetworkParams,
    SensorOperatingPoint,
    gaussian_model_for,
    local_operating_point,
    marginalize,
)
from .oracle import (
    ExponentFit,
    SimulationReport,
    exact_error_probability,
    fit_error_exponent,
    fusion_decision,
    log_error_probability,
    simulate,
)
from .sweep import SweepSpec, chernoff_surface
