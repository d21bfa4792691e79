"""Long-time decay of waves from zero-energy resolvent expansions.

Submodules
----------
specfun
    Gamma, polygamma and Bessel/Hankel functions with domain checks.
loopint
    Keyhole-contour integrals of ``exp(-i t lam) lam**nu log(b lam)**k`` and
    their long-time expansions.
expansion
    Zero-energy wave contribution of a finite resolvent expansion.
spectral
    Hankel transforms and Filon quadrature for radial wave evolution.
models
    Dirichlet sector, Aharonov-Bohm and free-plane models with wave oracles.
harness
    Experiment runner, decay-law fits and self checks.
"""

from .errors import (
    ConfigError,
    ContourError,
    ConvergenceError,
    CrossCheckError,
    DegenerateSamplesError,
    DomainError,
    PoleError,
    WavetailError,
)
from .expansion import ResolventTerm, uz_asymptotic, uz_exact
from .harness import ExperimentConfig, RateFit, fit_rate, run_experiment, selftest
from .loopint import ContourSpec, ModelIntegralSpec, asym_coeff, loop_integral_closed, loop_integral_numeric
from .models import ABModel, ConeModel, FreePlaneModel
from .spectral import RadialProfile, bump_profile, hankel_transform, sine_evolution

__version__ = "0.1.0"

__all__ = [
    "ABModel",
    "ConeModel",
    "ConfigError",
    "ContourError",
    "ContourSpec",
    "ConvergenceError",
    "CrossCheckError",
    "DegenerateSamplesError",
    "DomainError",
    "ExperimentConfig",
    "FreePlaneModel",
    "ModelIntegralSpec",
    "PoleError",
    "RadialProfile",
    "RateFit",
    "ResolventTerm",
    "WavetailError",
    "asym_coeff",
    "bump_profile",
    "fit_rate",
    "hankel_transform",
    "loop_integral_closed",
    "loop_integral_numeric",
    "run_experiment",
    "selftest",
    "sine_evolution",
    "uz_asymptotic",
    "uz_exact",
]
