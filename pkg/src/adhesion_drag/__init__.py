"""Adhesion model of drag for a variable-mass body in a resting medium.

A body that sweeps up medium particles at rest keeps ``m v = m0 v0``; choosing
the accretion rate so that it decelerates exactly like a constant-mass body
under drag ``-phi(v) v`` gives ``dm/dt = phi(m0 v0 / m) m / m0``. This package
solves that model three ways (closed form for power-law drag, inversion of
the quadrature solution, direct ODE integration), provides the table-tennis
presets, and fits ``(lambda, alpha)`` to observed masses.
"""

from ._jit import JIT_ENABLED
from .calibrate import FitResult, MassSample, fit_power_law, residuals
from .closed_form import (
    closed_form_series,
    closed_form_series_in_x,
    doubling_distance,
    doubling_time,
    mass_at_position_closed,
    mass_at_time_closed,
    max_range,
    position_at_time,
    time_at_mass_closed,
    velocity_at_time,
)
from .errors import (
    AdhesionError,
    BracketError,
    DegenerateScenarioError,
    DomainError,
    NoSolutionError,
    NonConvergenceError,
    RangeExceededError,
    SingularityError,
    UnidentifiableError,
    UnsupportedLawError,
    ValidationError,
)
from .implicit import (
    TrajectoryRequest,
    constant_mass_velocity,
    integrate_trajectory,
    mass_at_position_numeric,
    mass_at_time_numeric,
    position_for_mass,
    time_for_mass,
)
from .model import BodyState, Method, PowerLaw, Scenario, SolutionSeries, TabulatedLaw, drag_force, phi_eval
from .numerics import SolverConfig
from .scenarios import SphereBody, MediumSpec, preset, quadratic_lambda, stokes_lambda

__version__ = "0.1.0"

__all__ = [
    "JIT_ENABLED",
    "AdhesionError",
    "BodyState",
    "BracketError",
    "DegenerateScenarioError",
    "DomainError",
    "FitResult",
    "MassSample",
    "MediumSpec",
    "Method",
    "NoSolutionError",
    "NonConvergenceError",
    "PowerLaw",
    "RangeExceededError",
    "Scenario",
    "SingularityError",
    "SolutionSeries",
    "SolverConfig",
    "SphereBody",
    "TabulatedLaw",
    "TrajectoryRequest",
    "UnidentifiableError",
    "UnsupportedLawError",
    "ValidationError",
    "closed_form_series",
    "closed_form_series_in_x",
    "constant_mass_velocity",
    "doubling_distance",
    "doubling_time",
    "drag_force",
    "fit_power_law",
    "integrate_trajectory",
    "mass_at_position_closed",
    "mass_at_position_numeric",
    "mass_at_time_closed",
    "mass_at_time_numeric",
    "max_range",
    "phi_eval",
    "position_at_time",
    "position_for_mass",
    "preset",
    "quadratic_lambda",
    "residuals",
    "stokes_lambda",
    "time_at_mass_closed",
    "time_for_mass",
    "velocity_at_time",
]
