"""Generic numerical kernels: adaptive quadrature, monotone root finding, adaptive RK ODE integration."""

from .config import DEFAULT_CONFIG, OdeSolution, QuadratureResult, SolverConfig
from .ode import integrate_ode
from .quadrature import integrate_1d
from .roots import find_root_monotone

__all__ = [
    "DEFAULT_CONFIG",
    "OdeSolution",
    "QuadratureResult",
    "SolverConfig",
    "find_root_monotone",
    "integrate_1d",
    "integrate_ode",
]
