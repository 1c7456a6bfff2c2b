from dataclasses import dataclass, fields

import numpy as np

from ..errors import ValidationError


@dataclass(frozen=True)
class SolverConfig:
    """Tolerances and budgets shared by the numerical kernels.

    ``rel_tol`` of ``None`` means "use the kernel default": 1e-10 for
    quadrature and 1e-9 for ODE integration.
    """

    rel_tol: float | None = None
    abs_tol: float = 1e-12
    max_evaluations: int = 1_000_000
    root_tol: float = 1e-12
    bracket_growth: float = 2.0

    def __post_init__(self):
        for name in ("rel_tol", "abs_tol", "root_tol"):
            value = getattr(self, name)
            if value is not None and not (np.isfinite(value) and value > 0):
                raise ValidationError(f"{name} must be a positive finite number, got {value!r}")
        if int(self.max_evaluations) != self.max_evaluations or self.max_evaluations <= 0:
            raise ValidationError(f"max_evaluations must be a positive integer, got {self.max_evaluations!r}")
        if not self.bracket_growth > 1:
            raise ValidationError(f"bracket_growth must exceed 1, got {self.bracket_growth!r}")

    def quad_rel_tol(self):
        return 1e-10 if self.rel_tol is None else self.rel_tol

    def ode_rel_tol(self):
        return 1e-9 if self.rel_tol is None else self.rel_tol

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


DEFAULT_CONFIG = SolverConfig()


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int


@dataclass(frozen=True)
class OdeSolution:
    """States sampled at ``t`` (shape ``(len(t), n)``) plus step statistics."""

    t: np.ndarray
    y: np.ndarray
    evaluations: int
    steps: int
