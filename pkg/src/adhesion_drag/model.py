"""Domain types and drag-law evaluation.

Units are SI throughout (kg, m, s). For a power law the drag coefficient is
``phi(v) = lam * v**alpha`` and the drag force is ``-phi(|v|) * v``, so
``alpha = 0`` is linear (Stokes) drag and ``alpha = 1`` is quadratic drag.
The units of ``lam`` therefore depend on ``alpha``: kg s^(alpha-1) m^(-alpha).

The surrounding medium is at rest; accreted particles carry no momentum.
"""

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import DomainError, ValidationError

#: velocity of the resting medium; a model constant, not a parameter
MEDIUM_VELOCITY = 0.0

MOMENTUM_RTOL = 1e-9


@dataclass(frozen=True)
class PowerLaw:
    """``phi(v) = lam * v**alpha`` with ``0**0 == 1``."""

    lam: float
    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "lam", float(self.lam))
        object.__setattr__(self, "alpha", float(self.alpha))
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise ValidationError(f"drag coefficient lambda must be > 0, got {self.lam!r}")
        if not (math.isfinite(self.alpha) and self.alpha >= 0):
            raise ValidationError(f"drag exponent alpha must be >= 0, got {self.alpha!r}")

    def phi(self, v):
        v = _check_speed(v)
        # numpy and C pow both give 0**0 == 1
        return self.lam * np.power(v, self.alpha) if isinstance(v, np.ndarray) else self.lam * v**self.alpha

    def to_dict(self):
        return {"kind": "power_law", "lambda": self.lam, "alpha": self.alpha}


@dataclass(frozen=True, eq=False)
class TabulatedLaw:
    """Drag coefficient sampled on a speed grid, interpolated by monotone cubic (PCHIP).

    PCHIP never overshoots the data between neighbouring samples, so positive
    samples give a positive coefficient everywhere on the grid. Evaluation
    outside ``[v[0], v[-1]]`` raises ``DomainError``.
    """

    v: np.ndarray
    phi_values: np.ndarray
    _interp: PchipInterpolator = field(init=False, repr=False)

    def __post_init__(self):
        v = np.array(self.v, dtype=np.float64)
        phi = np.array(self.phi_values, dtype=np.float64)
        if v.ndim != 1 or v.shape != phi.shape or v.size < 2:
            raise ValidationError("tabulated drag needs matching 1-D arrays with at least 2 samples")
        if not (np.all(np.isfinite(v)) and np.all(np.isfinite(phi))):
            raise ValidationError("tabulated drag samples must be finite")
        if v[0] < 0 or np.any(np.diff(v) <= 0):
            raise ValidationError("tabulated speeds must be >= 0 and strictly increasing")
        if np.any(phi <= 0):
            raise ValidationError("tabulated drag coefficients must be strictly positive")
        v.flags.writeable = False
        phi.flags.writeable = False
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "phi_values", phi)
        object.__setattr__(self, "_interp", PchipInterpolator(v, phi, extrapolate=False))

    @classmethod
    def from_function(cls, fn, v):
        v = np.asarray(v, dtype=np.float64)
        return cls(v, np.array([fn(x) for x in v]))

    @property
    def domain(self):
        return float(self.v[0]), float(self.v[-1])

    def phi(self, v):
        v = _check_speed(v)
        lo, hi = self.domain
        if np.any(np.asarray(v) < lo) or np.any(np.asarray(v) > hi):
            raise DomainError(f"speed {v!r} outside tabulated range [{lo}, {hi}]")
        out = self._interp(v)
        return float(out) if np.ndim(out) == 0 else out

    def to_dict(self):
        return {"kind": "tabulated", "v": self.v.tolist(), "phi": self.phi_values.tolist()}


DragLaw = PowerLaw | TabulatedLaw


def _check_speed(v):
    if isinstance(v, np.ndarray):
        if np.any(~(v >= 0)):
            raise DomainError("speeds must be non-negative")
        return v.astype(np.float64, copy=False)
    v = float(v)
    if not v >= 0:
        raise DomainError(f"speed must be non-negative, got {v!r}")
    return v


def phi_eval(law, v):
    """Drag coefficient ``phi(v)`` in kg/s for speed ``v >= 0``."""
    return law.phi(v)


def drag_force(law, v):
    """Signed drag force ``-phi(|v|) * v``; always opposes the motion."""
    if isinstance(v, np.ndarray):
        return -phi_eval(law, np.abs(v)) * v
    v = float(v)
    return -phi_eval(law, abs(v)) * v


@dataclass(frozen=True)
class Scenario:
    """Initial mass, initial speed and drag law of a body moving through resting medium."""

    m0: float
    v0: float
    drag: DragLaw
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "m0", float(self.m0))
        object.__setattr__(self, "v0", float(self.v0))
        if not (math.isfinite(self.m0) and self.m0 > 0):
            raise ValidationError(f"initial mass must be > 0, got {self.m0!r}")
        if not (math.isfinite(self.v0) and self.v0 >= 0):
            raise ValidationError(f"initial velocity must be >= 0, got {self.v0!r}")
        if not isinstance(self.drag, (PowerLaw, TabulatedLaw)):
            raise ValidationError(f"drag must be a PowerLaw or TabulatedLaw, got {type(self.drag).__name__}")

    @property
    def momentum(self):
        return self.m0 * self.v0

    def with_v0(self, v0):
        return Scenario(self.m0, v0, self.drag, self.label)

    def to_dict(self):
        return {"label": self.label, "m0": self.m0, "v0": self.v0, "drag": self.drag.to_dict()}


@dataclass(frozen=True)
class BodyState:
    t: float
    x: float
    m: float
    v: float

    def as_tuple(self):
        return (self.t, self.x, self.m, self.v)


class Method(str, enum.Enum):
    CLOSED_FORM = "closed_form"
    IMPLICIT_INVERSION = "implicit_inversion"
    ODE = "ode"


@dataclass(frozen=True)
class SolutionSeries:
    """A sampled trajectory with the settings that produced it.

    Construction checks: strictly increasing ``t``, nondecreasing ``m``,
    nonincreasing ``v`` and ``m * v == m0 * v0`` to ``MOMENTUM_RTOL``.
    """

    scenario: Scenario
    states: tuple
    method: Method
    tolerances: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "method", Method(self.method))
        if not self.states:
            raise ValidationError("a solution series needs at least one state")
        arr = self.as_array()
        t, _, m, v = arr.T
        if np.any(np.diff(t) <= 0):
            raise ValidationError("series times must be strictly increasing")
        if np.any(np.diff(m) < 0) or np.any(np.diff(v) > 0):
            raise ValidationError("series mass must be nondecreasing and velocity nonincreasing")
        p0 = self.scenario.momentum
        if np.any(np.abs(m * v - p0) > MOMENTUM_RTOL * max(p0, np.finfo(float).tiny)):
            raise ValidationError("series violates momentum conservation m*v = m0*v0")

    def as_array(self):
        """``(n, 4)`` array with columns t, x, m, v."""
        return np.array([s.as_tuple() for s in self.states], dtype=np.float64)

    def __len__(self):
        return len(self.states)

    @classmethod
    def from_columns(cls, scenario, t, x, m, v, method, tolerances=None):
        states = [BodyState(float(a), float(b), float(c), float(d)) for a, b, c, d in zip(t, x, m, v)]
        return cls(scenario, tuple(states), method, dict(tolerances or {}))
