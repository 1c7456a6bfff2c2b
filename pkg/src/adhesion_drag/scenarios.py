"""Drag coefficients for a sphere and the two table-tennis presets.

Ball: radius 2 cm, mass 2.7 g, shape and radius held fixed while it accretes.

* ``table_tennis_water``: linear (Stokes) drag in water at 20 C,
  ``lam = 6 pi eta r`` with ``eta = 1.005e-3 Pa s``.
* ``table_tennis_air``: quadratic drag in air, ``lam = 0.87 r**2`` (kg/m for r
  in metres; the air density is folded into the empirical 0.87).

Coefficients are kept at full precision (the water ball's lam is
3.78876e-4 kg/s, often quoted as 0.000378).
"""

import math
from dataclasses import dataclass

from .errors import ValidationError
from .model import PowerLaw, Scenario

WATER_VISCOSITY_20C = 1.005e-3  # Pa s
QUADRATIC_AIR_COEFFICIENT = 0.87  # kg / m^3, multiplies r^2


@dataclass(frozen=True)
class SphereBody:
    radius: float
    initial_mass: float

    def __post_init__(self):
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise ValidationError(f"radius must be > 0, got {self.radius!r}")
        if not (math.isfinite(self.initial_mass) and self.initial_mass > 0):
            raise ValidationError(f"initial mass must be > 0, got {self.initial_mass!r}")


@dataclass(frozen=True)
class MediumSpec:
    """A resistive medium: a viscosity for Stokes media, or ``None`` for the quadratic air model."""

    description: str
    viscosity: float | None = None

    def __post_init__(self):
        if self.viscosity is not None and not (math.isfinite(self.viscosity) and self.viscosity > 0):
            raise ValidationError(f"viscosity must be > 0, got {self.viscosity!r}")

    def drag_law(self, body):
        if self.viscosity is None:
            return PowerLaw(quadratic_lambda(body.radius), 1.0)
        return PowerLaw(stokes_lambda(self.viscosity, body.radius), 0.0)


TABLE_TENNIS_BALL = SphereBody(radius=0.02, initial_mass=0.0027)
WATER_20C = MediumSpec("water at 20 C", viscosity=WATER_VISCOSITY_20C)
AIR = MediumSpec("air, quadratic drag")


def _positive(name, value):
    value = float(value)
    if not (math.isfinite(value) and value > 0):
        raise ValidationError(f"{name} must be > 0, got {value!r}")
    return value


def stokes_lambda(eta, r):
    """Linear drag coefficient ``6 pi eta r`` (kg/s) of a sphere of radius ``r`` in viscosity ``eta``."""
    return 6.0 * math.pi * _positive("viscosity", eta) * _positive("radius", r)


def quadratic_lambda(r):
    """Quadratic drag coefficient ``0.87 r**2`` (kg/m) of a sphere in air."""
    return QUADRATIC_AIR_COEFFICIENT * _positive("radius", r) ** 2


PRESETS = {
    "table_tennis_water": WATER_20C,
    "table_tennis_air": AIR,
}


def preset(name, v0):
    """Scenario for a named preset launched at ``v0`` m/s."""
    try:
        medium = PRESETS[name]
    except KeyError:
        raise ValidationError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    body = TABLE_TENNIS_BALL
    return Scenario(body.initial_mass, v0, medium.drag_law(body), label=name)
