"""Implicit (quadrature) solutions, their inversion, and direct ODE integration.

Works for any drag law. Power laws route through compiled integrands; a
tabulated law runs through the same kernels as plain Python.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import _powerlaw
from .closed_form import closed_form_series, closed_form_series_in_x, max_range
from .errors import (
    DegenerateScenarioError,
    DomainError,
    NoSolutionError,
    NonConvergenceError,
    RangeExceededError,
    ValidationError,
)
from .model import Method, PowerLaw, SolutionSeries
from .numerics import DEFAULT_CONFIG, SolverConfig, find_root_monotone, integrate_1d, integrate_ode

#: bracket expansion gives up past this mass ratio
MAX_MASS_RATIO = 2.0**60
#: position inversion refuses targets this close (relatively) to a finite range
RANGE_GUARD = 1e-9


def _params(s):
    return np.array([s.m0, s.v0, s.drag.lam, s.drag.alpha])


def _integrands(s):
    """(time, position) integrands in the log-mass variable plus their params."""
    if isinstance(s.drag, PowerLaw):
        return _powerlaw.time_integrand, _powerlaw.position_integrand, _params(s)
    phi, v0 = s.drag.phi, s.v0

    def time_f(u, p):
        return 1.0 / phi(v0 * math.exp(-u))

    def pos_f(u, p):
        return math.exp(-u) / phi(v0 * math.exp(-u))

    return time_f, pos_f, np.empty(0)


def _mass_grows(s):
    return s.drag.phi(s.v0) > 0


def _check_target(s, m_target):
    m_target = float(m_target)
    if not (math.isfinite(m_target) and m_target >= s.m0):
        raise DomainError(f"target mass must be finite and >= m0={s.m0!r}, got {m_target!r}")
    return m_target


def _log_ratio(s, m):
    return math.log(m / s.m0)


def _integrate(f, params, lo, hi, cfg):
    try:
        return integrate_1d(f, lo, hi, cfg, params=params).value
    except DomainError as exc:
        raise DomainError(f"drag coefficient vanishes or is undefined on the integration path: {exc}") from exc


def time_for_mass(s, m_target, cfg=DEFAULT_CONFIG):
    """Time at which the mass reaches ``m_target``, from the implicit time integral."""
    m_target = _check_target(s, m_target)
    if m_target == s.m0:
        return 0.0
    if not _mass_grows(s):
        raise NoSolutionError("phi(v0) = 0: the mass stays at m0 forever")
    time_f, _, params = _integrands(s)
    return s.m0 * _integrate(time_f, params, 0.0, _log_ratio(s, m_target), cfg)


def position_for_mass(s, m_target, cfg=DEFAULT_CONFIG):
    """Distance travelled when the mass reaches ``m_target``, from the implicit position integral."""
    if s.v0 == 0:
        raise DegenerateScenarioError("v0 = 0: the body never moves")
    m_target = _check_target(s, m_target)
    if m_target == s.m0:
        return 0.0
    _, pos_f, params = _integrands(s)
    return s.m0 * s.v0 * _integrate(pos_f, params, 0.0, _log_ratio(s, m_target), cfg)


def _invert(s, target, integrand, params, scale, cfg):
    """Mass ``m`` with ``scale * int_0^ln(m/m0) integrand = target``.

    Expands ``[m0, m0 * growth]`` geometrically until it overshoots, then
    refines with the bracketed root finder. Each trial integrates only from
    the lower bracket end, whose value is kept.
    """
    growth = cfg.bracket_growth
    lo, value_lo = s.m0, 0.0
    hi = s.m0 * growth
    while True:
        value_hi = value_lo + scale * _integrate(integrand, params, _log_ratio(s, lo), _log_ratio(s, hi), cfg)
        if value_hi >= target:
            break
        if hi >= MAX_MASS_RATIO * s.m0:
            raise NonConvergenceError(
                f"target {target!r} not bracketed below mass ratio 2^60", best_estimate=hi
            )
        lo, value_lo = hi, value_hi
        hi = min(hi * growth, MAX_MASS_RATIO * s.m0)
    u_lo = _log_ratio(s, lo)

    def residual(m):
        return value_lo + scale * _integrate(integrand, params, u_lo, _log_ratio(s, m), cfg) - target

    return find_root_monotone(residual, lo, hi, cfg)


def mass_at_time_numeric(s, t, cfg=DEFAULT_CONFIG):
    """Mass at time ``t`` by inverting the implicit time integral."""
    t = float(t)
    if not (math.isfinite(t) and t >= 0):
        raise DomainError(f"t must be finite and >= 0, got {t!r}")
    if t == 0 or not _mass_grows(s):
        return s.m0
    time_f, _, params = _integrands(s)
    return _invert(s, t, time_f, params, s.m0, cfg)


def mass_at_position_numeric(s, x, cfg=DEFAULT_CONFIG):
    """Mass after travelling ``x`` by inverting the implicit position integral."""
    if s.v0 == 0:
        raise DegenerateScenarioError("v0 = 0: the body never moves")
    x = float(x)
    if not (math.isfinite(x) and x >= 0):
        raise DomainError(f"x must be finite and >= 0, got {x!r}")
    if isinstance(s.drag, PowerLaw):
        limit = max_range(s)
        if x >= limit * (1 - RANGE_GUARD):
            raise RangeExceededError(f"x={x!r} is at or too close to the finite range {limit!r} m", max_range=limit)
    if x == 0:
        return s.m0
    _, pos_f, params = _integrands(s)
    return _invert(s, x, pos_f, params, s.m0 * s.v0, cfg)


@dataclass(frozen=True)
class TrajectoryRequest:
    """What to integrate: a scenario, one horizon (time or distance) and a sampling."""

    scenario: object
    t_end: float | None = None
    x_end: float | None = None
    sample_count: int = 21
    method: Method = Method.ODE
    cfg: SolverConfig = field(default_factory=SolverConfig)

    def __post_init__(self):
        object.__setattr__(self, "method", Method(self.method))
        if (self.t_end is None) == (self.x_end is None):
            raise ValidationError("give exactly one of t_end and x_end")
        end = self.t_end if self.t_end is not None else self.x_end
        if not (math.isfinite(end) and end > 0):
            raise ValidationError(f"horizon must be finite and > 0, got {end!r}")
        if int(self.sample_count) != self.sample_count or self.sample_count < 2:
            raise ValidationError(f"sample_count must be an integer >= 2, got {self.sample_count!r}")
        if self.x_end is not None:
            s = self.scenario
            if s.v0 == 0:
                raise DegenerateScenarioError("a distance horizon needs v0 > 0")
            if isinstance(s.drag, PowerLaw) and self.x_end >= max_range(s):
                raise RangeExceededError(
                    f"x_end={self.x_end!r} is at or beyond the finite range {max_range(s)!r} m",
                    max_range=max_range(s),
                )

    @property
    def grid(self):
        end = self.t_end if self.t_end is not None else self.x_end
        return np.linspace(0.0, end, int(self.sample_count))


def _ode_functions(s):
    """(rhs_time, rhs_position, rhs_constant_mass, params) for ``s``."""
    if isinstance(s.drag, PowerLaw):
        return _powerlaw.rhs_time, _powerlaw.rhs_position, _powerlaw.rhs_constant_mass, _params(s)
    phi, m0, p0 = s.drag.phi, s.m0, s.m0 * s.v0

    def rhs_time(t, y, p, out):
        v = p0 / y[0]
        out[0] = phi(v) * y[0] / m0
        out[1] = v

    def rhs_position(x, y, p, out):
        v = p0 / y[0]
        out[0] = phi(v) * y[0] * y[0] / (m0 * p0)
        out[1] = y[0] / p0

    def rhs_constant_mass(t, y, p, out):
        out[0] = -phi(max(y[0], 0.0)) * y[0] / m0

    return rhs_time, rhs_position, rhs_constant_mass, np.empty(0)


def integrate_trajectory(req):
    """Sample the trajectory of ``req.scenario`` over the requested horizon.

    ``Method.ODE`` integrates ``dm/dt = phi(v) m / m0, dx/dt = v`` (or the
    distance-parametrised form), ``Method.IMPLICIT_INVERSION`` inverts the
    quadrature solutions pointwise, and ``Method.CLOSED_FORM`` evaluates the
    power-law formulas. Speeds are always reported as ``m0 v0 / m``.
    """
    s, cfg, grid = req.scenario, req.cfg, req.grid
    tolerances = cfg.as_dict()
    if req.method is Method.CLOSED_FORM:
        return closed_form_series(s, grid) if req.t_end is not None else closed_form_series_in_x(s, grid)

    if req.method is Method.ODE:
        rhs_t, rhs_x, _, params = _ode_functions(s)
        if req.t_end is not None:
            sol = integrate_ode(rhs_t, [s.m0, 0.0], (0.0, req.t_end), cfg, t_eval=grid, params=params)
            t, m, x = grid, sol.y[:, 0], sol.y[:, 1]
        else:
            sol = integrate_ode(rhs_x, [s.m0, 0.0], (0.0, req.x_end), cfg, t_eval=grid, params=params)
            x, m, t = grid, sol.y[:, 0], sol.y[:, 1]
        tolerances["ode_rel_tol"] = cfg.ode_rel_tol()
    else:
        if req.t_end is not None:
            t = grid
            m = np.array([mass_at_time_numeric(s, ti, cfg) for ti in t])
            x = np.zeros_like(m) if s.v0 == 0 else np.array([position_for_mass(s, mi, cfg) for mi in m])
        else:
            x = grid
            m = np.array([mass_at_position_numeric(s, xi, cfg) for xi in x])
            t = np.array([time_for_mass(s, mi, cfg) for mi in m])
        tolerances["quad_rel_tol"] = cfg.quad_rel_tol()
    return SolutionSeries.from_columns(s, t, x, m, s.m0 * s.v0 / m, req.method, tolerances)


def constant_mass_velocity(s, t, cfg=DEFAULT_CONFIG):
    """Speed of a constant-mass ``m0`` body under drag, ``m0 dv/dt = -phi(v) v``.

    ``t`` may be a scalar or an increasing array of sample times.
    """
    times = np.atleast_1d(np.asarray(t, dtype=np.float64))
    if np.any(~np.isfinite(times)) or np.any(times < 0):
        raise DomainError("times must be finite and >= 0")
    _, _, rhs_v, params = _ode_functions(s)
    t_end = float(times.max()) if times.size else 0.0
    if t_end == 0:
        v = np.full(times.shape, s.v0)
    else:
        v = integrate_ode(rhs_v, [s.v0], (0.0, t_end), cfg, t_eval=times, params=params).y[:, 0]
    return float(v[0]) if np.ndim(t) == 0 else v


__all__ = [
    "MAX_MASS_RATIO",
    "RANGE_GUARD",
    "TrajectoryRequest",
    "constant_mass_velocity",
    "integrate_trajectory",
    "mass_at_position_numeric",
    "mass_at_time_numeric",
    "position_for_mass",
    "time_for_mass",
]
