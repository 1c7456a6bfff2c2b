"""Closed-form mass, velocity and position for power-law drag.

With ``k = lam * v0**alpha / m0`` the mass obeys

    alpha == 0:  m(t) = m0 * exp(lam * t / m0)
    alpha  > 0:  m(t) = m0 * (1 + alpha * k * t)**(1 / alpha)

and, along the path, with ``c = lam * x * v0**(alpha - 1) / m0``,

    alpha == 1:  m(x) = m0 * exp(lam * x / m0)
    alpha != 1:  m(x) = m0 * (1 + (alpha - 1) * c)**(1 / (alpha - 1))

Powers are evaluated as ``exp(log1p(a * z) / a)`` so that both branches stay
accurate as the exponent approaches the exact-equality branch points.
Inputs may be scalars or numpy arrays.
"""

import math

import numpy as np

from .errors import (
    DegenerateScenarioError,
    DomainError,
    NoSolutionError,
    RangeExceededError,
    UnsupportedLawError,
)
from .model import Method, PowerLaw, SolutionSeries

LN2 = math.log(2.0)


# below this |a * z| the ratio helpers switch to a 4-term series (truncation < 1e-16)
_SERIES_CUTOFF = 1e-4


def log1p_ratio(a, z):
    """``log1p(a * z) / a``, also for ``a`` so small that ``a * z`` underflows (limit ``z``)."""
    z = np.asarray(z, dtype=np.float64)
    with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
        w = a * z
        series = z * (1 - w / 2 + w * w / 3 - w * w * w / 4)
        direct = np.log1p(w) / a if a != 0 else z
    return np.where(np.abs(w) < _SERIES_CUTOFF, series, direct)


def expm1_ratio(a, z):
    """``expm1(a * z) / a``, also for ``a`` so small that ``a * z`` underflows (limit ``z``)."""
    z = np.asarray(z, dtype=np.float64)
    with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
        w = a * z
        series = z * (1 + w / 2 + w * w / 6 + w * w * w / 24)
        direct = np.expm1(w) / a if a != 0 else z
    return np.where(np.abs(w) < _SERIES_CUTOFF, series, direct)


def _power_law(s):
    if not isinstance(s.drag, PowerLaw):
        raise UnsupportedLawError(
            f"closed forms need a power-law drag, got {type(s.drag).__name__}; use the implicit solver"
        )
    return s.drag


def _as_nonneg(value, name):
    arr = np.asarray(value, dtype=np.float64)
    if np.any(~np.isfinite(arr)) or np.any(arr < 0):
        raise DomainError(f"{name} must be finite and >= 0, got {value!r}")
    return arr


def _ret(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


def _require_motion(s):
    if s.v0 == 0:
        raise DegenerateScenarioError("v0 = 0: the body never moves, position-based quantities are undefined")


def log_mass_ratio_at_time(s, t):
    """``ln(m(t) / m0)``."""
    law = _power_law(s)
    t = _as_nonneg(t, "t")
    if law.alpha == 0:
        return _ret(law.lam * t / s.m0)
    k = law.lam * s.v0**law.alpha / s.m0
    return _ret(log1p_ratio(law.alpha, k * t))


def mass_at_time_closed(s, t):
    """Mass at time ``t``; equals ``m0`` at ``t = 0`` and grows without bound if ``phi(v0) > 0``."""
    return _ret(s.m0 * np.exp(log_mass_ratio_at_time(s, t)))


def max_range(s):
    """Total travel distance: finite ``m0 * v0**(1-alpha) / (lam * (1-alpha))`` for alpha < 1, else ``inf``."""
    law = _power_law(s)
    _require_motion(s)
    if law.alpha < 1:
        return s.m0 * s.v0 ** (1 - law.alpha) / (law.lam * (1 - law.alpha))
    return math.inf


def mass_at_position_closed(s, x):
    """Mass after travelling ``x``.

    Raises ``RangeExceededError`` for ``x >= max_range(s)`` (alpha < 1) and
    ``DegenerateScenarioError`` when ``v0 == 0``.
    """
    law = _power_law(s)
    _require_motion(s)
    x = _as_nonneg(x, "x")
    alpha = law.alpha
    if alpha == 1:
        return _ret(s.m0 * np.exp(law.lam * x / s.m0))
    if alpha < 1:
        limit = max_range(s)
        if np.any(x >= limit):
            raise RangeExceededError(f"x={x!r} is at or beyond the finite range {limit!r} m", max_range=limit)
    c = law.lam * x * s.v0 ** (alpha - 1) / s.m0
    return _ret(s.m0 * np.exp(log1p_ratio(alpha - 1, c)))


def velocity_at_time(s, t, mass_source=None):
    """Speed ``m0 * v0 / m(t)`` from momentum conservation.

    ``mass_source(s, t)`` supplies the mass; the closed form by default.
    """
    if mass_source is None:
        mass_source = mass_at_time_closed
    m = np.asarray(mass_source(s, t), dtype=np.float64)
    return _ret(s.m0 * s.v0 / m)


def _position_from_log_ratio(s, law, log_ratio):
    # x = m0 v0^(1-a) / lam * (1 - (m0/m)^(1-a)) / (1-a), and its a -> 1 limit
    if law.alpha == 1:
        return s.m0 * log_ratio / law.lam
    b = 1 - law.alpha
    return s.m0 * s.v0**b / law.lam * expm1_ratio(-b, log_ratio)


def position_at_time(s, t):
    """Distance travelled by time ``t``; identically 0 when ``v0 == 0``."""
    law = _power_law(s)
    t = _as_nonneg(t, "t")
    if s.v0 == 0:
        return _ret(np.zeros_like(t))
    return _ret(_position_from_log_ratio(s, law, np.asarray(log_mass_ratio_at_time(s, t))))


def time_at_mass_closed(s, m):
    """Inverse of :func:`mass_at_time_closed` for ``m >= m0``."""
    law = _power_law(s)
    m = np.asarray(m, dtype=np.float64)
    if np.any(~(m >= s.m0)):
        raise DomainError(f"target mass must be >= m0={s.m0!r}")
    log_ratio = np.log(m / s.m0)
    if law.alpha == 0:
        return _ret(s.m0 * log_ratio / law.lam)
    phi0 = law.lam * s.v0**law.alpha
    if phi0 == 0:
        if np.any(m > s.m0):
            raise NoSolutionError("phi(v0) = 0: the mass never grows")
        return _ret(np.zeros_like(m))
    return _ret(s.m0 / phi0 * expm1_ratio(law.alpha, log_ratio))


def doubling_time(s):
    """Time at which the mass reaches ``2 * m0``."""
    law = _power_law(s)
    if law.alpha == 0:
        return s.m0 * LN2 / law.lam
    phi0 = law.lam * s.v0**law.alpha
    if phi0 == 0:
        raise NoSolutionError("phi(v0) = 0: the mass never doubles")
    return s.m0 / phi0 * float(expm1_ratio(law.alpha, LN2))


def doubling_distance(s):
    """Distance after which the mass reaches ``2 * m0`` (below ``max_range`` when alpha < 1)."""
    law = _power_law(s)
    _require_motion(s)
    return float(_position_from_log_ratio(s, law, LN2))


def closed_form_series(s, t):
    """Closed-form trajectory sampled at times ``t``."""
    t = np.asarray(t, dtype=np.float64)
    m = np.asarray(mass_at_time_closed(s, t))
    x = np.asarray(position_at_time(s, t))
    return SolutionSeries.from_columns(s, t, x, m, s.m0 * s.v0 / m, Method.CLOSED_FORM)


def closed_form_series_in_x(s, x):
    """Closed-form trajectory sampled at positions ``x``."""
    x = np.asarray(x, dtype=np.float64)
    m = np.asarray(mass_at_position_closed(s, x))
    t = np.asarray(time_at_mass_closed(s, m))
    return SolutionSeries.from_columns(s, t, x, m, s.m0 * s.v0 / m, Method.CLOSED_FORM)
