"""Recover power-law drag parameters from sampled masses.

The forward model is the closed-form mass as a function of time or of
distance. Parameters are fitted as ``(log lam, alpha)`` by damped
Gauss-Newton with a forward-difference Jacobian, keeping ``lam > 0``
without constraints and clamping ``alpha`` at 0.
"""

import enum
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .closed_form import log1p_ratio
from .errors import RangeExceededError, UnidentifiableError, ValidationError

log = logging.getLogger(__name__)

MAX_ITERATIONS = 200
MAX_HALVINGS = 30
STEP_RTOL = 1e-10
GRADIENT_TOL = 1e-6
ALPHA_ZERO_TOL = 1e-6
_FD_STEP = math.sqrt(np.finfo(float).eps)


class SampleKind(str, enum.Enum):
    TIME = "t"
    POSITION = "x"


@dataclass(frozen=True)
class MassSample:
    """One observed mass at a time (``kind="t"``) or distance (``kind="x"``)."""

    independent: float
    mass: float
    kind: SampleKind = SampleKind.TIME

    def __post_init__(self):
        object.__setattr__(self, "kind", SampleKind(self.kind))
        if not (math.isfinite(self.independent) and self.independent >= 0):
            raise ValidationError(f"sample {self.kind.value} must be finite and >= 0, got {self.independent!r}")
        if not (math.isfinite(self.mass) and self.mass > 0):
            raise ValidationError(f"sample mass must be finite and > 0, got {self.mass!r}")


@dataclass(frozen=True)
class FitResult:
    lam: float
    alpha: float
    rms_residual: float
    iterations: int
    converged: bool
    gradient_norm: float = math.nan
    notes: tuple = field(default_factory=tuple)

    def to_dict(self):
        return {
            "lambda": self.lam,
            "alpha": self.alpha,
            "rms_residual": self.rms_residual,
            "iterations": self.iterations,
            "converged": self.converged,
            "gradient_norm": self.gradient_norm,
            "notes": list(self.notes),
        }


def _predict(kind, z, m0, v0, log_lam, alpha):
    """Closed-form mass for any real ``alpha`` (NaN where the model is undefined).

    Negative ``alpha`` is reachable only through finite-difference probes.
    """
    with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
        lam = np.exp(log_lam)
        if kind is SampleKind.TIME:
            return m0 * np.exp(log1p_ratio(alpha, lam * v0**alpha / m0 * z))
        return m0 * np.exp(log1p_ratio(alpha - 1, lam * z * v0 ** (alpha - 1) / m0))


def _unpack(samples):
    samples = list(samples)
    if len(samples) < 3:
        raise ValidationError(f"need at least 3 samples, got {len(samples)}")
    kinds = {s.kind for s in samples}
    if len(kinds) != 1:
        raise ValidationError("samples must all be time samples or all be position samples")
    z = np.array([s.independent for s in samples])
    m = np.array([s.mass for s in samples])
    if np.any(np.diff(z) <= 0):
        raise ValidationError("samples must be strictly increasing in the independent variable")
    return kinds.pop(), z, m


def residuals(samples, m0, v0, lam, alpha):
    """Observed minus predicted mass for each sample."""
    samples = list(samples)
    if not samples:
        return np.empty(0)
    kind = SampleKind(samples[0].kind)
    z = np.array([s.independent for s in samples])
    m = np.array([s.mass for s in samples])
    if kind is SampleKind.POSITION and alpha < 1:
        limit = m0 * v0 ** (1 - alpha) / (lam * (1 - alpha))
        if np.any(z >= limit):
            raise RangeExceededError(f"position samples reach beyond the finite range {limit!r} m", max_range=limit)
    return m - _predict(kind, z, m0, v0, math.log(lam), alpha)


def _jacobian(kind, z, m0, v0, p, pred):
    """Forward-difference Jacobian of the predicted masses w.r.t. ``(log lam, alpha)``."""
    jac = np.empty((z.size, 2))
    for j in range(2):
        h = _FD_STEP * max(1.0, abs(p[j]))
        for sign in (1.0, -1.0):
            q = p.copy()
            q[j] += sign * h
            col = (_predict(kind, z, m0, v0, q[0], q[1]) - pred) / (sign * h)
            if np.all(np.isfinite(col)):
                break
        jac[:, j] = col
    return jac


def _projected_gradient(jac, r, alpha, m_obs):
    """Scale-free gradient norm |J^T r| / (|J| |m|), ignoring a blocked alpha direction."""
    grad = jac.T @ r
    # descent moves alpha along +grad[1]; that is blocked at the bound
    if alpha <= 0 and grad[1] < 0:
        grad[1] = 0.0
    denom = np.linalg.norm(jac) * np.linalg.norm(m_obs)
    return float(np.linalg.norm(grad) / denom) if denom > 0 else 0.0


def fit_power_law(samples, m0, v0, init=(1e-4, 0.5)):
    """Least-squares ``(lam, alpha)`` for the observed masses.

    Raises ``UnidentifiableError`` when all masses coincide. Exhausting
    the iteration budget is reported through ``converged=False``.
    """
    kind, z, m_obs = _unpack(samples)
    if not (m0 > 0 and v0 > 0):
        raise ValidationError("m0 and v0 must be > 0")
    if np.ptp(m_obs) == 0:
        raise UnidentifiableError("all sample masses are equal; the drag parameters cannot be identified")
    lam0, alpha0 = init
    if not (lam0 > 0 and alpha0 >= 0):
        raise ValidationError(f"initial guess needs lambda > 0 and alpha >= 0, got {init!r}")

    p = np.array([math.log(lam0), float(alpha0)])

    def evaluate(q):
        pred = _predict(kind, z, m0, v0, q[0], q[1])
        r = m_obs - pred
        with np.errstate(over="ignore", invalid="ignore"):
            ssr = float(r @ r)
        return pred, r, ssr if math.isfinite(ssr) else math.inf

    pred, r, ssr = evaluate(p)
    # a position model can be undefined at the guess (samples beyond its finite range);
    # the range grows as lambda shrinks
    for _ in range(60):
        if math.isfinite(ssr):
            break
        p[0] -= math.log(10.0)
        pred, r, ssr = evaluate(p)
    else:
        raise ValidationError(f"the model is undefined at every lambda tried from the initial guess {init!r}")
    converged = False
    grad_norm = math.nan
    iterations = 0
    for iterations in range(1, MAX_ITERATIONS + 1):
        jac = _jacobian(kind, z, m0, v0, p, pred)
        if not np.all(np.isfinite(jac)):
            break
        grad_norm = _projected_gradient(jac, r, p[1], m_obs)
        step, *_ = np.linalg.lstsq(jac, r, rcond=None)
        accepted = False
        for k in range(MAX_HALVINGS + 1):
            trial = p + step * 0.5**k
            trial[1] = max(trial[1], 0.0)
            t_pred, t_r, t_ssr = evaluate(trial)
            if t_ssr <= ssr:
                accepted = True
                break
        if not accepted:
            # no descent along the Gauss-Newton direction: at a (numerical) minimum
            converged = grad_norm <= GRADIENT_TOL
            break
        moved = np.linalg.norm(trial - p) / max(1.0, np.linalg.norm(p))
        p, pred, r, ssr = trial, t_pred, t_r, t_ssr
        if moved < STEP_RTOL:
            jac = _jacobian(kind, z, m0, v0, p, pred)
            grad_norm = _projected_gradient(jac, r, p[1], m_obs)
            converged = grad_norm <= GRADIENT_TOL
            break

    notes = []
    if kind is SampleKind.TIME and p[1] < ALPHA_ZERO_TOL:
        notes.append("alpha ~ 0: time-series masses do not depend on v0, so v0 is not identifiable")
        log.warning(notes[-1])
    return FitResult(
        lam=math.exp(p[0]),
        alpha=float(p[1]),
        rms_residual=math.sqrt(ssr / z.size),
        iterations=iterations,
        converged=bool(converged),
        gradient_norm=grad_norm,
        notes=tuple(notes),
    )
