"""Adaptive Dormand-Prince 5(4) integration with 4th-order dense output."""

import math

import numpy as np

from .. import _jit
from ..errors import DomainError, NonConvergenceError, SingularityError, ValidationError
from .config import DEFAULT_CONFIG, OdeSolution

C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
A = np.array([
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1 / 5, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3 / 40, 9 / 40, 0.0, 0.0, 0.0, 0.0],
    [44 / 45, -56 / 15, 32 / 9, 0.0, 0.0, 0.0],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729, 0.0, 0.0],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656, 0.0],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
])
# 5th-order weights (FSAL: the 7th stage is f at the new point)
B = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
# difference between the 5th- and embedded 4th-order solutions
E = np.array([71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40])
# dense output: y(t + th*h) = y + h * K^T (P @ [th, th^2, th^3, th^4])
P = np.array([
    [1.0, -8048581381 / 2820520608, 8663915743 / 2820520608, -12715105075 / 11282082432],
    [0.0, 0.0, 0.0, 0.0],
    [0.0, 131558114200 / 32700410799, -68118460800 / 10900136933, 87487479700 / 32700410799],
    [0.0, -1754552775 / 470086768, 14199869525 / 1410260304, -10690763975 / 1880347072],
    [0.0, 127303824393 / 49829197408, -318862633887 / 49829197408, 701980252875 / 199316789632],
    [0.0, -282668133 / 205662961, 2019193451 / 616988883, -1453857185 / 822651844],
    [0.0, 40617522 / 29380423, -110615467 / 29380423, 69997945 / 29380423],
])

STATUS_OK = 0
STATUS_MAX_STEPS = 1
STATUS_UNDERFLOW = 2
STATUS_NONFINITE = 3

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 5.0


def dopri5_driver(rhs, jitable=False):
    """Build ``driver(params, t0, y0, t_eval, rel_tol, abs_tol, h0, max_steps)`` with ``rhs`` built in.

    The driver integrates from t0 through increasing ``t_eval`` and returns
    (samples, status, last_t, evaluations, steps); rows of ``samples`` past a
    failure point are NaN. With ``jitable`` the driver is registered for use
    inside compiled kernels, where the call to ``rhs`` is compiled in.
    """

    def driver(params, t0, y0, t_eval, rel_tol, abs_tol, h0, max_steps):
        n = y0.shape[0]
        n_out = t_eval.shape[0]
        out = np.full((n_out, n), np.nan)
        K = np.empty((7, n))
        y = y0.copy()
        y_new = np.empty(n)
        stage = np.empty(n)
        err = np.empty(n)
        t = t0
        t_end = t_eval[n_out - 1] if n_out > 0 else t0
        k_out = 0
        while k_out < n_out and t_eval[k_out] <= t0:
            out[k_out, :] = y0
            k_out += 1
        if k_out == n_out:
            return out, STATUS_OK, t, 0, 0

        rhs(t, y, params, K[0])
        nfev = 1
        for i in range(n):
            if not math.isfinite(K[0, i]):
                return out, STATUS_NONFINITE, t, nfev, 0
        h = h0
        steps = 0
        while k_out < n_out:
            if steps >= max_steps:
                return out, STATUS_MAX_STEPS, t, nfev, steps
            if t + h > t_end:
                h = t_end - t
            if h <= 16.0 * 2.220446049250313e-16 * max(abs(t), 1e-300):
                return out, STATUS_UNDERFLOW, t, nfev, steps
            for s in range(1, 7):
                for i in range(n):
                    acc = 0.0
                    for j in range(s):
                        acc += A[s, j] * K[j, i]
                    stage[i] = y[i] + h * acc
                rhs(t + C[s] * h, stage, params, K[s])
            nfev += 6
            # stage 7 was evaluated at the 5th-order solution, which is y_new
            for i in range(n):
                y_new[i] = stage[i]
            err_norm = 0.0
            finite = True
            for i in range(n):
                acc = 0.0
                for j in range(7):
                    acc += E[j] * K[j, i]
                if not (math.isfinite(y_new[i]) and math.isfinite(K[6, i])):
                    finite = False
                scale = max(rel_tol * max(abs(y[i]), abs(y_new[i])), abs_tol)
                ratio = abs(h * acc) / scale
                if ratio > err_norm:
                    err_norm = ratio
            steps += 1
            if not finite or not math.isfinite(err_norm):
                # treat as a rejected step; the step-size floor above reports persistent failure
                h *= _MIN_FACTOR
                continue
            if err_norm > 1.0:
                h *= max(_MIN_FACTOR, _SAFETY * err_norm ** -0.2)
                continue
            t_new = t + h
            while k_out < n_out and t_eval[k_out] <= t_new:
                if t_eval[k_out] == t_new:
                    for i in range(n):
                        out[k_out, i] = y_new[i]
                else:
                    theta = (t_eval[k_out] - t) / h
                    q0 = theta
                    q1 = theta * theta
                    q2 = q1 * theta
                    q3 = q2 * theta
                    for i in range(n):
                        acc = 0.0
                        for j in range(7):
                            acc += K[j, i] * (P[j, 0] * q0 + P[j, 1] * q1 + P[j, 2] * q2 + P[j, 3] * q3)
                        out[k_out, i] = y[i] + h * acc
                k_out += 1
            t = t_new
            for i in range(n):
                y[i] = y_new[i]
                K[0, i] = K[6, i]
            if err_norm == 0.0:
                h *= _MAX_FACTOR
            else:
                h *= min(_MAX_FACTOR, _SAFETY * err_norm ** -0.2)
        return out, STATUS_OK, t, nfev, steps

    return _jit.helper(driver) if jitable else driver


def integrate_ode(f, y0, t_span, cfg=DEFAULT_CONFIG, t_eval=None, params=None):
    """Integrate ``dy/dt = f(t, y)`` over ``t_span`` and sample at ``t_eval``.

    ``f`` is a Python callable returning the derivative, or
    ``rhs(t, y, params, out)`` when ``params`` is given. Callbacks with a
    registered compiled kernel (see :func:`adhesion_drag._jit.register_bound`)
    run entirely in machine code; everything else runs as Python. The embedded error
    of every accepted step is at most ``max(rel_tol * |y|, abs_tol)`` per
    component. Sample points are reached through the dense interpolant, so
    they never constrain the step size.

    Raises
    ------
    SingularityError
        The step size underflowed (``last_t`` is the last accepted time).
    NonConvergenceError
        The step budget, ``max_evaluations // 6``, was exhausted.
    DomainError
        ``f`` produced a non-finite derivative at the initial state.
    """
    t0, t1 = (float(v) for v in t_span)
    if not (math.isfinite(t0) and math.isfinite(t1)) or t1 < t0:
        raise ValidationError(f"t_span must be finite and increasing, got {t_span!r}")
    y0 = np.array(y0, dtype=np.float64, ndmin=1)
    if t_eval is None:
        t_eval = np.array([t0, t1])
    t_eval = np.ascontiguousarray(t_eval, dtype=np.float64)
    if t_eval.size and (t_eval[0] < t0 or t_eval[-1] > t1 or np.any(np.diff(t_eval) <= 0)):
        raise ValidationError("t_eval must be strictly increasing and inside t_span")

    if params is None:
        params = np.empty(0)

        def rhs(t, y, p, out):
            out[:] = f(t, y)

    else:
        params = np.ascontiguousarray(params, dtype=np.float64)
        rhs = _jit.python_version(f)

    h0 = 1e-3 * (t1 - t0) if t1 > t0 else 1.0
    max_steps = max(1, int(cfg.max_evaluations) // 6)
    settings = (t0, y0, t_eval, cfg.ode_rel_tol(), cfg.abs_tol, h0, max_steps)
    driver = _jit.bound_kernel(f) or dopri5_driver(rhs)
    y, status, last_t, nfev, steps = driver(params, *settings)
    if status == STATUS_UNDERFLOW:
        raise SingularityError(
            f"step size underflow at t={float(last_t)!r}; solution is likely singular there",
            last_t=float(last_t), best_estimate=y,
        )
    if status == STATUS_MAX_STEPS:
        raise NonConvergenceError(f"ODE step budget exhausted at t={float(last_t)!r}", best_estimate=y)
    if status == STATUS_NONFINITE:
        raise DomainError(f"right-hand side is not finite at t={float(last_t)!r}")
    return OdeSolution(t=t_eval, y=y, evaluations=int(nfev), steps=int(steps))
