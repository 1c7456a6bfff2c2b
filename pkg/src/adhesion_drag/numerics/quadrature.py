"""Globally adaptive Gauss-Kronrod (7, 15) quadrature."""

import math

import numpy as np

from .. import _jit
from ..errors import DomainError, NonConvergenceError, ValidationError
from .config import DEFAULT_CONFIG, QuadratureResult

# Kronrod abscissae (positive half, descending); odd indices are the Gauss nodes.
XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
# Gauss weights for XGK[1], XGK[3], XGK[5] and the centre.
WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

STATUS_OK = 0
STATUS_BUDGET = 1
STATUS_NONFINITE = 2


def gk15_driver(f, jitable=False):
    """Build ``driver(params, a, b, rel_tol, abs_tol, max_evaluations)`` with ``f(x, params)`` built in.

    The driver bisects the panel with the largest error until the summed
    estimate meets tolerance and returns (value, error_estimate, evaluations,
    status). With ``jitable`` it is registered for use inside compiled
    kernels, where the calls to ``f`` are compiled in.
    """

    def panel(params, a, b):
        # Kronrod estimate on [a, b], |K15 - G7| and whether every sample was finite
        centre = 0.5 * (a + b)
        half = 0.5 * (b - a)
        fc = f(centre, params)
        kron = WGK[7] * fc
        gauss = WG[3] * fc
        finite = math.isfinite(fc)
        for j in range(7):
            dx = half * XGK[j]
            pair = f(centre - dx, params) + f(centre + dx, params)
            finite = finite and math.isfinite(pair)
            kron += WGK[j] * pair
            if j % 2 == 1:
                gauss += WG[j // 2] * pair
        return kron * half, abs((kron - gauss) * half), finite

    def driver(params, a, b, rel_tol, abs_tol, max_evaluations):
        limit = max(1, (max_evaluations - 15) // 30 + 1)
        lo = np.empty(limit)
        hi = np.empty(limit)
        val = np.empty(limit)
        err = np.empty(limit)
        val[0], err[0], finite = panel(params, a, b)
        lo[0] = a
        hi[0] = b
        n = 1
        neval = 15
        while True:
            if not finite:
                return math.nan, math.inf, neval, STATUS_NONFINITE
            total = 0.0
            total_err = 0.0
            worst = 0
            for i in range(n):
                total += val[i]
                total_err += err[i]
                if err[i] > err[worst]:
                    worst = i
            if total_err <= max(rel_tol * abs(total), abs_tol):
                return total, total_err, neval, STATUS_OK
            if n >= limit or neval + 30 > max_evaluations:
                return total, total_err, neval, STATUS_BUDGET
            left = lo[worst]
            right = hi[worst]
            mid = 0.5 * (left + right)
            if not (left < mid < right):
                # panel cannot be split further in floating point
                return total, total_err, neval, STATUS_BUDGET
            v1, e1, ok1 = panel(params, left, mid)
            v2, e2, ok2 = panel(params, mid, right)
            neval += 30
            finite = ok1 and ok2
            hi[worst] = mid
            val[worst] = v1
            err[worst] = e1
            lo[n] = mid
            hi[n] = right
            val[n] = v2
            err[n] = e2
            n += 1

    if jitable:
        _jit.helper(panel)
        _jit.helper(driver)
    return driver


def integrate_1d(f, a, b, cfg=DEFAULT_CONFIG, params=None):
    """Integrate ``f`` over ``[a, b]`` to ``max(rel_tol * |I|, abs_tol)``.

    ``f`` is either a Python callable ``f(x)`` or, together with ``params``,
    ``f(x, params)``. Integrands with a registered compiled kernel (see
    :func:`adhesion_drag._jit.register_bound`) run the whole adaptive loop in
    machine code; everything else runs as Python.

    Raises
    ------
    DomainError
        ``f`` returned a non-finite value.
    NonConvergenceError
        The evaluation budget ran out; ``best_estimate`` holds the current sum.
    """
    a = float(a)
    b = float(b)
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValidationError(f"integration limits must be finite, got [{a}, {b}]")
    if a > b:
        raise ValidationError(f"integration requires a <= b, got [{a}, {b}]")
    if a == b:
        return QuadratureResult(0.0, 0.0, 0)
    if params is None:
        params = np.empty(0)
        integrand = lambda x, p: float(f(x))  # noqa: E731
    else:
        params = np.ascontiguousarray(params, dtype=np.float64)
        integrand = _jit.python_version(f)
    driver = _jit.bound_kernel(f) or gk15_driver(integrand)
    value, error, neval, status = driver(params, a, b, cfg.quad_rel_tol(), cfg.abs_tol, int(cfg.max_evaluations))
    if status == STATUS_NONFINITE:
        raise DomainError(f"integrand is not finite somewhere on [{a}, {b}]")
    if status == STATUS_BUDGET:
        raise NonConvergenceError(
            f"quadrature on [{a}, {b}] did not converge within {neval} evaluations "
            f"(estimate {value!r}, error {error:.3g})",
            best_estimate=value,
        )
    return QuadratureResult(float(value), float(error), int(neval))
