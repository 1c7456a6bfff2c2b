"""Compiled integrands and right-hand sides for power-law drag.

All take ``params = [m0, v0, lam, alpha]``. Integrals are written in the
log-mass variable ``u = ln(m / m0)``, along which the speed is
``v0 * exp(-u)``:

    t = m0 * int_0^U du / phi(v0 e^-u)
    x = m0 * v0 * int_0^U e^-u du / phi(v0 e^-u)

The position form follows from dm/dx = (dm/dt) / (dx/dt) = phi m^2 / (m0^2 v0).
"""

import math

from . import _jit
from .numerics.ode import dopri5_driver
from .numerics.quadrature import gk15_driver


@_jit.kernel(_jit.SCALAR_SIG)
def time_integrand(u, p):
    return 1.0 / (p[2] * (p[1] * math.exp(-u)) ** p[3])


@_jit.kernel(_jit.SCALAR_SIG)
def position_integrand(u, p):
    return math.exp(-u) / (p[2] * (p[1] * math.exp(-u)) ** p[3])


@_jit.kernel(_jit.RHS_SIG)
def rhs_time(t, y, p, out):
    # y = [m, x]
    v = p[0] * p[1] / y[0]
    phi = p[2] * v ** p[3]
    out[0] = phi * y[0] / p[0]
    out[1] = v


@_jit.kernel(_jit.RHS_SIG)
def rhs_position(x, y, p, out):
    # y = [m, t]; independent variable is the distance travelled
    momentum = p[0] * p[1]
    v = momentum / y[0]
    phi = p[2] * v ** p[3]
    out[0] = phi * y[0] * y[0] / (p[0] * momentum)
    out[1] = y[0] / momentum


@_jit.kernel(_jit.RHS_SIG)
def rhs_constant_mass(t, y, p, out):
    # y = [v]; m0 dv/dt = -phi(v) v
    out[0] = -p[2] * y[0] ** p[3] * y[0] / p[0]


# Compiled drivers with the callbacks above built in; see _jit.register_bound.
_time_quad = gk15_driver(time_integrand, jitable=True)
_position_quad = gk15_driver(position_integrand, jitable=True)
_time_ode = dopri5_driver(rhs_time, jitable=True)
_position_ode = dopri5_driver(rhs_position, jitable=True)
_constant_mass_ode = dopri5_driver(rhs_constant_mass, jitable=True)


@_jit.kernel(_jit.QUAD_DRIVER_SIG)
def quad_time(params, a, b, rel_tol, abs_tol, max_evaluations):
    return _time_quad(params, a, b, rel_tol, abs_tol, max_evaluations)


@_jit.kernel(_jit.QUAD_DRIVER_SIG)
def quad_position(params, a, b, rel_tol, abs_tol, max_evaluations):
    return _position_quad(params, a, b, rel_tol, abs_tol, max_evaluations)


@_jit.kernel(_jit.ODE_DRIVER_SIG)
def ode_time(params, t0, y0, t_eval, rel_tol, abs_tol, h0, max_steps):
    return _time_ode(params, t0, y0, t_eval, rel_tol, abs_tol, h0, max_steps)


@_jit.kernel(_jit.ODE_DRIVER_SIG)
def ode_position(params, t0, y0, t_eval, rel_tol, abs_tol, h0, max_steps):
    return _position_ode(params, t0, y0, t_eval, rel_tol, abs_tol, h0, max_steps)


@_jit.kernel(_jit.ODE_DRIVER_SIG)
def ode_constant_mass(params, t0, y0, t_eval, rel_tol, abs_tol, h0, max_steps):
    return _constant_mass_ode(params, t0, y0, t_eval, rel_tol, abs_tol, h0, max_steps)


_jit.register_bound(time_integrand, quad_time)
_jit.register_bound(position_integrand, quad_position)
_jit.register_bound(rhs_time, ode_time)
_jit.register_bound(rhs_position, ode_position)
_jit.register_bound(rhs_constant_mass, ode_constant_mass)
