"""Optional numba acceleration.

Kernels are written once in the numba-compatible subset of Python. When numba
is importable and ``ADHESION_DRAG_DISABLE_JIT`` is unset (or "0"), they are
compiled eagerly against fixed signatures with on-disk caching; otherwise the
decorator is the identity and the same source runs as plain Python/numpy.

The numerical loops (quadrature, ODE) are factories that close over their
callback. Each library callback gets its own top-level kernel around such a
closure, so the callback call is compiled in and the kernel caches to disk;
``register_bound`` records which kernel serves which callback. Passing a
dispatcher as an argument instead would defeat the disk cache, and numba
first-class functions cost tens of microseconds per call, more than a short
integration itself.
"""

import os

_FLAG = "ADHESION_DRAG_DISABLE_JIT"

try:
    import numba as _nb
    from numba import types as _t
except ImportError:  # pragma: no cover - exercised only without numba
    _nb = None

JIT_ENABLED = _nb is not None and os.environ.get(_FLAG, "0").strip().lower() in ("", "0", "false", "no")


if JIT_ENABLED:
    f8 = _t.float64
    i8 = _t.int64
    vec = _t.float64[::1]

    #: integrand: f(x, params) -> float
    SCALAR_SIG = f8(f8, vec)
    #: ODE right-hand side: rhs(t, y, params, out) writes dy/dt into out
    RHS_SIG = _t.none(f8, vec, vec, vec)

    #: quadrature driver: (params, a, b, rel_tol, abs_tol, max_evaluations) -> (value, error, evaluations, status)
    QUAD_DRIVER_SIG = _t.Tuple((f8, f8, i8, i8))(vec, f8, f8, f8, f8, i8)
    #: ODE driver: (params, t0, y0, t_eval, rel_tol, abs_tol, h0, max_steps) -> (samples, status, last_t, evaluations, steps)
    ODE_DRIVER_SIG = _t.Tuple((_t.float64[:, ::1], i8, f8, i8, i8))(vec, f8, vec, vec, f8, f8, f8, i8)
else:
    SCALAR_SIG = RHS_SIG = QUAD_DRIVER_SIG = ODE_DRIVER_SIG = None


def kernel(signature):
    """Compile ``fn`` for ``signature`` when JIT is on; identity otherwise."""

    def wrap(fn):
        if not JIT_ENABLED:
            return fn
        return _nb.njit(signature, cache=True)(fn)

    return wrap


def helper(fn):
    """Mark ``fn`` callable from compiled kernels while leaving it plain Python.

    The returned object is ``fn`` itself, so pure-Python callers (including
    the uncompiled kernel bodies) reach the Python implementation.
    """
    if not JIT_ENABLED:
        return fn
    from numba.extending import register_jitable

    return register_jitable(fn)


_BOUND = {}


def register_bound(callback, bound_kernel):
    """Run ``bound_kernel`` (a compiled driver with ``callback`` built in) whenever ``callback`` is passed."""
    if JIT_ENABLED:
        _BOUND[callback] = bound_kernel


def bound_kernel(callback):
    try:
        return _BOUND.get(callback)
    except TypeError:  # unhashable callables are never registered
        return None


def python_version(fn):
    """Return the pure-Python body of a (possibly) compiled function."""
    return getattr(fn, "py_func", fn)
