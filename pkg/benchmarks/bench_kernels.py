"""Compiled vs pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Quadrature and ODE kernels are timed in-process: the compiled kernel against
its own Python body (``py_func``). The end-to-end inversion is timed in two
subprocesses, one with ADHESION_DRAG_DISABLE_JIT=1. Compilation is excluded;
cached kernels load on import and each case runs once before timing.
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

import adhesion_drag as ad
from adhesion_drag import _powerlaw
from adhesion_drag._jit import python_version
from adhesion_drag.numerics import SolverConfig, integrate_1d, integrate_ode

PARAMS = np.array([0.0027, 10.0, 1e-3, 0.5])
CFG = SolverConfig(rel_tol=1e-12)

INVERSION = """
import timeit, adhesion_drag as ad
s = ad.Scenario(0.0027, 10.0, ad.PowerLaw(1e-3, 0.5))
run = lambda: [ad.mass_at_time_numeric(s, t) for t in (1.0, 5.0, 25.0, 125.0)]
run()
print(min(timeit.repeat(run, number=1, repeat={repeat})))
"""


def quad_case(f):
    return lambda: integrate_1d(f, 0.0, 40.0, CFG, params=PARAMS)


def ode_case(f):
    return lambda: integrate_ode(f, [PARAMS[0], 0.0], (0.0, 500.0), CFG, t_eval=np.linspace(0, 500, 101), params=PARAMS)


def best(fn, repeat):
    fn()
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def inversion_time(disable, repeat):
    env = dict(os.environ, ADHESION_DRAG_DISABLE_JIT="1" if disable else "0")
    out = subprocess.run([sys.executable, "-c", INVERSION.format(repeat=repeat)], env=env,
                         capture_output=True, text=True, check=True)
    return float(out.stdout)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if not ad.JIT_ENABLED:
        sys.exit("numba is unavailable or disabled; nothing to compare")

    rows = []
    for name, case, fn in (
        ("quadrature (GK15, u in [0, 40])", quad_case, _powerlaw.time_integrand),
        ("ODE (DOPRI5, rtol 1e-12)", ode_case, _powerlaw.rhs_time),
    ):
        rows.append((name, best(case(fn), args.repeat), best(case(python_version(fn)), args.repeat)))
    rows.append(("mass inversion x4 (subprocess)", inversion_time(False, args.repeat), inversion_time(True, args.repeat)))

    print(f"{'kernel':34s} {'numba [ms]':>11s} {'python [ms]':>12s} {'speedup':>8s}")
    for name, fast, slow in rows:
        print(f"{name:34s} {fast * 1e3:11.3f} {slow * 1e3:12.3f} {slow / fast:7.1f}x")


if __name__ == "__main__":
    main()
