"""The twelve acceptance criteria, one test each, at their stated tolerances."""

import subprocess
import sys

import numpy as np

import adhesion_drag as ad
from adhesion_drag import Method, PowerLaw, RangeExceededError, Scenario, TrajectoryRequest, integrate_trajectory, preset

from conftest import ALPHAS, power_scenario, rel_err


def test_ac01_doubling_time_water(acceptance):
    t = ad.doubling_time(preset("table_tennis_water", 1.0))
    acceptance(1, "doubling time, water", 4.91 <= t <= 4.96, f"t* = {t:.6f} s")


def test_ac02_doubling_distance_air(acceptance):
    x = ad.doubling_distance(preset("table_tennis_air", 10.0))
    acceptance(2, "doubling distance, air", 5.35 <= x <= 5.40, f"l** = {x:.6f} m")


def test_ac03_water_coefficients(acceptance):
    s = preset("table_tennis_water", 1.0)
    rate, inv, curv = s.drag.lam / s.m0, 1 / s.m0, s.drag.lam / s.m0**2
    ok = abs(rate - 0.1403) <= 0.001 and abs(inv - 370.37) <= 0.01 and abs(curv - 51.97) <= 0.02
    acceptance(3, "water coefficients", ok, f"lam/m0={rate:.5f}, 1/m0={inv:.4f}, lam/m0^2={curv:.4f}")


def test_ac04_air_coefficients(acceptance):
    rate = preset("table_tennis_air", 10.0).drag.lam / 0.0027
    t = np.linspace(0.0, 10.0, 41)
    linear = True
    for v0 in (1.0, 5.0, 10.0, 37.5):
        s = preset("table_tennis_air", v0)
        m = ad.mass_at_time_closed(s, t)
        slope = np.diff(m) / np.diff(t)
        linear &= bool(np.allclose(slope, 0.000348 * v0, rtol=1e-12, atol=0))
    acceptance(4, "air coefficients", abs(rate - 0.1289) <= 0.001 and linear,
               f"lam/m0={rate:.5f}, slope 0.000348*v0 linear={linear}")


def test_ac05_triple_agreement(acceptance):
    worst = 0.0
    for alpha in ALPHAS:
        s = power_scenario(alpha)
        x_end = 0.9 * ad.max_range(s) if alpha < 1 else 4 * ad.doubling_distance(s)
        for kw in ({"t_end": 4 * ad.doubling_time(s)}, {"x_end": x_end}):
            arrays = [
                integrate_trajectory(TrajectoryRequest(s, sample_count=20, method=m, **kw)).as_array()
                for m in (Method.CLOSED_FORM, Method.IMPLICIT_INVERSION, Method.ODE)
            ]
            worst = max(worst, rel_err(arrays[0], arrays[1]), rel_err(arrays[0], arrays[2]))
    acceptance(5, "triple agreement", worst <= 1e-6, f"max rel deviation {worst:.2e}")


def test_ac06_equivalence_presumption(acceptance):
    worst = 0.0
    for alpha in ALPHAS:
        s = power_scenario(alpha)
        t = np.linspace(0.0, 4 * ad.doubling_time(s), 20)
        worst = max(worst, rel_err(ad.constant_mass_velocity(s, t), s.momentum / ad.mass_at_time_closed(s, t)))
    acceptance(6, "constant-mass equivalence", worst <= 1e-6, f"max rel deviation {worst:.2e}")


def test_ac07_momentum(acceptance):
    worst = 0.0
    scenarios = [power_scenario(a) for a in ALPHAS] + [preset("table_tennis_water", 1.0), preset("table_tennis_air", 10.0)]
    for s in scenarios:
        x_end = 0.9 * ad.max_range(s) if s.drag.alpha < 1 else 4 * ad.doubling_distance(s)
        for kw in ({"t_end": 5 * ad.doubling_time(s)}, {"x_end": x_end}):
            arr = integrate_trajectory(TrajectoryRequest(s, sample_count=50, **kw)).as_array()
            worst = max(worst, float(np.max(np.abs(arr[:, 2] * arr[:, 3] - s.momentum) / s.momentum)))
    acceptance(7, "momentum on ODE paths", worst <= 1e-8, f"max rel drift {worst:.2e}")


def test_ac08_v0_independence(acceptance):
    t = np.linspace(0.0, 20.0, 101)
    x = np.linspace(0.0, 20.0, 101)
    by_time = [ad.mass_at_time_closed(preset("table_tennis_water", v0), t) for v0 in (1.0, 5.0, 10.0)]
    by_pos = [ad.mass_at_position_closed(preset("table_tennis_air", v0), x) for v0 in (1.0, 5.0, 10.0)]
    ok = all(np.array_equal(by_time[0], m) for m in by_time) and all(np.array_equal(by_pos[0], m) for m in by_pos)
    acceptance(8, "v0 independence (bitwise)", ok)


def test_ac09_unbounded_mass(acceptance):
    worst = 0.0
    finite = True
    for name in ("table_tennis_water", "table_tennis_air"):
        for v0 in (1.0, 10.0):
            s = preset(name, v0)
            for ratio in (10.0, 1e3):
                t = ad.time_for_mass(s, ratio * s.m0)
                finite &= bool(np.isfinite(t))
                worst = max(worst, rel_err(ad.mass_at_time_closed(s, t), ratio * s.m0))
    acceptance(9, "unbounded mass growth", finite and worst <= 1e-9, f"max rel error {worst:.2e}")


def test_ac10_finite_range(acceptance):
    s = preset("table_tennis_water", 1.0)
    limit = ad.max_range(s)
    gap = (limit - ad.position_for_mass(s, 1e3 * s.m0)) / limit
    refused = 0
    for attempt in (
        lambda: ad.mass_at_position_numeric(s, 1.01 * limit),
        lambda: ad.mass_at_position_closed(s, 1.01 * limit),
        lambda: TrajectoryRequest(s, x_end=1.01 * limit),
    ):
        try:
            attempt()
        except RangeExceededError:
            refused += 1
    ok = 0 < gap <= 1e-3 * (1 + 1e-9) and limit == s.m0 * s.v0 / s.drag.lam and refused == 3
    acceptance(10, "finite range", ok, f"max_range={limit:.6f} m, gap {gap:.3%}, refusals {refused}/3")


def test_ac11_calibration_round_trip(acceptance):
    worst, all_converged, v0, m0 = 0.0, True, 10.0, 0.0027
    for lam in (1e-4, 1e-3, 1e-2):
        for alpha in ALPHAS:
            s = Scenario(m0, v0, PowerLaw(lam, alpha))
            for kind in ("t", "x"):
                if kind == "t":
                    z = np.linspace(0.2, 3.0, 12) * ad.doubling_time(s)
                    m = ad.mass_at_time_closed(s, z)
                else:
                    end = min(3 * ad.doubling_distance(s), 0.8 * ad.max_range(s))
                    z = np.linspace(end / 12, end, 12)
                    m = ad.mass_at_position_closed(s, z)
                samples = [ad.MassSample(zi, mi, kind) for zi, mi in zip(z, m)]
                fit = ad.fit_power_law(samples, m0, v0, init=(1e-3, 0.5))
                all_converged &= fit.converged
                worst = max(worst, abs(fit.lam - lam) / lam, abs(fit.alpha - alpha) / max(alpha, 1.0))
    acceptance(11, "calibration round trip", all_converged and worst <= 1e-5,
               f"24 fits, converged={all_converged}, max rel error {worst:.2e}")


def test_ac12_cli_contract(acceptance):
    def cli(*argv):
        proc = subprocess.run([sys.executable, "-m", "adhesion_drag", *argv], capture_output=True)
        return proc.returncode, proc.stdout

    def rows(out):
        lines = out.decode().splitlines()
        assert lines[0] == "t,x,m,v"
        return np.array([[float(c) for c in line.split(",")] for line in lines[1:]])

    water = ("simulate", "--preset", "table_tennis_water", "--v0", "1", "--t-end", "4.94", "--samples", "3", "--format", "csv")
    resting = ("simulate", "--m0", "1", "--lambda", "1", "--alpha", "1", "--v0", "0", "--t-end", "10")
    air = ("simulate", "--preset", "table_tennis_air", "--v0", "10", "--t-end", "1")
    runs = {name: [cli(*argv) for _ in range(2)] for name, argv in
            {"water": water, "resting": resting, "air_ode": air + ("--method", "ode"), "air_closed": air + ("--method", "closed")}.items()}
    codes_ok = all(code == 0 for pair in runs.values() for code, _ in pair)
    deterministic = all(a[1] == b[1] for a, b in runs.values())
    w = rows(runs["water"][0][1])
    r = rows(runs["resting"][0][1])
    ode, closed = rows(runs["air_ode"][0][1]), rows(runs["air_closed"][0][1])
    outputs_ok = (
        abs(w[-1, 2] - 0.0054) <= 0.0054 * 1e-3
        and np.all(r[:, 2] == 1.0)
        and np.all(r[:, 1] == 0.0)
        and rel_err(ode, closed) <= 1e-6
    )
    acceptance(12, "CLI contract", codes_ok and deterministic and outputs_ok,
               f"exit codes ok={codes_ok}, byte-deterministic={deterministic}, outputs ok={bool(outputs_ok)}")
