"""Command-line interface.

Subcommands::

    simulate  sample a trajectory (t, x, m, v) as CSV or JSON
    metrics   doubling time, doubling distance and finite range as JSON
    compare   cross-check closed form, implicit inversion and ODE routes
    fit       calibrate (lambda, alpha) from a CSV of sampled masses

Exit codes: 0 success, 1 comparison above threshold, 2 invalid input,
3 solver non-convergence.
"""

import argparse
import csv
import io
import json
import logging
import math
import sys

import numpy as np

from . import closed_form, implicit
from .calibrate import MassSample, fit_power_law
from .errors import AdhesionError, NonConvergenceError
from .model import Method, PowerLaw, Scenario
from .numerics import SolverConfig
from .scenarios import PRESETS, preset

EXIT_OK = 0
EXIT_COMPARE_FAILED = 1
EXIT_INVALID = 2
EXIT_NONCONVERGENCE = 3

METHOD_ALIASES = {
    "closed": Method.CLOSED_FORM,
    "closed_form": Method.CLOSED_FORM,
    "implicit": Method.IMPLICIT_INVERSION,
    "implicit_inversion": Method.IMPLICIT_INVERSION,
    "ode": Method.ODE,
}

# keys accepted in a --config JSON file; command-line flags win over them
CONFIG_KEYS = ("preset", "v0", "m0", "lambda", "alpha", "label", "t_end", "x_end", "samples", "method", "format", "output")


class UsageError(Exception):
    pass


def fmt(value):
    """17 significant digits, dot decimal separator regardless of locale."""
    return format(float(value), ".17g")


def _add_scenario_args(p):
    g = p.add_argument_group("scenario (a preset, or --m0/--lambda/--alpha)")
    g.add_argument("--config", help="flat JSON file with run settings; flags override it")
    g.add_argument("--preset", choices=sorted(PRESETS))
    g.add_argument("--v0", type=float, help="initial speed [m/s]")
    g.add_argument("--m0", type=float, help="initial mass [kg]")
    g.add_argument("--lambda", dest="lam", type=float, help="drag coefficient lambda")
    g.add_argument("--alpha", type=float, help="drag exponent alpha (0: linear, 1: quadratic)")
    g.add_argument("--label", help="free-text scenario label")
    g.add_argument("--rtol", type=float, help="relative tolerance for quadrature/ODE")
    g.add_argument("--atol", type=float, default=1e-12, help="absolute tolerance (default 1e-12)")


def _add_horizon_args(p, samples_default):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--t-end", type=float, help="time horizon [s]")
    g.add_argument("--x-end", type=float, help="distance horizon [m]")
    p.add_argument("--samples", type=int, help=f"number of samples including the start (default {samples_default})")


def build_parser():
    parser = argparse.ArgumentParser(prog="adhesion-drag", description=__doc__.split("\n\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log solver diagnostics to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="sample a trajectory")
    _add_scenario_args(p)
    _add_horizon_args(p, 11)
    p.add_argument("--method", choices=sorted(METHOD_ALIASES), help="solution route (default closed)")
    p.add_argument("--format", choices=("csv", "json"), help="output format (default csv)")
    p.add_argument("--output", "-o", help="output file (default standard output)")

    p = sub.add_parser("metrics", help="doubling time/distance and finite range")
    _add_scenario_args(p)

    p = sub.add_parser("compare", help="cross-validate the three solution routes")
    _add_scenario_args(p)
    _add_horizon_args(p, 20)
    p.add_argument("--threshold", type=float, default=1e-6, help="max allowed relative deviation (default 1e-6)")

    p = sub.add_parser("fit", help="calibrate (lambda, alpha) from sampled masses")
    p.add_argument("data", help="CSV with header 't,m' (time series) or 'x,m' (position series)")
    p.add_argument("--m0", type=float, required=True, help="initial mass [kg]")
    p.add_argument("--v0", type=float, required=True, help="initial speed [m/s]")
    p.add_argument("--lambda0", type=float, default=1e-4, help="initial lambda guess (default 1e-4)")
    p.add_argument("--alpha0", type=float, default=0.5, help="initial alpha guess (default 0.5)")
    return parser


def _merged(args):
    """Flag values layered over the optional --config file."""
    values = {}
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config!r}: {exc}") from None
        if not isinstance(loaded, dict):
            raise UsageError("config file must hold a JSON object")
        unknown = sorted(set(loaded) - set(CONFIG_KEYS))
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(unknown)}")
        values.update(loaded)
    flags = {
        "preset": "preset", "v0": "v0", "m0": "m0", "lam": "lambda", "alpha": "alpha", "label": "label",
        "t_end": "t_end", "x_end": "x_end", "samples": "samples", "method": "method",
        "format": "format", "output": "output",
    }
    for attr, key in flags.items():
        value = getattr(args, attr, None)
        if value is not None:
            values[key] = value
    # a horizon given on the command line replaces the other one from the file
    if getattr(args, "t_end", None) is not None:
        values.pop("x_end", None)
    if getattr(args, "x_end", None) is not None:
        values.pop("t_end", None)
    return values


def _scenario(values):
    inline = [k for k in ("m0", "lambda", "alpha") if k in values]
    if "preset" in values and inline:
        raise UsageError("give either --preset or --m0/--lambda/--alpha, not both")
    if "v0" not in values:
        raise UsageError("--v0 is required")
    if "preset" in values:
        return preset(values["preset"], values["v0"])
    if len(inline) != 3:
        raise UsageError("give a --preset, or all of --m0, --lambda and --alpha")
    return Scenario(values["m0"], values["v0"], PowerLaw(values["lambda"], values["alpha"]), values.get("label", ""))


def _solver_config(args):
    return SolverConfig(rel_tol=args.rtol, abs_tol=args.atol)


def _write(text, path):
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def _json(obj):
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _series_json(series):
    return {
        "scenario": series.scenario.to_dict(),
        "method": series.method.value,
        "tolerances": series.tolerances,
        "states": [{"t": s.t, "x": s.x, "m": s.m, "v": s.v} for s in series.states],
    }


def _horizon(values, default_t=None):
    t_end, x_end = values.get("t_end"), values.get("x_end")
    if t_end is not None and x_end is not None:
        raise UsageError("give only one of --t-end and --x-end")
    if t_end is None and x_end is None:
        if default_t is None:
            raise UsageError("a horizon is required: --t-end or --x-end")
        t_end = default_t
    return t_end, x_end


def cmd_simulate(args):
    values = _merged(args)
    s = _scenario(values)
    method = values.get("method", "closed")
    if method not in METHOD_ALIASES:
        raise UsageError(f"unknown method {method!r}")
    fmt_name = values.get("format", "csv")
    if fmt_name not in ("csv", "json"):
        raise UsageError(f"unknown format {fmt_name!r}")
    t_end, x_end = _horizon(values)
    req = implicit.TrajectoryRequest(
        s, t_end=t_end, x_end=x_end, sample_count=values.get("samples", 11),
        method=METHOD_ALIASES[method], cfg=_solver_config(args),
    )
    series = implicit.integrate_trajectory(req)
    if fmt_name == "csv":
        buf = io.StringIO()
        buf.write("t,x,m,v\n")
        for row in series.as_array():
            buf.write(",".join(fmt(v) for v in row) + "\n")
        text = buf.getvalue()
    else:
        text = _json(_series_json(series))
    _write(text, values.get("output"))
    return EXIT_OK


def _metric(fn, s):
    try:
        value = fn(s)
    except AdhesionError as exc:
        logging.getLogger(__name__).info("%s undefined: %s", fn.__name__, exc)
        return None
    return "infinite" if math.isinf(value) else value


def cmd_metrics(args):
    s = _scenario(_merged(args))
    out = {
        "doubling_time": _metric(closed_form.doubling_time, s),
        "doubling_distance": _metric(closed_form.doubling_distance, s),
        "max_range": _metric(closed_form.max_range, s),
        "scenario": s.to_dict(),
    }
    _write(_json(out), None)
    return EXIT_OK


def _max_rel_dev(a, b):
    scale = np.maximum(np.abs(a), np.abs(b))
    diff = np.abs(a - b)
    rel = np.divide(diff, scale, out=np.zeros_like(diff), where=scale > 0)
    return float(rel.max())


def cmd_compare(args):
    values = _merged(args)
    s = _scenario(values)
    if not isinstance(s.drag, PowerLaw):
        raise UsageError("compare needs a power-law scenario")
    try:
        default_t = 3.0 * closed_form.doubling_time(s)
    except AdhesionError:
        default_t = 1.0
    t_end, x_end = _horizon(values, default_t)
    cfg = _solver_config(args)
    routes = {}
    for method in (Method.CLOSED_FORM, Method.IMPLICIT_INVERSION, Method.ODE):
        req = implicit.TrajectoryRequest(s, t_end=t_end, x_end=x_end, sample_count=values.get("samples", 20), method=method, cfg=cfg)
        routes[method.value] = implicit.integrate_trajectory(req).as_array()
    pairs = [("closed_form", "implicit_inversion"), ("closed_form", "ode"), ("implicit_inversion", "ode")]
    deviations = {f"{a}_vs_{b}": _max_rel_dev(routes[a], routes[b]) for a, b in pairs}
    ok = all(d <= args.threshold for d in deviations.values())
    report = {
        "max_relative_deviation": deviations,
        "threshold": args.threshold,
        "grid": {"variable": "t" if t_end is not None else "x", "end": t_end if t_end is not None else x_end,
                 "samples": values.get("samples", 20)},
        "pass": ok,
    }
    _write(_json(report), None)
    return EXIT_OK if ok else EXIT_COMPARE_FAILED


def read_samples(path):
    """Parse a ``t,m`` or ``x,m`` CSV into mass samples; errors name the offending line."""
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise UsageError(f"cannot read {path!r}: {exc}") from None
    if not rows:
        raise UsageError(f"{path}: line 1: empty file, expected header 't,m' or 'x,m'")
    header = [h.strip() for h in rows[0]]
    if header not in (["t", "m"], ["x", "m"]):
        raise UsageError(f"{path}: line 1: header must be 't,m' or 'x,m', got {','.join(rows[0])!r}")
    kind = header[0]
    samples = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 2:
            raise UsageError(f"{path}: line {lineno}: expected 2 fields, got {len(row)}")
        try:
            z, m = float(row[0]), float(row[1])
            samples.append(MassSample(z, m, kind))
        except ValueError as exc:
            raise UsageError(f"{path}: line {lineno}: {exc}") from None
    return samples


def cmd_fit(args):
    samples = read_samples(args.data)
    result = fit_power_law(samples, args.m0, args.v0, (args.lambda0, args.alpha0))
    _write(_json(result.to_dict()), None)
    return EXIT_OK if result.converged else EXIT_NONCONVERGENCE


COMMANDS = {"simulate": cmd_simulate, "metrics": cmd_metrics, "compare": cmd_compare, "fit": cmd_fit}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except NonConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (UsageError, AdhesionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
