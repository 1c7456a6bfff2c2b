"""Bracketed root finding for monotone scalar functions."""

import math

from ..errors import BracketError, DomainError, NonConvergenceError, ValidationError
from .config import DEFAULT_CONFIG

_TINY = 1e-300


def find_root_monotone(g, lo, hi, cfg=DEFAULT_CONFIG):
    """Locate the sign change of ``g`` inside ``[lo, hi]``.

    Illinois-modified regula falsi, with a bisection step whenever the
    bracket failed to halve over the previous two iterations. Every trial
    point lies strictly inside the current bracket and the bracket only
    shrinks. Iteration stops when the bracket width is at most
    ``cfg.root_tol`` times the larger endpoint magnitude, or ``g`` hits an
    exact zero.

    Raises
    ------
    BracketError
        ``g(lo)`` and ``g(hi)`` have the same strict sign.
    NonConvergenceError
        ``cfg.max_evaluations`` evaluations were spent first.
    """
    lo = float(lo)
    hi = float(hi)
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
        raise ValidationError(f"invalid bracket [{lo}, {hi}]")
    g_lo = float(g(lo))
    if g_lo == 0.0:
        return lo
    g_hi = float(g(hi))
    if g_hi == 0.0:
        return hi
    if math.isnan(g_lo) or math.isnan(g_hi):
        raise DomainError(f"root function is NaN at a bracket endpoint [{lo}, {hi}]")
    if (g_lo > 0) == (g_hi > 0):
        raise BracketError(f"no sign change on [{lo}, {hi}]: g(lo)={g_lo!r}, g(hi)={g_hi!r}")

    evaluations = 2
    best, best_abs = (lo, abs(g_lo)) if abs(g_lo) < abs(g_hi) else (hi, abs(g_hi))
    width_before = [hi - lo, hi - lo]
    side = 0  # which endpoint was retained last time (-1 lo, +1 hi)
    # Illinois halving can underflow g_hi to zero, so fix the sign once
    hi_positive = g_hi > 0
    while True:
        width = hi - lo
        if width <= cfg.root_tol * max(abs(lo), abs(hi), _TINY):
            return best
        if evaluations >= cfg.max_evaluations:
            raise NonConvergenceError(
                f"root bracket [{lo!r}, {hi!r}] still wider than tolerance after {evaluations} evaluations",
                best_estimate=best,
            )
        trial = (lo * g_hi - hi * g_lo) / (g_hi - g_lo)
        if not (lo < trial < hi) or width > 0.5 * width_before[0]:
            trial = lo + 0.5 * width
            if not (lo < trial < hi):
                # adjacent floats: nothing left to split
                return best
        width_before = [width_before[1], width]
        g_trial = float(g(trial))
        evaluations += 1
        if math.isnan(g_trial):
            raise DomainError(f"root function is NaN at {trial!r}")
        if g_trial == 0.0:
            return trial
        if abs(g_trial) <= best_abs:
            best, best_abs = trial, abs(g_trial)
        if (g_trial > 0) == hi_positive:
            hi, g_hi = trial, g_trial
            if side == +1:
                g_lo *= 0.5
            side = +1
        else:
            lo, g_lo = trial, g_trial
            if side == -1:
                g_hi *= 0.5
            side = -1
