"""Numerical kernels: bracketing root finder, exact radial null geodesic
integration, and log-log power-law fitting.

These are deliberately independent of the asymptotic formulas so they
can serve as an oracle for them.
"""

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .errors import (
    DomainError,
    InsufficientSamples,
    NoSignChange,
    NonPositiveOrdinate,
    PastSingularity,
    StepUnderflow,
)
from .kinematics import alpha_factor, horizon_offset, scaled_bracket, singularity_offset

_EPS = np.finfo(float).eps
STALL_MARGIN = 1e-6


def find_root_bracketing(f, lo, hi, rel_tol=1e-12):
    """Root of ``f`` on ``[lo, hi]`` by Brent's method.

    Raises:
        NoSignChange: f(lo) and f(hi) have the same sign.
    """
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo!r}, {hi!r}]")
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise NoSignChange(f"f({lo!r}) and f({hi!r}) share a sign")
    rtol = max(rel_tol, 4.0 * _EPS)
    return brentq(f, lo, hi, xtol=1e-300, rtol=rtol, maxiter=500)


class TerminalEvent(enum.Enum):
    REACHED_END = "ReachedEnd"
    HIT_SINGULARITY = "HitSingularity"
    HIT_HORIZON = "HitHorizon"
    STEP_UNDERFLOW = "StepUnderflow"


@dataclass
class IntegrationControls:
    """Knobs for :func:`integrate_null_geodesic`.

    Integration stops once t >= t_s(r) - eps with
    eps = min(singularity_guard * t0, singularity_guard_rel * |t_s(r) - t0|);
    the relative cap keeps launches near r = 0, where t_s - t0 is far
    below 1e-12 t0, outside the guard band.
    """

    rtol: float = 1e-10
    atol: float = 1e-300
    method: str = "DOP853"
    samples_per_decade: int = 40
    singularity_guard: float = 1e-12
    singularity_guard_rel: float = 1e-6
    stop_at_horizon: bool = False
    r_floor: float = 1e-8


@dataclass
class GeodesicPath:
    """Samples of an integrated outgoing radial null geodesic.

    ``dt`` holds t - t_ref exactly as integrated; ``t`` is t_ref + dt.
    Near the centre use ``dt`` with ``t_ref = t0``: the reconstructed
    ``t`` has lost most of the significant digits of the offset.
    """

    r: np.ndarray
    t: np.ndarray
    dt: np.ndarray
    t_ref: float
    terminal_event: TerminalEvent
    horizon_crossings: list = field(default_factory=list)
    steps: int = 0

    def __len__(self):
        return len(self.r)


def _singularity_margin(model, r, u, ctl):
    ts = singularity_offset(model, r)
    eps = ctl.singularity_guard * model.t0
    if ts != 0.0:
        eps = min(eps, ctl.singularity_guard_rel * abs(ts))
    return ts - eps - u


def integrate_null_geodesic(model, r_start, t_start, r_end, controls=None, *, dt_start=None):
    """Integrate dt/dr = R' + R nu' from (r_start, t_start) to r_end.

    The independent variable is log r and the state is t - t0, so the
    solver's relative tolerance applies to the offset from the central
    singularity time. ``dt_start`` (= t_start - t0) may be given instead
    of ``t_start`` to avoid the rounding of t0 + small.

    Raises:
        DomainError: r_start or r_end outside [r_floor, inf).
        PastSingularity: the launch point is not before t_s(r_start).
        StepUnderflow: the solver stalled away from the singularity curve.
    """
    ctl = controls or IntegrationControls()
    if not (r_start >= ctl.r_floor and r_end >= ctl.r_floor):
        raise DomainError(f"radii must be >= {ctl.r_floor}: {r_start!r}, {r_end!r}")
    u0 = dt_start if dt_start is not None else t_start - model.t0
    if not scaled_bracket(model, r_start, u0) > 0.0:
        raise PastSingularity(f"launch point t0{u0:+.3e} is not before t_s({r_start!r})")
    if _singularity_margin(model, r_start, u0, ctl) <= 0.0:
        raise PastSingularity("launch point lies inside the singularity guard band")

    def rhs(x, y):
        r = math.exp(x)
        try:
            return [r * alpha_factor(model, r, y[0])]
        except DomainError:
            return [math.inf]

    x0, x1 = math.log(r_start), math.log(r_end)
    last = [x0, u0]

    def hit_singularity(x, y):
        last[:] = x, y[0]
        return _singularity_margin(model, math.exp(x), y[0], ctl)

    hit_singularity.terminal = True
    hit_singularity.direction = -1.0

    def hit_horizon(x, y):
        return y[0] - horizon_offset(model, math.exp(x))

    hit_horizon.terminal = ctl.stop_at_horizon
    hit_horizon.direction = 1.0

    decades = abs(x1 - x0) / math.log(10.0)
    count = max(2, int(math.ceil(decades * ctl.samples_per_decade)) + 1)
    x_eval = np.linspace(x0, x1, count)
    sol = solve_ivp(
        rhs,
        (x0, x1),
        [u0],
        method=ctl.method,
        t_eval=x_eval,
        events=(hit_singularity, hit_horizon),
        rtol=ctl.rtol,
        atol=ctl.atol,
    )
    xs, us = list(sol.t), list(sol.y[0])
    sing_x, hor_x = sol.t_events
    if sol.status == -1:
        # the slope diverges like a power of (t_s - t) on approach to the
        # singularity curve, so the solver can stall just short of the band
        r_last = math.exp(last[0])
        gap = singularity_offset(model, r_last)
        if gap == 0.0 or (gap - last[1]) > STALL_MARGIN * abs(gap):
            raise StepUnderflow(f"{sol.message} (r={r_last!r})")
        sing_x, y_sing = [last[0]], [[last[1]]]
    else:
        y_sing = sol.y_events[0]
    horizon_r = [math.exp(x) for x in hor_x]
    event = TerminalEvent.REACHED_END
    if len(sing_x):
        event = TerminalEvent.HIT_SINGULARITY
        xs.append(sing_x[0])
        us.append(y_sing[0][0])
    elif ctl.stop_at_horizon and len(hor_x):
        event = TerminalEvent.HIT_HORIZON
        xs.append(hor_x[0])
        us.append(sol.y_events[1][0][0])
    steps = sol.nfev
    r = np.exp(np.array(xs))
    dt = np.array(us)
    return GeodesicPath(r, model.t0 + dt, dt, model.t0, event, horizon_r, steps)


@dataclass
class PowerLawFit:
    xi_est: float
    a_est: float
    r_window: tuple
    residual_rms: float
    samples: int


DEFAULT_WINDOW = (1e-6, 1e-4)


def fit_power_law(path, t0, window=DEFAULT_WINDOW, min_samples=8):
    """Least-squares fit of log(t - t0) = log a + xi log r over ``window``.

    Accepts a :class:`GeodesicPath` or an ``(r, t)`` pair of arrays.

    Raises:
        InsufficientSamples: fewer than ``min_samples`` points in window.
        NonPositiveOrdinate: some t <= t0 inside the window.
    """
    if isinstance(path, GeodesicPath):
        r = np.asarray(path.r, dtype=float)
        offset = path.dt + (path.t_ref - t0)
    else:
        r, t = (np.asarray(v, dtype=float) for v in path)
        offset = t - t0
    lo, hi = window
    mask = (r >= lo * (1 - 1e-12)) & (r <= hi * (1 + 1e-12))
    if mask.sum() < min_samples:
        raise InsufficientSamples(f"{int(mask.sum())} samples in window {window}, need {min_samples}")
    r, offset = r[mask], offset[mask]
    if np.any(offset <= 0.0):
        raise NonPositiveOrdinate("t <= t0 inside the fit window")
    X, Y = np.log(r), np.log(offset)
    slope, intercept = np.polyfit(X, Y, 1)
    resid = Y - (slope * X + intercept)
    return PowerLawFit(
        float(slope),
        float(math.exp(intercept)),
        (float(r.min()), float(r.max())),
        float(np.sqrt(np.mean(resid**2))),
        int(mask.sum()),
    )
