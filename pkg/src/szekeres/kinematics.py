"""Exact marginally bound evolution: R(t, r), its derivatives, density,
metric factors, and the singularity and apparent-horizon curves.

Times are handled internally as offsets ``u = t - t0`` from the central
singularity time. Near r = 0 every interesting quantity is a small
correction to ``t0``, and working with ``u`` together with the
cancellation-free mass excess keeps those corrections accurate down to
r ~ 1e-8.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BadChart, DomainError, Homogeneous, NonPositiveMass, PastSingularity, ShellCross
from .series import F_eval, find_m, mass_excess, mass_ratio, nu_prime_eval

SHELL_CROSS_TOL = 1e-12
_EPS = 2.220446049250313e-16


def _mass_shape(model, r):
    """Return (G, G', (G - F_0)/F_0), rejecting F <= 0."""
    G, dG = mass_ratio(model, r)
    delta = mass_excess(model, r)
    if not G > 0.0 or not 1.0 + delta > 0.0:
        raise NonPositiveMass(f"F(r) <= 0 at r={r!r}")
    return G, dG, delta


def scaled_bracket(model, r, u):
    """s = S / r^((n+1)/2) = 1 - t / t_s(r) at time t = t0 + u.

    s is the dimensionless distance to the singularity curve: s = 1 at
    t = 0 and s = 0 on t = t_s(r).
    """
    off = singularity_offset(model, r)
    return (off - u) / (model.t0 + off)


def _radius_terms(model, r, u, slack=0.0):
    """R and R' at (t0 + u, r) without cancellation.

    ``slack`` is the absolute resolution of u; callers that start from an
    absolute time t pass the rounding of t - t0.
    """
    n = model.n
    if not math.isfinite(u):
        raise DomainError(f"time offset must be finite, got {u!r}")
    G, dG, delta = _mass_shape(model, r)
    off = model.t0 * math.expm1(-0.5 * math.log1p(delta))
    ts = model.t0 + off
    gap = off - u
    if abs(gap) <= slack + 4.0 * _EPS * max(abs(off), abs(u)):
        gap = 0.0  # t agrees with t_s(r) to working precision
    s = gap / ts
    if not s >= 0.0:
        raise PastSingularity(f"t = t0 + {u!r} lies beyond t_s at r={r!r}")
    t = model.t0 + u
    R = r * s ** (2.0 / (n + 1))
    if dG == 0.0:
        return R, s ** (2.0 / (n + 1))
    if s == 0.0:
        return R, -math.copysign(math.inf, t * dG)
    dR = s ** (2.0 / (n + 1)) - s ** ((1.0 - n) / (1.0 + n)) * t * r * dG / (2.0 * math.sqrt(G))
    return R, dR


def _slack(model, t):
    return 4.0 * _EPS * max(abs(t), model.t0)


def area_radius(model, t, r):
    """Area radius R(t, r); R(0, r) = r exactly.

    Raises:
        PastSingularity: t is beyond the singularity time of shell r.
    """
    if r == 0.0:
        return 0.0
    return _radius_terms(model, r, t - model.t0, _slack(model, t))[0]


def area_radius_r_derivative(model, t, r):
    """Analytic partial derivative R' = dR/dr at fixed t."""
    return _radius_terms(model, r, t - model.t0, _slack(model, t))[1]


def alpha_factor(model, r, u):
    """e^alpha = R' + R nu' along the radial reduction, at t = t0 + u."""
    R, dR = _radius_terms(model, r, u)
    return dR + R * nu_prime_eval(model, r)


def density(model, t, r):
    """Energy density along the radial reduction (nu' from the series).

    Raises:
        ShellCross: |R' + R nu'| below 1e-12.
        PastSingularity: beyond the singularity curve.
    """
    n = model.n
    R, dR = _radius_terms(model, r, t - model.t0, _slack(model, t))
    nup = nu_prime_eval(model, r)
    e_alpha = dR + R * nup
    if abs(e_alpha) < SHELL_CROSS_TOL:
        raise ShellCross(f"R' + R nu' = {e_alpha!r} at (t={t!r}, r={r!r})")
    F, dF = F_eval(model, r)
    return 0.5 * n * (dF + (n + 1) * F * nup) / (R**n * e_alpha)


def initial_density(model, r):
    """Density on the t = 0 slice, (n/2)(F' + (n+1)F nu') / (r^n (1 + r nu'))."""
    n = model.n
    F, dF = F_eval(model, r)
    nup = nu_prime_eval(model, r)
    return 0.5 * n * (dF + (n + 1) * F * nup) / (r**n * (1.0 + r * nup))


@dataclass
class QuasiSphericalGeometry:
    """Chart functions A(r), B_i(r), C(r) with e^{-nu} = A|x|^2 + B.x + C.

    Each entry is a callable of r. Radial derivatives may be supplied;
    otherwise they are taken by central differences.
    """

    A: object
    B: list
    C: object
    dA: object = None
    dB: list = None
    dC: object = None

    def constraint(self, r):
        """sum B_i^2 - 4AC + 1, zero for a marginally bound chart."""
        return sum(b(r) ** 2 for b in self.B) - 4.0 * self.A(r) * self.C(r) + 1.0

    def e_minus_nu(self, r, x):
        x = np.asarray(x, dtype=float)
        return self.A(r) * float(x @ x) + sum(b(r) * xi for b, xi in zip(self.B, x)) + self.C(r)

    def d_e_minus_nu(self, r, x):
        """Radial derivative of e^{-nu} at fixed x."""
        x = np.asarray(x, dtype=float)
        if self.dA is not None and self.dB is not None and self.dC is not None:
            return self.dA(r) * float(x @ x) + sum(b(r) * xi for b, xi in zip(self.dB, x)) + self.dC(r)
        h = 1e-6 * max(1.0, abs(r))
        return (self.e_minus_nu(r + h, x) - self.e_minus_nu(r - h, x)) / (2.0 * h)


@dataclass
class GeometryReport:
    passed: bool
    max_violation: float
    violations: list = field(default_factory=list)
    tol: float = 1e-10


def validate_geometry(geom, r_samples, tol=1e-10):
    """Check sum B_i^2 - 4AC = -1 at every sample radius."""
    violations = [(r, abs(geom.constraint(r))) for r in r_samples]
    worst = max((v for _, v in violations), default=0.0)
    return GeometryReport(worst <= tol, worst, violations, tol)


def metric_factors(model, geom, t, r, x):
    """(e^alpha, e^beta) = (R' + R nu', R e^nu) at a point of the chart.

    Here nu' is the radial derivative of the chart function itself.

    Raises:
        BadChart: e^{-nu} <= 0 at (r, x).
    """
    emn = geom.e_minus_nu(r, x)
    if not emn > 0.0:
        raise BadChart(f"e^-nu = {emn!r} <= 0 at r={r!r}, x={list(x)!r}")
    nu_r = -geom.d_e_minus_nu(r, x) / emn
    R, dR = _radius_terms(model, r, t - model.t0, _slack(model, t))
    return dR + R * nu_r, R / emn


def singularity_offset(model, r):
    """t_s(r) - t0 from the exact curve, computed without cancellation."""
    _, _, delta = _mass_shape(model, r)
    return model.t0 * math.expm1(-0.5 * math.log1p(delta))


def horizon_gap(model, r):
    """t_s(r) - t_ah(r) = (2/(n+1)) F(r)^(1/(n-1)) > 0."""
    n = model.n
    F, _ = F_eval(model, r)
    if not F > 0.0:
        raise NonPositiveMass(f"F(r) <= 0 at r={r!r}")
    return 2.0 / (n + 1) * F ** (1.0 / (n - 1))


def _leading_singularity_offset(model, r):
    try:
        m, Fm = find_m(model)
    except Homogeneous:
        return 0.0
    return -Fm * r**m / ((model.n + 1) * model.F0**1.5)


def singularity_time(model, r):
    """Exact t_s(r) and its leading series t0 - F_m r^m / ((n+1) F_0^{3/2})."""
    exact = model.t0 + singularity_offset(model, r)
    return exact, model.t0 + _leading_singularity_offset(model, r)


def horizon_time(model, r):
    """Exact t_ah(r) from R^{n-1} = F and its leading series.

    The series keeps the two displayed leading terms: the singularity-curve
    term and -(2/(n+1)) F_0^{1/(n-1)} r^{(n+1)/(n-1)}.
    """
    n = model.n
    exact = model.t0 + singularity_offset(model, r) - horizon_gap(model, r)
    series = (
        model.t0
        + _leading_singularity_offset(model, r)
        - 2.0 / (n + 1) * model.F0 ** (1.0 / (n - 1)) * r ** ((n + 1) / (n - 1))
    )
    return exact, series


def horizon_offset(model, r):
    """t_ah(r) - t0 without cancellation."""
    return singularity_offset(model, r) - horizon_gap(model, r)


@dataclass
class CollapseCurves:
    """Tabulated singularity and apparent-horizon curves."""

    r: np.ndarray
    t_s_exact: np.ndarray
    t_s_series: np.ndarray
    t_ah_exact: np.ndarray
    t_ah_series: np.ndarray

    def rows(self):
        return zip(self.r, self.t_s_exact, self.t_s_series, self.t_ah_exact, self.t_ah_series)


def collapse_curves(model, r_grid):
    r_grid = np.asarray(r_grid, dtype=float)
    if r_grid.size == 0 or np.any(r_grid <= 0.0):
        raise ValueError("curves need a non-empty grid of positive radii")
    ts = np.array([singularity_time(model, r) for r in r_grid])
    tah = np.array([horizon_time(model, r) for r in r_grid])
    return CollapseCurves(r_grid, ts[:, 0], ts[:, 1], tah[:, 0], tah[:, 1])
