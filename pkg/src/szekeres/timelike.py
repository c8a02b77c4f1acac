"""Outgoing radial time-like geodesics t = t0 + c r^p near the centre.

The tangent field is modelled as K^r = A (t - t0)^lambda r^delta, which on
the geodesic reduces to A r^q with q = lambda p + delta. Only q enters the
solution, so :func:`solve_ortg` takes it directly.
"""

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadAmplitude, NoSolution
from .kinematics import alpha_factor
from .null_geodesics import amplitude_base
from .series import find_m

BOUNDARY_RTOL = 1e-12


class TimelikeCase(enum.Enum):
    CASE_I = "CaseI"
    CASE_II = "CaseII"
    CASE_III = "CaseIII"


@dataclass(frozen=True)
class TimelikeGeodesicSolution:
    case: TimelikeCase
    p: float
    c: float
    A: float
    q: float
    m: int
    n: int
    lam: float = None
    delta: float = None

    @property
    def p_exact(self):
        """p as a fraction; exact in cases II and III."""
        if self.case is TimelikeCase.CASE_I:
            return Fraction(self.p).limit_denominator(10**9)
        return Fraction(self.n + 1 + 2 * self.m, self.n + 1)


@dataclass(frozen=True)
class ComovingReport:
    passed: bool
    normalization_residual: float
    geodesic_residual: float


def comoving_check(model, t, r, K_t=1.0, K_r=0.0, tol=1e-12):
    """Check a constant tangent (K^t, K^r) against the radial geodesic system.

    The normalisation K^t = +-sqrt(1 + e^{2 alpha} (K^r)^2) is tested
    directly. For a constant field the geodesic equation reduces to
    2 alpha_t K^t K^r + alpha_r (K^r)^2, whose alpha derivatives are
    taken by central differences; with K^r = 0 it vanishes identically.
    """
    u = t - model.t0
    e_alpha = alpha_factor(model, r, u)
    norm = abs(K_t * K_t - 1.0 - e_alpha * e_alpha * K_r * K_r)
    if K_r == 0.0:
        geo = 0.0
    else:
        ht = 1e-6 * max(1.0, abs(t))
        hr = 1e-6 * r
        log_e = lambda rr, uu: math.log(abs(alpha_factor(model, rr, uu)))  # noqa: E731
        a_t = (log_e(r, u + ht) - log_e(r, u - ht)) / (2.0 * ht)
        a_r = (log_e(r + hr, u) - log_e(r - hr, u)) / (2.0 * hr)
        geo = abs(2.0 * a_t * K_t * K_r + a_r * K_r * K_r)
    return ComovingReport(norm <= tol and geo <= tol, norm, geo)


def solve_ortg(model, A, q, lam=None, delta=None):
    """Leading-order (p, c) of an outgoing radial time-like geodesic.

    Raises:
        BadAmplitude: A <= 0.
        Homogeneous: no index m exists.
        NoSolution: q >= 1, or F_m >= 0 in cases II/III.
    """
    if not A > 0.0:
        raise BadAmplitude(f"A must be > 0, got {A!r}")
    if q >= 1.0:
        raise NoSolution(f"q={q!r} >= 1: no case applies")
    n = model.n
    m, Fm = find_m(model)
    edge = -2.0 * m / (n + 1)
    on_edge = math.isclose(q, edge, rel_tol=BOUNDARY_RTOL, abs_tol=0.0)
    if q > edge and not on_edge:
        p = 1.0 - q
        return TimelikeGeodesicSolution(TimelikeCase.CASE_I, p, 1.0 / (A * p), A, q, m, n, lam, delta)
    base = amplitude_base(model, Fm)
    if not base > 0.0:
        raise NoSolution(f"F_m={Fm!r} >= 0: no real amplitude")
    p = 1.0 - edge
    k = model.nu_m1 + p
    if on_edge:
        c = math.sqrt(A**-2 + base ** (4.0 / (n + 1)) * k * k) / p
        case = TimelikeCase.CASE_III
    else:
        c = k / p * base ** (2.0 / (n + 1))
        case = TimelikeCase.CASE_II
    if not c > 0.0:
        raise NoSolution(f"amplitude c={c!r} is not positive")
    return TimelikeGeodesicSolution(case, p, c, A, q, m, n, lam, delta)
