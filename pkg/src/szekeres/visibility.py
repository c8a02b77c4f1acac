"""Local visibility of the central singularity.

Along a ray t = t0 + a r^xi the ratio of the slope of the apparent
horizon to the slope of the ray has the leading form

    coef_1 r^(m - xi) + coef_2 r^((n+1)/(n-1) - xi),

and the singularity is locally naked when its r -> 0 limit exceeds one.
The limit is taken symbolically from the signs and exact exponents; the
numerical ``slope_ratio_*`` evaluators are only sanity probes.
"""

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import Homogeneous, InadmissibleProfile, NoRoot, NoSolution
from .kinematics import horizon_offset
from .null_geodesics import solve_xi_eq_m, solve_xi_gt_m
from .series import find_m
from .timelike import solve_ortg


class DensityProfile(enum.Enum):
    RAPID_FALLOFF = "RapidFalloff"
    GRADUAL_DECREASE = "GradualDecrease"


class Outcome(enum.Enum):
    LOCALLY_NAKED = "LocallyNaked"
    BLACK_HOLE = "BlackHole"
    NO_CONSISTENT_GEODESIC = "NoConsistentGeodesic"


class GeodesicKind(enum.Enum):
    NULL = "Null"
    TIMELIKE = "Timelike"
    BOTH = "Both"
    NONE = "None"


class CaseTag(enum.Enum):
    M_GT_CRIT = "M_GT_Crit"
    M_LT_CRIT_XI_GT_M = "M_LT_Crit_XiGtM"
    M_LT_CRIT_XI_EQ_M = "M_LT_Crit_XiEqM"
    M_EQ_CRIT_XI_GT_M = "M_EQ_Crit_XiGtM"
    M_EQ_CRIT_XI_EQ_M = "M_EQ_Crit_XiEqM"
    HOMOGENEOUS = "Homogeneous"


@dataclass(frozen=True)
class Evidence:
    """Geodesic solutions behind a verdict and their limiting slope ratios.

    A limit of ``math.inf`` marks a ratio that diverges to +infinity.
    """

    null: object = None
    timelike: object = None
    null_limit: float = None
    timelike_limit: float = None
    bound_satisfied: bool = None
    notes: tuple = ()


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    geodesic_kind: GeodesicKind
    case_tag: CaseTag
    details: Evidence = field(default_factory=Evidence)


def _ratio_terms(model, amp, exp):
    """[(coef, exponent), ...] of the leading slope ratio for t0 + amp r^exp."""
    n = model.n
    m, Fm = find_m(model)
    crit = Fraction(n + 1, n - 1)
    c1 = -m * Fm / (amp * float(exp) * (n + 1) * model.F0**1.5)
    c2 = -2.0 * model.F0 ** (1.0 / (n - 1)) / (amp * float(exp) * (n - 1))
    return [(c1, m - exp), (c2, crit - exp)]


def _evaluate(terms, r):
    return sum(c * r ** float(e) for c, e in terms)


def ratio_limit(terms):
    """r -> 0+ limit of sum coef * r^exponent with exact exponents."""
    by_exp = {}
    for c, e in terms:
        by_exp[e] = by_exp.get(e, 0.0) + c
    live = {e: c for e, c in by_exp.items() if c != 0.0}
    if not live:
        return 0.0
    lowest = min(live)
    if lowest < 0:
        return math.copysign(math.inf, live[lowest])
    return live[lowest] if lowest == 0 else 0.0


def slope_ratio_null(model, sol, r):
    """Leading-order slope ratio along a null ray at radius r."""
    return _evaluate(_ratio_terms(model, sol.a, sol.xi_exact), r)


def slope_ratio_timelike(model, sol, r):
    """Leading-order slope ratio along a time-like ray at radius r."""
    return _evaluate(_ratio_terms(model, sol.c, sol.p_exact), r)


def null_limit(model, sol):
    return ratio_limit(_ratio_terms(model, sol.a, sol.xi_exact))


def timelike_limit(model, sol):
    return ratio_limit(_ratio_terms(model, sol.c, sol.p_exact))


def check_profile(model, profile):
    """Enforce the density-profile assumption on the mass coefficients.

    Raises:
        InadmissibleProfile: the coefficients contradict the profile.
    """
    profile = DensityProfile(profile)
    if model.is_boundary_branch:
        return
    F1, F2 = model.F(1), model.F(2)
    if profile is DensityProfile.RAPID_FALLOFF:
        if not (F1 == 0.0 and F2 < 0.0):
            raise InadmissibleProfile("rapid fall-off needs F_1 = 0 and F_2 < 0")
    elif not F1 < 0.0:
        raise InadmissibleProfile("gradual decrease needs F_1 < 0")


def escapes_horizon(model, sol, r_grid=None):
    """True if t0 + a r^xi stays below the exact t_ah(r) on the grid.

    Offsets from t0 are compared, so the test keeps full precision.
    """
    if r_grid is None:
        r_grid = np.geomspace(1e-6, 1e-3, 61)
    for r in r_grid:
        if not sol.a * r**sol.xi < horizon_offset(model, r):
            return False
    return True


def _null_branch(model, m, crit):
    """(tag, solution or None, limit or None, bound flag, notes)."""
    if m < crit:
        try:
            sol = solve_xi_gt_m(model)
        except NoSolution as exc:
            return CaseTag.M_LT_CRIT_XI_GT_M, None, None, None, (str(exc),)
        return CaseTag.M_LT_CRIT_XI_GT_M, sol, null_limit(model, sol), None, ()
    notes = []
    try:
        solve_xi_gt_m(model)
    except NoSolution as exc:
        notes.append(f"xi > m branch: {exc}")
    try:
        sol = solve_xi_eq_m(model)
    except (NoSolution, NoRoot) as exc:
        notes.append(str(exc))
        return CaseTag.M_EQ_CRIT_XI_EQ_M, None, None, None, tuple(notes)
    _, Fm = find_m(model)
    n = model.n
    bound = Fm < -2.0 * model.F0 ** (m / 2.0 + 1.0) - sol.a * (n + 1) * model.F0**1.5
    return CaseTag.M_EQ_CRIT_XI_EQ_M, sol, null_limit(model, sol), bound, tuple(notes)


def classify(model, density_profile, ortg_inputs=None):
    """Local-visibility verdict for a validated model.

    ``ortg_inputs`` is an optional (A, q) pair for the parallel time-like
    check; a naked verdict from either kind of geodesic makes the
    singularity locally naked.
    """
    try:
        m, _ = find_m(model)
    except Homogeneous:
        note = ("homogeneous model: outside the series expansion",)
        return Verdict(Outcome.BLACK_HOLE, GeodesicKind.NONE, CaseTag.HOMOGENEOUS, Evidence(notes=note))
    check_profile(model, density_profile)
    crit = model.critical_m
    if m > crit:
        return Verdict(Outcome.BLACK_HOLE, GeodesicKind.NONE, CaseTag.M_GT_CRIT)

    tag, nsol, nlim, bound, notes = _null_branch(model, m, crit)
    null_naked = nlim is not None and nlim > 1.0

    tsol = tlim = None
    time_naked = False
    if ortg_inputs is not None:
        A, q = ortg_inputs
        try:
            tsol = solve_ortg(model, A, q)
        except NoSolution as exc:
            notes = notes + (f"time-like: {exc}",)
        else:
            tlim = timelike_limit(model, tsol)
            time_naked = tlim > 1.0

    evidence = Evidence(nsol, tsol, nlim, tlim, bound, notes)
    if null_naked or time_naked:
        kind = {
            (True, True): GeodesicKind.BOTH,
            (True, False): GeodesicKind.NULL,
            (False, True): GeodesicKind.TIMELIKE,
        }[(null_naked, time_naked)]
        return Verdict(Outcome.LOCALLY_NAKED, kind, tag, evidence)
    if nsol is None and tsol is None:
        return Verdict(Outcome.NO_CONSISTENT_GEODESIC, GeodesicKind.NONE, tag, evidence)
    return Verdict(Outcome.BLACK_HOLE, GeodesicKind.NONE, tag, evidence)
