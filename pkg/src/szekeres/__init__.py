"""Marginally bound Szekeres dust collapse in n + 2 dimensions: asymptotic
geodesics from the central singularity and local-visibility verdicts."""

from .errors import *  # noqa: F401,F403
from .kinematics import (
    CollapseCurves,
    GeometryReport,
    QuasiSphericalGeometry,
    alpha_factor,
    area_radius,
    area_radius_r_derivative,
    collapse_curves,
    density,
    horizon_time,
    initial_density,
    metric_factors,
    singularity_time,
    validate_geometry,
)
from .null_geodesics import (
    Family,
    NullCase,
    NullGeodesicSolution,
    phi_roots,
    solve_xi_eq_m,
    solve_xi_gt_m,
    with_second_order,
)
from .numeric import (
    GeodesicPath,
    IntegrationControls,
    PowerLawFit,
    TerminalEvent,
    find_root_bracketing,
    fit_power_law,
    integrate_null_geodesic,
)
from .series import (
    DensityCoeffs,
    ModelParams,
    ValidatedModel,
    F_eval,
    find_m,
    model,
    nu_prime_eval,
    rho_coeffs,
    rho_coeffs_boundary,
    rho_coeffs_generic,
    validate,
)
from .timelike import TimelikeCase, TimelikeGeodesicSolution, comoving_check, solve_ortg
from .visibility import (
    CaseTag,
    DensityProfile,
    GeodesicKind,
    Outcome,
    Verdict,
    classify,
    slope_ratio_null,
    slope_ratio_timelike,
)

__version__ = "0.1.0"
