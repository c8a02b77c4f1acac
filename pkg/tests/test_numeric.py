import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import solve_ivp

from szekeres import (
    DomainError,
    GeodesicPath,
    InsufficientSamples,
    IntegrationControls,
    NonPositiveOrdinate,
    NoSignChange,
    PastSingularity,
    TerminalEvent,
    alpha_factor,
    find_root_bracketing,
    fit_power_law,
    integrate_null_geodesic,
    model,
    solve_xi_gt_m,
)
from szekeres.kinematics import horizon_offset, singularity_offset
from szekeres.null_geodesics import phi_residual

HOM2 = model(2, [1.0])


def closed_form(r):
    """Outgoing ray of homogeneous n = 2 dust from (r, t) = (1, 0)."""
    return (1.0 - (1.0 - (r - 1.0) / 2.0) ** 3) / 1.5


def test_root_finder_sqrt2():
    x = find_root_bracketing(lambda x: x * x - 2.0, 1.0, 2.0, 1e-12)
    assert abs(x - math.sqrt(2.0)) <= 1e-12 * math.sqrt(2.0)


def test_root_finder_errors():
    with pytest.raises(NoSignChange):
        find_root_bracketing(lambda x: x - 5.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        find_root_bracketing(lambda x: x, 1.0, 0.0)
    assert find_root_bracketing(lambda x: x, 0.0, 1.0) == 0.0


def test_root_finder_phi_bracket():
    f = lambda p: phi_residual(2, -100.0, 0.0, p)  # noqa: E731
    x = find_root_bracketing(f, 0.1, 25.0)
    assert 0.1 < x < 25.0 and abs(f(x)) < 1e-6 * abs(f(0.1))


@settings(max_examples=50, deadline=None)
@given(root=st.floats(-50.0, 50.0), width=st.floats(0.1, 10.0), shift=st.floats(0.05, 0.95))
def test_root_finder_property(root, width, shift):
    lo, hi = root - shift * width, root + (1 - shift) * width
    x = find_root_bracketing(lambda x: (x - root) * (1 + (x - root) ** 2), lo, hi, 1e-12)
    assert abs(x - root) <= 1e-12 * max(abs(root), 1e-300) + 1e-15 * width + 1e-300


def test_integrator_matches_closed_form():
    path = integrate_null_geodesic(HOM2, 1.0, 0.0, 2.5)
    assert path.terminal_event is TerminalEvent.REACHED_END
    assert np.max(np.abs(path.t - closed_form(path.r))) < 1e-8
    assert np.all(np.diff(path.r) > 0)


def test_fixed_step_order():
    # the same right-hand side and the same DOP853 pair with the step pinned
    f = lambda r, y: [alpha_factor(HOM2, r, y[0] - HOM2.t0)]  # noqa: E731
    errs = []
    for h in (0.25, 0.125, 0.0625):
        sol = solve_ivp(f, (1.0, 2.5), [0.0], method="DOP853", first_step=h, max_step=h, rtol=1e3, atol=1e3)
        errs.append(abs(sol.y[0, -1] - closed_form(2.5)))
    orders = [math.log2(a / b) for a, b in zip(errs, errs[1:])]
    assert min(orders) >= 8.0


def test_tolerance_controls_error():
    errs = []
    for tol in (1e-6, 1e-8, 1e-10):
        p = integrate_null_geodesic(HOM2, 1.0, 0.0, 2.5, IntegrationControls(rtol=tol))
        errs.append(abs(p.t[-1] - closed_form(2.5)))
    assert errs[0] > errs[1] > errs[2]


def test_launch_validation():
    mdl = model(3, [1.0, -0.3], [0.5])
    with pytest.raises(PastSingularity):
        integrate_null_geodesic(mdl, 1e-3, mdl.t0 + 0.1, 1e-2)
    with pytest.raises(DomainError):
        integrate_null_geodesic(mdl, 1e-9, 0.0, 1e-2)


def test_backward_launch_stays_below_singularity():
    mdl = model(2, [1.0, -0.3], [0.5])
    sol = solve_xi_gt_m(mdl)
    path = integrate_null_geodesic(mdl, 1e-3, None, 1e-8, dt_start=sol.a * 1e-3**sol.xi)
    assert np.all(np.diff(path.r) < 0)
    gaps = np.array([singularity_offset(mdl, r) for r in path.r]) - path.dt
    assert np.all(gaps[:-1] > 0)
    assert path.terminal_event in (TerminalEvent.HIT_SINGULARITY, TerminalEvent.REACHED_END)
    assert abs(path.dt[-1]) < 0.05 * abs(path.dt[0])


def test_event_ordering():
    mdl = model(3, [1.0, -0.3], [0.5])
    r0 = 0.05
    u0 = horizon_offset(mdl, r0) - 1e-4
    path = integrate_null_geodesic(mdl, r0, None, 5.0, dt_start=u0)
    assert path.terminal_event is TerminalEvent.HIT_SINGULARITY
    assert path.horizon_crossings and path.horizon_crossings[0] < path.r[-1]
    stop = integrate_null_geodesic(mdl, r0, None, 5.0, IntegrationControls(stop_at_horizon=True), dt_start=u0)
    assert stop.terminal_event is TerminalEvent.HIT_HORIZON
    assert stop.r[-1] == pytest.approx(path.horizon_crossings[0], rel=1e-8)


def test_samples_stay_before_singularity():
    mdl = model(5, [1.0, -0.6], [0.1])
    sol = solve_xi_gt_m(mdl)
    path = integrate_null_geodesic(mdl, 1e-8, None, 1e-2, dt_start=sol.a * 1e-16 ** (sol.xi / 2))
    gaps = np.array([singularity_offset(mdl, r) for r in path.r]) - path.dt
    assert np.all(gaps[:-1] > 0) or path.terminal_event is TerminalEvent.HIT_SINGULARITY


def test_fit_synthetic_power_law():
    # offsets are stored exactly; t0 + 2 r^1.5 itself would round at 1e-8 relative
    r = np.geomspace(1e-7, 1e-3, 200)
    t0 = 0.5
    path = GeodesicPath(r, t0 + 2.0 * r**1.5, 2.0 * r**1.5, t0, TerminalEvent.REACHED_END)
    fit = fit_power_law(path, t0)
    assert fit.xi_est == pytest.approx(1.5, rel=1e-10)
    assert fit.a_est == pytest.approx(2.0, rel=1e-10)
    assert fit.r_window[0] >= 1e-6 * (1 - 1e-12) and fit.r_window[1] <= 1e-4 * (1 + 1e-12)
    assert math.isfinite(fit.residual_rms)


def test_fit_errors():
    r = np.array([1e-6, 1e-5, 1e-4])
    with pytest.raises(InsufficientSamples):
        fit_power_law((r, 1.0 + r), 1.0)
    r = np.geomspace(1e-6, 1e-4, 20)
    with pytest.raises(NonPositiveOrdinate):
        fit_power_law((r, 1.0 - r), 1.0)


@pytest.mark.parametrize(
    "n, F, nu",
    [
        (2, [1.0, -0.3], [0.5]),
        (2, [1.0, 0.0, -0.2], [0.0]),
        (3, [1.0, -0.3], [0.5]),
        (5, [1.0, -0.5], [0.2]),
    ],
)
def test_oracle_round_trip(n, F, nu):
    """Forward launch from r_floor on the asymptotic ray, fit on the default window."""
    mdl = model(n, F, nu)
    sol = solve_xi_gt_m(mdl)
    r0 = IntegrationControls().r_floor
    path = integrate_null_geodesic(mdl, r0, None, 1e-3, dt_start=sol.a * r0**sol.xi)
    fit = fit_power_law(path, mdl.t0)
    assert fit.xi_est == pytest.approx(sol.xi, rel=0.01)
