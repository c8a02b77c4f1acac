"""Integrate a null ray outward and recover its exponent by a log-log fit.

The launch sits on the asymptotic ray at r = 1e-8; the fit uses the two
deepest decades, where the leading power law dominates.
"""

from szekeres import fit_power_law, integrate_null_geodesic, model, solve_xi_gt_m

for n, F in ((2, [1.0, -0.3]), (3, [1.0, -0.5]), (5, [1.0, -0.4])):
    mdl = model(n, F)
    sol = solve_xi_gt_m(mdl)
    r0 = 1e-8
    path = integrate_null_geodesic(mdl, r0, None, 1e-3, dt_start=sol.a * r0**sol.xi)
    fit = fit_power_law(path, mdl.t0, (1e-8, 1e-6))
    print(
        f"n={n}: xi {sol.xi:.5f} vs fit {fit.xi_est:.5f}, "
        f"a {sol.a:.5f} vs fit {fit.a_est:.5f} ({path.terminal_event.value})"
    )
