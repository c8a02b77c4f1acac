"""Asymptotic outgoing null rays.

For m below the critical index the ray is t0 + a r^xi with xi > m. When m
hits the index (n = 2 or 3) the amplitude comes from the phi equation and
there may be several roots.
"""

from szekeres import NoRoot, phi_roots, solve_xi_eq_m, solve_xi_gt_m, model

sol = solve_xi_gt_m(model(5, [1.0, -0.4]))
print(f"n=5, m=1: xi={sol.xi_exact} a={sol.a:.6g}")

for zeta in (-10.0, -50.0, -150.0):
    F0 = 1.0
    mdl = model(3, [F0, 0.0, zeta * F0**2], [0.5])
    print(f"n=3, zeta={zeta}: phi roots {[round(r.phi, 4) for r in phi_roots(3, zeta, 0.5)]}")
    try:
        eq = solve_xi_eq_m(mdl)
    except NoRoot:
        print("  no outgoing ray at this depth")
        continue
    print(f"  smallest-a ray: xi={eq.xi_exact} a={eq.a:.6g}")
