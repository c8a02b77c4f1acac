"""Initial density profiles and the index m.

Builds a gradual and a rapid fall-off model, prints the density series
coefficients and checks where the first non-zero mass coefficient sits.
"""

from szekeres import find_m, initial_density, model, rho_coeffs

gradual = model(3, [1.0, -0.3, 0.1])
rapid = model(3, [1.0, 0.0, -0.5])

for name, mdl in (("gradual", gradual), ("rapid", rapid)):
    m, Fm = find_m(mdl)
    print(f"{name}: m={m}, F_m={Fm}, crit={mdl.critical_m}")
    print("  density coefficients:", rho_coeffs(mdl))
    for r in (1e-3, 1e-2, 1e-1):
        print(f"  rho(0, {r:g}) = {initial_density(mdl, r):.6g}")
