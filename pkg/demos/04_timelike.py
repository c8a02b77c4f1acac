"""Radial time-like geodesics t = t0 + c r^p for the three cases of q."""

from szekeres import model, solve_ortg, solve_xi_gt_m

mdl = model(3, [1.0, -0.3], [0.2])
edge = -2 * 1 / (3 + 1)
for q in (0.5, -1.5, edge):
    sol = solve_ortg(mdl, A=2.0, q=q)
    print(f"q={q:+.3f}: {sol.case.value} p={sol.p:.4f} c={sol.c:.6g}")

null = solve_xi_gt_m(mdl)
print("case II amplitude equals the null amplitude:", solve_ortg(mdl, 2.0, -1.5).c == null.a)
