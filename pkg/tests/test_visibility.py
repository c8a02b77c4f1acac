import math

import numpy as np
import pytest

from szekeres import (
    CaseTag,
    DensityProfile,
    GeodesicKind,
    InadmissibleProfile,
    Outcome,
    classify,
    model,
    slope_ratio_null,
    slope_ratio_timelike,
    solve_ortg,
    solve_xi_gt_m,
)
from szekeres.visibility import escapes_horizon, ratio_limit

RAPID = DensityProfile.RAPID_FALLOFF
GRADUAL = DensityProfile.GRADUAL_DECREASE


def test_ratio_limit():
    from fractions import Fraction as Fr

    assert ratio_limit([(2.0, Fr(-1, 3)), (-5.0, Fr(1))]) == math.inf
    assert ratio_limit([(-2.0, Fr(-1, 3)), (5.0, Fr(-1, 3))]) == math.inf
    assert ratio_limit([(1.5, Fr(0)), (3.0, Fr(2))]) == 1.5
    assert ratio_limit([(1.5, Fr(0)), (-0.5, Fr(0))]) == 1.0
    assert ratio_limit([(9.0, Fr(1, 2))]) == 0.0


def test_classify_examples():
    v = classify(model(5, [1.0, 0.0, -0.2], [0.5]), RAPID)
    assert v.outcome is Outcome.BLACK_HOLE and v.case_tag is CaseTag.M_GT_CRIT
    with pytest.raises(InadmissibleProfile):
        classify(model(5, [1.0, 0.0, -0.2], [0.5]), GRADUAL)

    v = classify(model(3, [1.0, -0.3], [0.5]), GRADUAL)
    assert v.outcome is Outcome.LOCALLY_NAKED and v.case_tag is CaseTag.M_LT_CRIT_XI_GT_M
    assert v.details.null.m == 1 and v.details.null.xi == 1.5 and v.details.null_limit == math.inf

    v = classify(model(2, [1.0, 0.0, -0.2], [0.5]), RAPID)
    assert v.outcome is Outcome.LOCALLY_NAKED and v.details.null.xi == pytest.approx(7 / 3)

    v = classify(model(2, [1.0, -0.3], [-1.0, 0.5]), RAPID)
    assert v.outcome is Outcome.LOCALLY_NAKED and v.details.null.m == 1


def test_homogeneous():
    v = classify(model(3, [2.0]), RAPID)
    assert v.outcome is Outcome.BLACK_HOLE and v.case_tag is CaseTag.HOMOGENEOUS
    assert v.details.notes


def test_profile_rules():
    with pytest.raises(InadmissibleProfile):
        classify(model(2, [1.0, -0.3]), RAPID)
    with pytest.raises(InadmissibleProfile):
        classify(model(2, [1.0, 0.0, 0.2]), RAPID)
    with pytest.raises(InadmissibleProfile):
        classify(model(2, [1.0, 0.3]), GRADUAL)
    v = classify(model(2, [1.0, 0.3], [-1.0, 1.0]), GRADUAL)
    assert v.outcome is Outcome.NO_CONSISTENT_GEODESIC


def test_m_eq_crit_branch():
    # the boundary branch leaves the profile unenforced, so n = 2 can reach m = 3
    mdl = model(2, [1.0, 0.0, 0.0, -100.0], [-1.0, 1.0])
    v = classify(mdl, RAPID)
    assert v.case_tag is CaseTag.M_EQ_CRIT_XI_EQ_M
    sol = v.details.null
    assert v.outcome is (Outcome.LOCALLY_NAKED if sol.phi > 2 else Outcome.BLACK_HOLE)
    assert v.details.bound_satisfied == (sol.phi > 2)
    assert any("xi > m" in n for n in v.details.notes)
    v = classify(model(2, [1.0, 0.0, 0.0, -1.0], [-1.0, 1.0]), RAPID)
    assert v.outcome is Outcome.NO_CONSISTENT_GEODESIC


def _critical_model(n, zeta, nu, F0=1.7):
    m = (n + 1) // (n - 1)
    F = [F0] + [0.0] * (m - 1) + [zeta * F0 ** (m / 2 + 1)]
    return model(n, F, [nu, 0.5] if nu == -1.0 else [nu]), F[m]


@pytest.mark.parametrize(
    "n, nu", [(3, -1.0), (3, -0.3), (3, 0.0), (3, 0.8), (3, 2.0), (2, -1.0)]
)
@pytest.mark.parametrize("zeta", [-300.0, -120.0, -60.0, -25.0, -15.0, -8.0])
def test_bound_equivalence(n, nu, zeta):
    mdl, Fm = _critical_model(n, zeta, nu)
    v = classify(mdl, RAPID)
    sol = v.details.null
    if sol is None:
        assert v.outcome is Outcome.NO_CONSISTENT_GEODESIC
        return
    bound = v.details.bound_satisfied
    assert bound == (sol.phi > 2)
    assert (v.outcome is Outcome.LOCALLY_NAKED) == bound
    if bound:
        assert sol.a < -(sol.m / ((n + 1) * sol.xi)) * Fm / mdl.F0**1.5
        assert escapes_horizon(mdl, sol)


def test_slope_ratio_probes():
    mdl = model(2, [1.0, 0.0, -0.2], [0.0])
    sol = solve_xi_gt_m(mdl)
    val = slope_ratio_null(mdl, sol, 1e-3)
    first = -2 * -0.2 / (sol.a * (7 / 3) * 3) * 1e-3 ** (2 - 7 / 3)
    second = -2 / (sol.a * (7 / 3)) * 1e-3 ** (3 - 7 / 3)
    assert val == pytest.approx(first + second, rel=1e-13)
    assert val > 0
    assert slope_ratio_null(mdl, sol, 1e-6) > slope_ratio_null(mdl, sol, 1e-3)
    tsol = solve_ortg(mdl, 1.0, -2.0)
    assert slope_ratio_timelike(mdl, tsol, 1e-3) == pytest.approx(val, rel=1e-15)


def test_case_i_timelike_limit():
    mdl = model(2, [1.0, 0.0, -0.2], [0.0])
    # p = 1 - q = 1/2 lies below m and crit, so both terms vanish
    v = classify(mdl, RAPID, (1.0, 0.5))
    assert v.details.timelike.p == 0.5
    assert v.details.timelike_limit == 0.0
    assert v.geodesic_kind is GeodesicKind.NULL
    assert slope_ratio_timelike(mdl, v.details.timelike, 1e-3) > 0


def test_m_gt_crit_is_always_black_hole():
    for n in range(2, 9):
        for m in range(1, 6):
            if m * (n - 1) <= n + 1:
                continue
            F = [1.0] + [0.0] * (m - 1) + [-0.5]
            mdl = model(n, F, [-1.0, 0.3])
            for ortg in (None, (1.0, -5.0), (2.0, 0.2)):
                v = classify(mdl, RAPID, ortg)
                assert v.outcome is Outcome.BLACK_HOLE and v.case_tag is CaseTag.M_GT_CRIT


def test_case_exhaustive_and_deterministic():
    for n in range(2, 9):
        for m in range(1, 6):
            F = [1.0] + [0.0] * (m - 1) + [-0.5]
            mdl = model(n, F, [-1.0, 0.3])
            a, b = classify(mdl, RAPID), classify(mdl, RAPID)
            assert a == b
            crit = (n + 1) / (n - 1)
            if m * (n - 1) > n + 1:
                assert a.case_tag is CaseTag.M_GT_CRIT
            elif m * (n - 1) == n + 1:
                assert a.case_tag is CaseTag.M_EQ_CRIT_XI_EQ_M
            else:
                assert a.case_tag is CaseTag.M_LT_CRIT_XI_GT_M and m < crit


def test_naked_verdicts_escape_horizon(rng):
    for _ in range(40):
        n = int(rng.integers(2, 4))
        F0 = rng.uniform(0.5, 2.0)
        mdl = model(n, [F0, -F0 * rng.uniform(0.05, 2.0)], [rng.uniform(-0.99, 2.0)])
        v = classify(mdl, GRADUAL)
        assert v.outcome is Outcome.LOCALLY_NAKED
        assert escapes_horizon(mdl, v.details.null)
    for n in range(4, 9):
        mdl = model(n, [1.0, -0.05], [1.0])
        sol = classify(mdl, GRADUAL).details.null
        probes = [slope_ratio_null(mdl, sol, r) for r in np.geomspace(1e-3, 1e-30, 10)]
        assert all(b > a for a, b in zip(probes, probes[1:]))
        assert probes[-1] > 1


def test_null_timelike_consistency(rng):
    for _ in range(30):
        n = int(rng.integers(2, 9))
        mdl = model(n, [1.0, -rng.uniform(0.05, 2.0)], [rng.uniform(-0.99, 2.0)])
        v = classify(mdl, GRADUAL, (rng.uniform(0.1, 5.0), -2 / (n + 1) - rng.uniform(0.01, 2.0)))
        assert v.details.timelike.c == v.details.null.a
        assert v.geodesic_kind is GeodesicKind.BOTH
