"""Outgoing radial null geodesics t = t0 + a r^xi + h r^(xi + sigma)
emanating from the central singularity.

Two regimes exist. When xi > m the exponent and amplitude are explicit.
When xi = m (only possible for m = (n+1)/(n-1), i.e. n = 2, 3) the
amplitude solves an implicit equation; in the variables

    a = b F_0^(1/(n-1)),   F_m = zeta F_0^(m/2 + 1),   phi = -(n+1) b - zeta

it becomes the polynomial condition phi_residual(...) = 0 on 0 < phi < -zeta.
"""

import enum
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from .errors import NoRoot, NoSignChange, NoSolution, WrongCase
from .numeric import find_root_bracketing
from .series import find_m

DEFAULT_CELLS = 1024
REFINED_CELLS = 4096
ROOT_RTOL = 1e-12
AMPLITUDE_RTOL = 1e-8


class NullCase(enum.Enum):
    XI_GT_M = "XiGreaterThanM"
    XI_EQ_M = "XiEqualsM"


class Family(enum.Enum):
    SINGLE = "SingleGeodesic"
    ENTIRE = "EntireFamily"


@dataclass(frozen=True)
class PhiRoot:
    phi: float
    b: float
    a: float
    amplitude_residual: float


@dataclass(frozen=True)
class NullGeodesicSolution:
    """Leading (and optionally next-order) data of an outgoing null ray.

    ``h`` is None when the second-order amplitude is arbitrary (xi = m)
    or not yet computed. ``roots`` lists every admissible phi root in the
    xi = m case; the solution itself carries the smallest-a root.
    """

    case: NullCase
    n: int
    m: int
    xi: float
    a: float
    sigma: float = None
    h: float = None
    family: Family = None
    phi: float = None
    b: float = None
    zeta: float = None
    roots: tuple = field(default=(), repr=False)
    tbl_reduction: bool = False

    @property
    def xi_exact(self):
        if self.case is NullCase.XI_GT_M:
            return Fraction(self.n + 1 + 2 * self.m, self.n + 1)
        return Fraction(self.m)


def amplitude_base(model, Fm):
    """(-F_m / (2 F_0)), the base of every fractional amplitude power."""
    return -Fm / (2.0 * model.F0)


def solve_xi_gt_m(model):
    """Leading-order ray with xi = 1 + 2m/(n+1) > m.

    Raises:
        Homogeneous: no index m exists.
        NoSolution: m >= (n+1)/(n-1), F_m >= 0, or a <= 0.
    """
    n = model.n
    m, Fm = find_m(model)
    if m * (n - 1) >= n + 1:
        raise NoSolution(f"m={m} >= (n+1)/(n-1)={n + 1}/{n - 1}: xi > m impossible")
    base = amplitude_base(model, Fm)
    if not base > 0.0:
        raise NoSolution(f"F_m={Fm!r} >= 0: no real amplitude")
    xi = 1.0 + 2.0 * m / (n + 1)
    a = (model.nu_m1 + xi) / xi * base ** (2.0 / (n + 1))
    if not a > 0.0:
        raise NoSolution(f"amplitude a={a!r} is not positive")
    return NullGeodesicSolution(
        NullCase.XI_GT_M, n, m, xi, a, tbl_reduction=(model.nu_m1 == 0.0)
    )


def phi_residual(n, zeta, nu_m1, phi):
    """g(phi) = 4 phi^(n-1) (zeta + phi)^(n+1) - [2 zeta - (n-1)(nu_-1 + 1) phi]^(n+1)."""
    return 4.0 * phi ** (n - 1) * (zeta + phi) ** (n + 1) - (
        2.0 * zeta - (n - 1) * (nu_m1 + 1.0) * phi
    ) ** (n + 1)


def amplitude_residual(n, m, zeta, nu_m1, b):
    """Relative residual of the implicit amplitude equation in (b, zeta).

    This is the form before the substitution to phi, so it checks the
    polynomial route independently.
    """
    inner = -(n + 1) * b - zeta
    if not inner > 0.0:
        return np.inf
    lhs = 2.0 ** (2.0 / (n + 1)) * b * m
    rhs = -inner ** (-1.0 / m) * ((nu_m1 + m) * zeta + (n + 1) * (nu_m1 + 1.0) * b)
    scale = max(abs(lhs), abs(rhs))
    return abs(lhs - rhs) / scale if scale > 0.0 else 0.0


def scan_phi_roots(n, zeta, nu_m1, cells=DEFAULT_CELLS):
    """All sign-change roots of g on (0, -zeta) at the given grid size."""
    grid = np.linspace(0.0, -zeta, cells + 1)
    g = phi_residual(n, zeta, nu_m1, grid)
    f = lambda p: phi_residual(n, zeta, nu_m1, p)  # noqa: E731
    roots = []
    for k in range(cells):
        lo, hi = grid[k], grid[k + 1]
        if g[k] == 0.0 and 0 < k:
            roots.append(lo)
        elif g[k] * g[k + 1] < 0.0:
            try:
                roots.append(find_root_bracketing(f, lo, hi, ROOT_RTOL))
            except NoSignChange:  # pragma: no cover - guarded by the sign test
                pass
    return roots


def phi_roots(n, zeta, nu_m1, cells=DEFAULT_CELLS, a_scale=1.0):
    """Scan, refine once if nothing is found, and return PhiRoot records.

    Roots are sorted by decreasing phi, i.e. increasing amplitude, so the
    first entry is the smallest-a root. ``a_scale`` is F_0^(1/(n-1)).
    """
    if not zeta < 0.0:
        raise ValueError(f"zeta must be negative, got {zeta!r}")
    m = Fraction(n + 1, n - 1)
    roots = scan_phi_roots(n, zeta, nu_m1, cells)
    if not roots:
        roots = scan_phi_roots(n, zeta, nu_m1, max(REFINED_CELLS, 4 * cells))
    out = []
    for phi in sorted(roots, reverse=True):
        if not 0.0 < phi < -zeta:
            continue
        b = -(phi + zeta) / (n + 1)
        if not b > 0.0:
            continue
        res = amplitude_residual(n, float(m), zeta, nu_m1, b)
        out.append(PhiRoot(phi, b, b * a_scale, res))
    return out


def solve_xi_eq_m(model, cells=DEFAULT_CELLS):
    """Leading-order ray with xi = m = (n+1)/(n-1).

    Raises:
        NoSolution: n not in {2, 3}, m is not critical, or F_m >= 0.
        NoRoot: g has no sign change on (0, -zeta).
    """
    n = model.n
    m, Fm = find_m(model)
    if n not in (2, 3) or m * (n - 1) != n + 1:
        raise NoSolution(
            f"xi = m needs m = (n+1)/(n-1) integral (n = 2, 3); got n={n}, m={m}"
        )
    zeta = Fm * model.F0 ** (-(m / 2.0 + 1.0))
    if not zeta < 0.0:
        raise NoSolution(f"zeta={zeta!r} must be negative")
    found = phi_roots(n, zeta, model.nu_m1, cells, model.F0 ** (1.0 / (n - 1)))
    found = [p for p in found if p.amplitude_residual <= AMPLITUDE_RTOL]
    if not found:
        raise NoRoot(f"no root of the phi equation on (0, {-zeta!r})")
    best = found[0]
    return NullGeodesicSolution(
        NullCase.XI_EQ_M,
        n,
        m,
        float(m),
        best.a,
        phi=best.phi,
        b=best.b,
        zeta=zeta,
        roots=tuple(found),
        tbl_reduction=(model.nu_m1 == 0.0),
    )


def second_order_xi_gt_m(model, sol):
    """(sigma, h, family) of the next-order term for the xi > m ray."""
    if sol.case is not NullCase.XI_GT_M:
        raise WrongCase("second_order_xi_gt_m needs an xi > m solution")
    n, m = model.n, sol.m
    _, Fm = find_m(model)
    sigma = m * (1.0 - n) / (1.0 + n) + 1.0
    h = (
        sol.a
        / (sol.xi + sigma)
        * (-model.nu_m1 - sigma)
        * np.sqrt(model.F0)
        * amplitude_base(model, Fm) ** ((1.0 - n) / (1.0 + n))
    )
    family = Family.ENTIRE if h > 0.0 else Family.SINGLE
    return sigma, float(h), family


def second_order_xi_eq_m(model, sol):
    """(sigma, family) for the xi = m ray; h is arbitrary there."""
    if sol.case is not NullCase.XI_EQ_M or sol.b is None or sol.zeta is None:
        raise WrongCase("second_order_xi_eq_m needs an xi = m solution with b, zeta")
    n, m = model.n, sol.m
    phi = -sol.zeta - (n + 1) * sol.b
    k = 2.0 ** ((n - 1.0) / (n + 1.0))
    sigma = -m + k * (
        sol.b * (n + 1) * phi ** (-2.0 * n / (n + 1))
        - model.nu_m1 * model.F0**-0.5 * phi ** ((1.0 - n) / (1.0 + n))
    )
    family = Family.ENTIRE if sigma > 0.0 else Family.SINGLE
    return float(sigma), family


def with_second_order(model, sol):
    """Return ``sol`` with sigma, h and family filled in."""
    if sol.case is NullCase.XI_GT_M:
        sigma, h, family = second_order_xi_gt_m(model, sol)
        return replace(sol, sigma=sigma, h=h, family=family)
    sigma, family = second_order_xi_eq_m(model, sol)
    return replace(sol, sigma=sigma, h=None, family=family)
