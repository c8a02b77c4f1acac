"""Initial-data series for marginally bound collapse.

The mass function and the radial derivative of the chart function are
given as truncated series

    F(r)   = sum_j F_j r^(n + j + 1),   j = 0 .. J
    nu'(r) = sum_j nu_j r^j,            j = -1 .. K

and the initial density coefficients rho_0 .. rho_3 follow from them.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BadDimension,
    DivisionByNuZero,
    DomainError,
    Homogeneous,
    NonPositiveCentralMass,
    NuBelowLowerBound,
    WrongBranch,
)


@dataclass(frozen=True)
class ModelParams:
    """Raw, unvalidated model input.

    ``F_coeffs`` holds F_0, F_1, ..., F_J and ``nu_coeffs`` holds
    nu_{-1}, nu_0, ..., nu_K. Missing trailing coefficients are zero.
    """

    n: int
    F_coeffs: tuple
    nu_coeffs: tuple = (0.0,)

    def __post_init__(self):
        object.__setattr__(self, "F_coeffs", tuple(float(c) for c in self.F_coeffs))
        object.__setattr__(self, "nu_coeffs", tuple(float(c) for c in self.nu_coeffs))

    @property
    def truncation_order(self):
        """Highest retained powers (J, K)."""
        return len(self.F_coeffs) - 1, len(self.nu_coeffs) - 2


@dataclass(frozen=True)
class ValidatedModel:
    """Model data that passed :func:`validate`.

    Only :func:`validate` should construct this; every downstream
    function takes it as its first argument.
    """

    n: int
    F_coeffs: tuple
    nu_coeffs: tuple

    @property
    def F0(self):
        return self.F_coeffs[0]

    @property
    def nu_m1(self):
        return self.nu_coeffs[0]

    @property
    def t0(self):
        """Time of central singularity formation, 2 / ((n+1) sqrt(F_0))."""
        return 2.0 / ((self.n + 1) * math.sqrt(self.F0))

    @property
    def critical_m(self):
        """(n+1)/(n-1) as an exact fraction."""
        return Fraction(self.n + 1, self.n - 1)

    @property
    def is_boundary_branch(self):
        return self.nu_m1 == -1.0

    def F(self, j):
        """Coefficient F_j (zero beyond the truncation)."""
        return self.F_coeffs[j] if j < len(self.F_coeffs) else 0.0

    def nu(self, j):
        """Coefficient nu_j for j >= -1 (zero beyond the truncation)."""
        k = j + 1
        return self.nu_coeffs[k] if k < len(self.nu_coeffs) else 0.0


def validate(params):
    """Check the model invariants and return a :class:`ValidatedModel`.

    Raises:
        BadDimension: n is not an integer >= 2.
        NonPositiveCentralMass: F_0 <= 0 or F is empty.
        NuBelowLowerBound: nu_{-1} < -1.
    """
    n = params.n
    if isinstance(n, bool) or int(n) != n or n < 2:
        raise BadDimension(f"n must be an integer >= 2, got {n!r}")
    F = tuple(params.F_coeffs)
    nu = tuple(params.nu_coeffs) or (0.0,)
    if not F or not F[0] > 0.0:
        raise NonPositiveCentralMass(f"F_0 must be > 0, got {F[0] if F else None!r}")
    if not all(math.isfinite(c) for c in F + nu):
        raise DomainError("series coefficients must be finite")
    if nu[0] < -1.0:
        raise NuBelowLowerBound(f"nu_-1 must be >= -1, got {nu[0]!r}")
    return ValidatedModel(int(n), F, nu)


def model(n, F, nu=(0.0,)):
    """Shorthand for ``validate(ModelParams(n, F, nu))``."""
    return validate(ModelParams(n, tuple(F), tuple(nu)))


def find_m(model):
    """Return ``(m, F_m)`` for the first non-zero F_j with j >= 1.

    The zero test is exact: coefficients are user input, not computed.
    """
    for j, c in enumerate(model.F_coeffs[1:], start=1):
        if c != 0.0:
            return j, c
    raise Homogeneous("all F_j vanish for j >= 1; the singularity curve is flat")


def rho_coeffs_generic(model):
    """Density coefficients rho_0..rho_3 for nu_{-1} > -1."""
    if model.nu_m1 == -1.0:
        raise WrongBranch("nu_-1 = -1 needs rho_coeffs_boundary")
    n = model.n
    F1, F2, F3 = model.F(1), model.F(2), model.F(3)
    nu0, nu1 = model.nu(0), model.nu(1)
    w = 1.0 + model.nu_m1
    half = n / 2.0
    rho0 = half * (n + 1) * model.F0
    rho1 = half * (n + 1 + 1.0 / w) * F1
    rho2 = half * ((n + 1 + 2.0 / w) * F2 - F1 * nu0 / w**2)
    rho3 = half * (
        (n + 1 + 3.0 / w) * F3
        - 2.0 * F2 * nu0 / w**2
        - (w * nu1 - nu0**2) / w**3 * F1
    )
    return DensityCoeffs((rho0, rho1, rho2, rho3))


def rho_coeffs_boundary(model):
    """Density coefficients rho_0..rho_3 for nu_{-1} = -1 (needs nu_0 != 0)."""
    if model.nu_m1 != -1.0:
        raise WrongBranch("rho_coeffs_boundary needs nu_-1 = -1")
    nu0 = model.nu(0)
    if nu0 == 0.0:
        raise DivisionByNuZero("nu_0 = 0 on the nu_-1 = -1 branch")
    n = model.n
    F0, F1, F2, F3, F4 = (model.F(j) for j in range(5))
    nu1, nu2, nu3 = model.nu(1), model.nu(2), model.nu(3)
    half = n / 2.0
    k2 = nu1**2 / nu0**3 - nu2 / nu0**2
    rho0 = half * (F1 / nu0 + (n + 1) * F0)
    rho1 = half * (2 * F2 / nu0 + ((n + 1) - nu1 / nu0**2) * F1)
    rho2 = half * (3 * F3 / nu0 + ((n + 1) - 2 * nu1 / nu0**2) * F2 + k2 * F1)
    rho3 = half * (
        4 * F4 / nu0
        + ((n + 1) - 3 * nu1 / nu0**2) * F3
        + 2 * k2 * F2
        + (2 * nu1 * nu2 / nu0**3 - nu3 / nu0**2 - nu1**3 / nu0**4) * F1
    )
    return DensityCoeffs((rho0, rho1, rho2, rho3))


def rho_coeffs(model):
    """Dispatch to the generic or boundary relation by nu_{-1}."""
    if model.is_boundary_branch:
        return rho_coeffs_boundary(model)
    return rho_coeffs_generic(model)


@dataclass(frozen=True)
class DensityCoeffs:
    rho: tuple

    def __getitem__(self, j):
        return self.rho[j]


def mass_ratio(model, r):
    """G(r) = F(r) / r^(n+1) together with G'(r).

    Both are ordinary polynomials in r, so they stay accurate near r = 0
    where F itself underflows.
    """
    G = 0.0
    dG = 0.0
    for j in range(len(model.F_coeffs) - 1, -1, -1):
        dG = dG * r + G
        G = G * r + model.F_coeffs[j]
    return G, dG


def mass_excess(model, r):
    """(G(r) - F_0) / F_0, evaluated without cancellation."""
    acc = 0.0
    for c in reversed(model.F_coeffs[1:]):
        acc = (acc + c) * r
    return acc / model.F0


def F_eval(model, r):
    """Truncated F(r) and F'(r)."""
    if r < 0:
        raise DomainError(f"r must be >= 0, got {r!r}")
    n = model.n
    G, dG = mass_ratio(model, r)
    F = G * r ** (n + 1)
    dF = (n + 1) * G * r**n + dG * r ** (n + 1)
    return F, dF


def nu_prime_eval(model, r):
    """Truncated Laurent series nu_{-1}/r + nu_0 + nu_1 r + ..."""
    if not r > 0:
        raise DomainError(f"nu' needs r > 0, got {r!r}")
    acc = 0.0
    for c in reversed(model.nu_coeffs[1:]):
        acc = acc * r + c
    return model.nu_m1 / r + acc
