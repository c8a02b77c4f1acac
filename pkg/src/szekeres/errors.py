"""Exception hierarchy shared by all modules."""


class SzekeresError(Exception):
    """Base class for every error raised by this package."""


class InvalidModel(SzekeresError, ValueError):
    """The initial data violates a model invariant."""


class NonPositiveCentralMass(InvalidModel):
    """F_0 must be strictly positive."""


class NuBelowLowerBound(InvalidModel):
    """The leading Laurent coefficient of nu' must be >= -1."""


class BadDimension(InvalidModel):
    """The dimension parameter n must be an integer >= 2."""


class Homogeneous(SzekeresError):
    """All mass coefficients beyond F_0 vanish, so no index m exists."""


class WrongBranch(SzekeresError, ValueError):
    """A density relation was requested outside its nu_{-1} branch."""


class DivisionByNuZero(SzekeresError, ZeroDivisionError):
    """The boundary-branch density relations divide by nu_0."""


class DomainError(SzekeresError, ValueError):
    """Argument outside the domain of the evaluated function."""


class PastSingularity(DomainError):
    """The requested (t, r) lies beyond the shell-focusing singularity."""


class NonPositiveMass(DomainError):
    """The truncated mass function is not positive at this radius."""


class ShellCross(SzekeresError):
    """R' + R nu' vanishes: a shell-crossing point."""


class BadChart(DomainError):
    """e^{-nu} is not positive at the requested point."""


class NoSolution(SzekeresError):
    """No consistent asymptotic geodesic exists for this case.

    Attributes:
        reason: short human-readable explanation.
    """

    def __init__(self, reason):
        super().__init__(reason)
        self.reason = reason


class NoRoot(NoSolution):
    """The amplitude polynomial has no sign change on (0, -zeta)."""


class WrongCase(SzekeresError, ValueError):
    """A second-order analysis was applied to the wrong solution case."""


class BadAmplitude(SzekeresError, ValueError):
    """The tangent-field amplitude A must be positive."""


class InadmissibleProfile(SzekeresError, ValueError):
    """The mass coefficients contradict the assumed density profile."""


class NoSignChange(SzekeresError, ValueError):
    """The bracketing interval does not straddle a root."""


class StepUnderflow(SzekeresError, ArithmeticError):
    """The adaptive integrator needed a step below the floor."""


class InsufficientSamples(SzekeresError, ValueError):
    """Too few path samples fall inside the fit window."""


class NonPositiveOrdinate(SzekeresError, ValueError):
    """t - t0 is not positive somewhere inside the fit window."""
