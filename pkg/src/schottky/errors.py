"""Exception types shared across the package."""


class SchottkyError(Exception):
    """Base class for all errors raised by this package."""


class NotLoxodromicError(SchottkyError):
    """Element is not strictly loxodromic (tr^2 too close to the segment [0, 4])."""


class DegenerateFixedPointsError(SchottkyError):
    """Two fixed points (or normalization points) coincide."""


class ImageIsLineError(SchottkyError):
    """The Moebius image of a circle passes through infinity."""


class CirclesMeetError(SchottkyError):
    """Circles intersect or are tangent; inversive distance |delta| <= 1."""


class BranchPoleError(SchottkyError):
    """Argument sits on a pole of the inverse trig/hyperbolic branch."""


class ZeroDenominatorError(SchottkyError):
    """A gap-function denominator vanished."""


class ZeroArgumentError(SchottkyError):
    """Logarithm of zero requested."""


class NotHyperbolicTripleError(SchottkyError):
    """Trace triple does not give a hyperbolic one-holed torus."""


class CuspDegenerateError(NotHyperbolicTripleError):
    """Trace triple sits exactly on the cusp boundary."""


class DegenerateFactorizationError(SchottkyError):
    """Involution factorization system is rank-deficient."""


class NonConvergenceError(SchottkyError):
    """Partial sums failed the Cauchy criterion at the requested bound."""


class InsufficientPrefixError(SchottkyError):
    """Too few computed levels to fit tail constants."""


class UncertifiedGroupError(SchottkyError):
    """No circle certificate available and the run was not forced."""


class PathExitsLoxodromyError(SchottkyError):
    """A tracked word stops being strictly loxodromic along a path."""


class PathValidationFailedError(SchottkyError):
    """A deformation path failed the per-sample loxodromy sweep."""

    def __init__(self, message: str, sample_index: int | None = None):
        super().__init__(message)
        self.sample_index = sample_index


class ConfigError(SchottkyError):
    """Bad CLI or file configuration."""
