"""Exception types shared across the package."""


class IrsOptError(Exception):
    """Base class for all package-specific errors."""


class ValidationError(IrsOptError, ValueError):
    """A domain object was constructed with invalid field values."""


class OutOfRangeError(IrsOptError, ValueError):
    """A coordinate or angle lies outside its admissible interval."""


class IndexOutOfBoundsError(IrsOptError, IndexError):
    """An element index lies outside the panel grid."""


class NegativeRcsError(IrsOptError, ValueError):
    """The cross-section quadratic evaluated negative, outside its fit domain."""


class DegenerateSystemError(IrsOptError, ValueError):
    """A least-squares system is singular (too few distinct points)."""


class InfeasibleError(IrsOptError, ValueError):
    """No admissible geometry realizes the requested quantity."""


class InfeasibleGeometryError(IrsOptError, ValueError):
    """The panel does not fit the link at the requested placement."""


class DimensionMismatchError(IrsOptError, ValueError):
    """Array dimensions disagree with the panel grid."""


class NoFeasibleBranchError(IrsOptError, RuntimeError):
    """No candidate interval survived filtering; defensive, should not occur."""


class ConfigError(IrsOptError, ValueError):
    """A scenario file failed to parse or validate."""
