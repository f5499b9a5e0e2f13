"""Exception types shared across the package."""


class QuvarError(Exception):
    """Base class for all package-specific errors."""


class NotHermitian(QuvarError):
    """Input matrix deviates from Hermiticity beyond tolerance."""


class DomainError(QuvarError):
    """A spectral function was requested outside its domain."""


class DimensionError(QuvarError):
    """Operands have incompatible or unsupported dimensions."""


class NotOrthogonal(QuvarError):
    """A supplied vector violates a required orthogonality constraint."""


class InvalidAngle(QuvarError):
    """The generalized angle entering a bound is undefined for the inputs."""


class DegenerateK(QuvarError):
    """The uncertainty matrix has (numerically) vanishing trace."""


class ParamError(QuvarError):
    """A scalar parameter lies outside its admissible range."""


class IntegrationDiverged(QuvarError):
    """A trajectory state violated its invariants beyond repair."""


class NoSolution(QuvarError):
    """All multistart attempts exceeded the acceptance residual."""


class RealStateRequired(QuvarError):
    """The operation is only defined for qubit states with r_y = 0."""


class ConfigError(QuvarError):
    """A scenario or command configuration is malformed."""
