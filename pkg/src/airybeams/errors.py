"""Exception types shared across the package."""


class BeamSimError(Exception):
    """Base class for all airybeams errors."""


class DomainError(BeamSimError, ValueError):
    """Input outside the mathematical domain of an operation."""


class SamplingError(BeamSimError, ValueError):
    """Sampling too coarse to resolve the steepest oscillation involved."""


class ParaxialError(BeamSimError, ValueError):
    """Requested geometry violates the paraxial (Fresnel) approximation."""


class FarFieldError(BeamSimError, ValueError):
    """Observation distance below the Fraunhofer far-field bound."""


class CausticError(BeamSimError, ValueError):
    """No admissible caustic/tangency solution for the given phase profile."""


class WindowError(BeamSimError, ValueError):
    """Requested integration window lies outside the sampled data."""


class ConfigError(BeamSimError, ValueError):
    """Scenario configuration failed validation."""
