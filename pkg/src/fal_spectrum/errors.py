"""Exception types shared across the package."""


class FalSpectrumError(Exception):
    """Base class for all errors raised by fal_spectrum."""


class ConfigurationError(FalSpectrumError):
    """Invalid precision or tool configuration."""


class DomainError(FalSpectrumError):
    """Input violates a documented precondition."""


class CatalogError(DomainError):
    """Malformed catalog document or invalid catalog entry."""


class DegeneratePairError(DomainError):
    """The two anchor links have equal modified density, so no mixing ratio exists."""


class TargetRangeError(DomainError):
    """Requested target density lies outside the reachable interval."""


class CapExceededError(DomainError):
    """A configured search or enumeration cap was hit before completion."""
