"""
errors.py

Exception hierarchy for the conversion engine. Infinite divergences and
budgets are ordinary float('inf') values, never exceptions.
"""


class ConversionError(Exception):
    """Base class for every error raised by rdp_conversion."""
    pass


class DomainError(ConversionError, ValueError):
    """Raised when a probability, order or grid is outside its domain."""
    pass


class ProfileFormatError(DomainError):
    """Raised when a profile JSON document does not match the schema."""
    pass


class ConfigError(ConversionError):
    """Raised for an invalid OrderSearchConfig or an empty order search set."""
    pass


class UnsupportedInputError(ConversionError):
    """Raised when an operation is asked for a case it does not cover."""
    pass


class DegenerateWitnessError(ConversionError):
    """Raised when the envelope value admits no informative Bernoulli witness."""
    pass


class OrientationError(ConversionError):
    """Raised when an asymmetric RR violates the q_hat >= p_hat assumption."""
    pass
