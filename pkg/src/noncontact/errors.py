"""Exception types raised by the friction library."""


class NoncontactError(Exception):
    """Base class for every error raised by this package."""


class DomainError(NoncontactError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class TemperatureRangeError(DomainError):
    """Temperature outside the range over which a material model is validated."""


class SingularityError(NoncontactError, ArithmeticError):
    """Evaluation hit a pole of a response function."""


class RegimeError(NoncontactError, ValueError):
    """Inputs violate the physical regime an approximation was derived for."""


class IntegrandError(NoncontactError, FloatingPointError):
    """An integrand produced a non-finite value."""

    def __init__(self, message, omega=None):
        super().__init__(message)
        self.omega = omega


class DatasetError(NoncontactError, ValueError):
    """A parameter file could not be parsed or failed validation."""
