"""Exception hierarchy.

Domain errors mean the requested quantity is undefined for the given
geometry; the CLI maps them to exit code 3. Configuration problems are
plain ``ValueError`` subclasses and map to exit code 2.
"""


class XlMimoError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(XlMimoError, ValueError):
    """Invalid parameters or scenario configuration."""


class DimensionMismatch(XlMimoError, ValueError):
    """Vectors or user sets of incompatible lengths."""


class DomainError(XlMimoError):
    """The model or formula is not defined at this point."""


class DegenerateGeometry(DomainError):
    """User is closer than half an element spacing to some array element."""


class EndfireTooClose(DomainError):
    """User on the array axis (|theta| = pi/2) within half the aperture."""


class BoresightOnly(DomainError):
    """Quantity needs a nonzero projected distance r*cos(theta)."""


class WrongBranch(DomainError):
    """Special-case SNR requested at an angle that is neither 0 nor +-pi/2."""


class SingleElement(DomainError):
    """Threshold distances are undefined for a one-element array."""


class ThresholdOrderViolation(DomainError):
    """Critical distance is not below the Rayleigh distance."""


class ValidityWarning(UserWarning):
    """Closed-form approximation used outside its small-spacing premise."""
