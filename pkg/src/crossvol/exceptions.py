"""Exception types shared across the package."""


class CrossvolError(Exception):
    """Base class for all crossvol errors."""


class DimensionError(CrossvolError, ValueError):
    """Matrix or index-set shapes are incompatible with the operation."""


class PreconditionError(CrossvolError, ValueError):
    """An operation was called on inputs that violate its contract."""


class CapabilityError(CrossvolError, RuntimeError):
    """An exhaustive computation exceeds its configured enumeration cap."""


class NumericalError(CrossvolError, ArithmeticError):
    """A numerical failure such as a singular block or a zero pivot."""


class AnalyticityError(NumericalError):
    """Evaluation of a complex extension failed (pole or non-finite value)."""
