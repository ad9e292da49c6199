"""Exception types shared across the package."""


class CarlitzLabError(Exception):
    """Base class for all package errors."""


class FieldError(CarlitzLabError):
    """Invalid finite field parameters (non-prime p, size cap exceeded)."""


class BudgetExceededError(CarlitzLabError):
    """An enumeration would exceed the configured budget."""


class PrecisionError(CarlitzLabError):
    """Not enough known coefficients to perform the requested operation."""


class PoleError(CarlitzLabError):
    """Function evaluated at a pole."""


class ConvergenceError(CarlitzLabError):
    """Argument outside the convergence disk of a series."""


class ConsistencyError(CarlitzLabError):
    """An exact internal identity failed; the computation must abort."""
