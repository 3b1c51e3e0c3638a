"""Exception types shared across the package."""


class SimplexDistError(Exception):
    """Base class for all package-specific errors."""


class DomainError(SimplexDistError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class UnsupportedRegimeError(SimplexDistError, ValueError):
    """The requested parameter regime has no supported evaluation path."""


class MethodUnavailableError(SimplexDistError, ValueError):
    """The requested numerical method does not apply to this problem size."""


class BudgetExceededError(SimplexDistError, RuntimeError):
    """An enumeration or evaluation budget would be exceeded."""


class BranchAmbiguityError(SimplexDistError, ValueError):
    """A non-integer power of a sign-changing quantity has no canonical branch."""


class NonIntegrableError(SimplexDistError, ValueError):
    """The requested integral diverges on its domain."""
