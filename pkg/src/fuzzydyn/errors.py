"""Exception types shared across the package."""


class UsageError(ValueError):
    """Arguments are inconsistent (wrong space, out-of-range parameter, ...)."""


class NormalityError(ValueError):
    """A fuzzy set would have an empty top level."""


class ContractError(ValueError):
    """A construction's precondition does not hold.

    ``measured`` carries the distances that were checked, so callers can see
    by how much the precondition was missed.
    """

    def __init__(self, message, measured=None):
        super().__init__(message)
        self.measured = dict(measured or {})


class BudgetError(RuntimeError):
    """A brute-force enumeration would exceed its configured budget."""


class UnsupportedError(UsageError):
    """The operation is not defined for this kind of system."""
