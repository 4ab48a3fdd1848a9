"""Shared exception types."""


class BudgetError(RuntimeError):
    """A configured size budget (enumeration, degree, dimension) was exceeded."""


class DescentError(ValueError):
    """Curve data failed to descend to the expected coefficient subring."""


class ConsistencyError(RuntimeError):
    """An internal exact identity that must hold by construction failed."""
