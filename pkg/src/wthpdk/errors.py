class PreconditionError(ValueError):
    """An input violates a stated precondition (off-shell, degenerate, ...)."""


class ConsistencyError(RuntimeError):
    """An internal identity that must hold did not; signals a convention fault."""
